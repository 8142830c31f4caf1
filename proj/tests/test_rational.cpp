#include <doctest.h>

#include "apsym/rational.hpp"

using namespace apsym;

TEST_SUITE("rational") {

TEST_CASE("string round trips and canonical form") {
    CHECK(to_string(rat(1, 2)) == "1/2");
    CHECK(to_string(rat(2, 4)) == "1/2");
    CHECK(to_string(rat(-3, 6)) == "-1/2");
    CHECK(to_string(rat(5)) == "5");
    CHECK(rat_from_string("7/21") == rat(1, 3));
    CHECK(rat_from_string("-4") == rat(-4));
    CHECK_THROWS_AS(rat_from_string("1/0"), std::domain_error);
    CHECK_THROWS_AS(rat_from_string("x"), std::domain_error);
}

TEST_CASE("arbitrary precision") {
    Rational big = rat_from_string("123456789012345678901234567890/2");
    CHECK(to_string(big) == "61728394506172839450617283945");
    Rational q = big / rat_from_string("123456789012345678901234567890");
    CHECK(q == rat(1, 2));
}

TEST_CASE("primitive normalization") {
    std::vector<Rational> v{rat(-1, 2), rat(3, 4), rat(0)};
    auto n = primitive_normalized(v);
    CHECK(n[0] == rat(2));
    CHECK(n[1] == rat(-3));
    CHECK(n[2] == rat(0));

    std::vector<Rational> zeros{rat(0), rat(0)};
    CHECK(primitive_normalized(zeros) == zeros);
}

} // TEST_SUITE
