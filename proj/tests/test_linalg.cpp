#include <doctest.h>

#include "apsym/linalg.hpp"

using namespace apsym;
using linalg::QVec;
using linalg::SparseRow;

namespace {

QVec qv(std::initializer_list<long> xs) {
    QVec v;
    for (long x : xs) v.push_back(Rational(x));
    return v;
}

} // namespace

TEST_SUITE("linalg") {

TEST_CASE("null space of a small system") {
    // x0 + x1 - x2 = 0, x1 + x2 = 0  ->  one free direction
    std::vector<SparseRow> rows{{{0, Rational(1)}, {1, Rational(1)}, {2, Rational(-1)}},
                                {{1, Rational(1)}, {2, Rational(1)}}};
    auto ns = linalg::nullspace(3, rows);
    REQUIRE(ns.basis.size() == 1);
    CHECK(ns.rank == 2);
    CHECK(ns.basis[0] == qv({2, -1, 1}));
}

TEST_CASE("unconstrained columns become unit directions") {
    std::vector<SparseRow> rows{{{0, Rational(3)}}};
    auto ns = linalg::nullspace(3, rows);
    REQUIRE(ns.basis.size() == 2);
    CHECK(ns.basis[0] == qv({0, 1, 0}));
    CHECK(ns.basis[1] == qv({0, 0, 1}));
}

TEST_CASE("elimination order controls which columns stay free") {
    // x0 = x1; eliminating column 1 first leaves x0 free.
    std::vector<SparseRow> rows{{{0, Rational(1)}, {1, Rational(-1)}}};
    auto ns = linalg::nullspace(2, rows, {1, 0});
    REQUIRE(ns.basis.size() == 1);
    CHECK(ns.free_cols == std::vector<int>{0});
    CHECK(ns.basis[0] == qv({1, 1}));
}

TEST_CASE("dense rank, fraction-free") {
    CHECK(linalg::rank_dense({qv({1, 2}), qv({2, 4})}) == 1);
    CHECK(linalg::rank_dense({qv({1, 2}), qv({2, 5})}) == 2);
    CHECK(linalg::rank_dense({qv({0, 0}), qv({0, 0})}) == 0);
    // 3x3 Vandermonde-ish with rational entries
    std::vector<QVec> m{{rat(1, 2), rat(1, 3), rat(1, 5)},
                        {rat(1, 4), rat(1, 9), rat(1, 25)},
                        {rat(1, 8), rat(1, 27), rat(1, 125)}};
    CHECK(linalg::rank_dense(m) == 3);
}

TEST_CASE("span membership") {
    std::vector<QVec> basis{qv({1, 0, 1}), qv({0, 1, 1})};
    CHECK(linalg::in_span(basis, qv({2, 3, 5})));
    CHECK_FALSE(linalg::in_span(basis, qv({1, 1, 1})));
    CHECK(linalg::in_span({}, qv({0, 0})));
    CHECK_FALSE(linalg::in_span({}, qv({1, 0})));
}

TEST_CASE("rref is canonical for the row space") {
    std::vector<QVec> a{qv({2, 4, 6}), qv({1, 1, 1})};
    std::vector<QVec> b{qv({1, 1, 1}), qv({3, 5, 7}), qv({4, 6, 8})};
    CHECK(linalg::rref(a) == linalg::rref(b));
}

TEST_CASE("null vectors solve every row exactly") {
    std::vector<SparseRow> rows{
        {{0, rat(1, 2)}, {2, Rational(5)}, {4, rat(-7, 3)}},
        {{1, Rational(2)}, {2, Rational(1)}, {3, Rational(1)}},
        {{0, Rational(1)}, {1, Rational(1)}, {4, Rational(1)}},
    };
    auto ns = linalg::nullspace(5, rows);
    CHECK(ns.basis.size() == 2);
    for (const auto& v : ns.basis) {
        for (const auto& row : rows) {
            Rational acc = 0;
            for (const auto& [c, q] : row) acc += q * v[static_cast<size_t>(c)];
            CHECK(sgn(acc) == 0);
        }
    }
}

} // TEST_SUITE
