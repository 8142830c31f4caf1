#include "apsym/rational.hpp"

namespace apsym {

Rational rat_from_string(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            Integer n(text);
            return Rational(n);
        }
        Integer num(text.substr(0, slash));
        Integer den(text.substr(slash + 1));
        if (den == 0) throw std::domain_error("rational with zero denominator: " + text);
        Rational q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw std::domain_error("not a rational literal: " + text);
    }
}

bool is_zero(const Rational& q) { return sgn(q) == 0; }
bool is_one(const Rational& q) { return q == 1; }
int sign(const Rational& q) { return sgn(q); }

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

std::vector<Rational> primitive_normalized(const std::vector<Rational>& v) {
    Integer num_gcd = 0;
    Integer den_lcm = 1;
    int first_sign = 0;
    for (const auto& q : v) {
        if (sgn(q) == 0) continue;
        if (first_sign == 0) first_sign = sgn(q);
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den().get_mpz_t());
    }
    if (first_sign == 0) return v;
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (first_sign < 0) scale = -scale;
    std::vector<Rational> out;
    out.reserve(v.size());
    for (const auto& q : v) out.push_back(q * scale);
    return out;
}

} // namespace apsym
