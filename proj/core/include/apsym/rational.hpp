#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace apsym {

/// Exact rational number with arbitrary-precision numerator/denominator.
/// Always kept in canonical form (gcd 1, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "p", "-p" or "p/q" (decimal, arbitrary precision).
Rational rat_from_string(const std::string& text);

bool is_zero(const Rational& q);
bool is_one(const Rational& q);
int sign(const Rational& q);

/// Canonical printing: "p" when the denominator is 1, else "p/q".
std::string to_string(const Rational& q);

double to_double(const Rational& q);

/// Divides every entry by the gcd of numerators over the lcm of denominators
/// and flips signs so the first nonzero entry is positive. No-op on the zero
/// vector. Returns the normalized copy.
std::vector<Rational> primitive_normalized(const std::vector<Rational>& v);

} // namespace apsym
