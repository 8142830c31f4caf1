#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "apsym/expr.hpp"
#include "apsym/parser.hpp"

namespace apsym::test {

inline Expr P(const std::string& s) { return parse(s); }

/// Deterministic pseudo-random canonical expressions over u, up, upp, phi,
/// trig and the parameters a0, ell.
class ExprGen {
public:
    explicit ExprGen(unsigned seed) : rng_(seed) {}

    Expr next(int max_terms = 4) {
        std::uniform_int_distribution<int> nterms(1, max_terms);
        std::vector<Term> terms;
        const int n = nterms(rng_);
        for (int i = 0; i < n; ++i) terms.push_back(random_term());
        return Expr::from_terms(std::move(terms));
    }

    Term random_term() {
        Term t;
        t.coeff = Rational(pick(-6, 6, /*nonzero=*/true), pick(1, 4));
        t.coeff.canonicalize();
        t.jet[JET_U] = pick(-2, 3);
        t.jet[JET_UP] = pick(0, 2);
        t.jet[JET_UPP] = pick(0, 1);
        t.phi_pow = pick(0, 2);
        switch (pick(0, 2)) {
            case 0: break;
            case 1: t.trig = TrigAtom{TrigKind::Sin, pick(0, 3), Rational(pick(0, 1), 2)}; break;
            case 2: t.trig = TrigAtom{TrigKind::Cos, pick(0, 3), Rational(pick(0, 1), 2)}; break;
        }
        if (pick(0, 3) == 0) t.syms.emplace_back(symbols::param("a0"), pick(1, 2));
        if (pick(0, 3) == 0) t.syms.emplace_back(symbols::param("ell"), pick(-2, 2));
        return t;
    }

    /// Random evaluation point away from zero (negative u-powers stay finite).
    std::map<std::string, double> random_point() {
        std::map<std::string, double> pt;
        for (const char* name : {"phi", "u", "up", "upp", "uppp", "upppp", "a0", "ell"}) {
            pt[name] = pick_double(0.3, 1.7) * (pick(0, 1) ? 1.0 : -1.0);
        }
        return pt;
    }

    int pick(int lo, int hi, bool nonzero = false) {
        std::uniform_int_distribution<int> d(lo, hi);
        int v = d(rng_);
        while (nonzero && v == 0) v = d(rng_);
        return v;
    }

    double pick_double(double lo, double hi) {
        std::uniform_real_distribution<double> d(lo, hi);
        return d(rng_);
    }

private:
    std::mt19937 rng_;
};

} // namespace apsym::test
