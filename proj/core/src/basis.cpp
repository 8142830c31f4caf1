#include "apsym/basis.hpp"

#include <random>

#include "apsym/linalg.hpp"

namespace apsym {

PhiBasis PhiBasis::standard(int p_cap, int m_cap) {
    if (p_cap < 0 || m_cap < 0) throw ExprError("basis caps must be nonnegative");
    PhiBasis b;
    b.p_cap_ = p_cap;
    b.m_cap_ = m_cap;
    for (int p = 0; p <= p_cap; ++p) {
        b.fns_.push_back(BasisFn{p, TrigAtom{}});
        for (int m = 1; m <= m_cap; ++m) {
            b.fns_.push_back(BasisFn{p, TrigAtom{TrigKind::Sin, m, Rational(0)}});
            b.fns_.push_back(BasisFn{p, TrigAtom{TrigKind::Cos, m, Rational(0)}});
        }
    }
    return b;
}

std::optional<int> PhiBasis::index_of(int phi_pow, const TrigAtom& trig) const {
    if (phi_pow < 0 || phi_pow > p_cap_) return std::nullopt;
    if (trig.kind != TrigKind::None && (trig.m < 1 || trig.m > m_cap_ || sgn(trig.offset) != 0)) {
        return std::nullopt;
    }
    const int per_p = 1 + 2 * m_cap_;
    int idx = phi_pow * per_p;
    if (trig.kind == TrigKind::None) return idx;
    idx += 1 + 2 * (trig.m - 1);
    if (trig.kind == TrigKind::Cos) idx += 1;
    return idx;
}

Expr PhiBasis::to_expr(int index) const {
    const BasisFn& f = fns_.at(static_cast<size_t>(index));
    Term t;
    t.coeff = 1;
    t.phi_pow = f.phi_pow;
    t.trig = f.trig;
    return Expr::from_terms({t});
}

std::string PhiBasis::name(int index) const {
    return to_expr(index).str();
}

bool PhiBasis::full_rank_audit() const {
    // Exact sample values: phi sampled at rationals r_k, sin/cos sampled on the
    // rational circle s = 2t/(1+t^2), c = (1-t^2)/(1+t^2); multiple angles via
    // the addition recurrence. Full rank of the sample matrix certifies linear
    // independence of the family. The r and t sequences must be decoupled:
    // drawing both from one low-degree arithmetic sequence puts the samples on
    // a rational curve where secular-times-trig products can degenerate.
    const int n = size();
    const int samples = 2 * n;
    std::minstd_rand rng(12345);
    auto draw = [&rng] {
        return static_cast<long>(rng() % 4096) + 1;
    };
    std::vector<linalg::QVec> matrix(static_cast<size_t>(n),
                                     linalg::QVec(static_cast<size_t>(samples), Rational(0)));
    for (int k = 0; k < samples; ++k) {
        Rational r(draw(), draw());
        Rational t(draw(), draw());
        r.canonicalize();
        t.canonicalize();
        Rational denom = 1 + t * t;
        Rational s = 2 * t / denom;
        Rational c = (1 - t * t) / denom;
        // sin(m phi), cos(m phi) for m = 0..m_cap
        std::vector<Rational> sin_m{Rational(0)}, cos_m{Rational(1)};
        for (int m = 1; m <= m_cap_; ++m) {
            sin_m.push_back(sin_m[m - 1] * c + cos_m[m - 1] * s);
            cos_m.push_back(cos_m[m - 1] * c - sin_m[m - 1] * s);
        }
        for (int i = 0; i < n; ++i) {
            const BasisFn& f = fns_[static_cast<size_t>(i)];
            Rational v = 1;
            for (int p = 0; p < f.phi_pow; ++p) v *= r;
            if (f.trig.kind == TrigKind::Sin) v *= sin_m[static_cast<size_t>(f.trig.m)];
            if (f.trig.kind == TrigKind::Cos) v *= cos_m[static_cast<size_t>(f.trig.m)];
            matrix[static_cast<size_t>(i)][static_cast<size_t>(k)] = v;
        }
    }
    return linalg::rank_dense(std::move(matrix)) == static_cast<size_t>(n);
}

} // namespace apsym
