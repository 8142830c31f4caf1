#include "apsym/integrals.hpp"

namespace apsym {

Expr FirstIntegral::as_series() const {
    Expr eps = Expr::sym(symbols::eps());
    Expr out;
    for (size_t k = 0; k < parts.size(); ++k) {
        out = out + Expr::pow(eps, static_cast<int>(k)) * parts[k];
    }
    return out;
}

FirstIntegral first_integral(const PerturbedLagrangian& lag, const ApproxGenerator& gen,
                             const GaugeTerm& gauge, int order) {
    if (order < 0 || order > 3) throw ExprError("order must be in 0..3");
    if (gen.max_order() < order || static_cast<int>(gauge.parts.size()) <= order) {
        throw SequentialOrderError("generator/gauge components missing through order " +
                                   std::to_string(order));
    }
    for (int j = 0; j <= order; ++j) {
        Expr r = residual_order_k(lag, gen, gauge, j);
        if (!r.is_zero()) {
            throw NotASymmetry("the order-" + std::to_string(j) +
                               " Noether condition fails; residual: " + r.str());
        }
    }
    // The formula covers first-order Lagrangians. A u''-dependent G_i is
    // acceptable only while the components multiplying it vanish.
    for (int i = 1; i <= 3; ++i) {
        if (!lag.G(i).depends_on_jet(JET_UPP)) continue;
        for (int k = i; k <= order; ++k) {
            GeneratorPair comp = gen.component(k - i);
            if (!comp.is_zero()) {
                throw HigherOrderLagrangian(
                    "G" + std::to_string(i) +
                    " depends on u''; no first-integral formula is available for this pair");
            }
        }
    }

    Expr up = Expr::jet(JET_UP);
    FirstIntegral out;
    for (int k = 0; k <= order; ++k) {
        Expr part;
        for (int j = 0; j <= k; ++j) {
            const Expr lagpart = (j == 0) ? PerturbedLagrangian::l0() : lag.G(j);
            if (lagpart.is_zero()) continue;
            GeneratorPair comp = gen.component(k - j);
            if (comp.is_zero()) continue;
            Expr dl_dup = diff_jet(lagpart, JET_UP);
            part = part + (lagpart - up * dl_dup) * comp.xi + dl_dup * comp.eta;
        }
        part = part - gauge.component(k);
        if (part.depends_on_jet(JET_UPP)) {
            throw HigherOrderLagrangian("first integral would depend on u'': " + part.str());
        }
        out.parts.push_back(std::move(part));
    }
    return out;
}

Expr conservation_check_symbolic(const FirstIntegral& integral, const PerturbedLagrangian& lag,
                                 int order) {
    Expr f = el_solved_form(lag, order);
    Expr di = total_derivative(integral.as_series());
    di = substitute(di, {{"upp", f}});
    return di.eps_truncated(order);
}

} // namespace apsym
