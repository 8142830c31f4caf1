#pragma once

#include <vector>

#include "apsym/lagrangian.hpp"
#include "apsym/noether.hpp"

namespace apsym {

/// The candidate pair fails some order-j Noether condition.
struct NotASymmetry : ExprError {
    using ExprError::ExprError;
};
/// A u''-dependent perturbation enters the first-integral formula, for which
/// no formula is available.
struct HigherOrderLagrangian : ExprError {
    using ExprError::ExprError;
};

/// Approximate first integral I = I0 + eps I1 + ...; parts[k] is the eps^k
/// part, a function of (phi, u, u').
struct FirstIntegral {
    std::vector<Expr> parts;

    int max_order() const { return static_cast<int>(parts.size()) - 1; }
    Expr component(int k) const {
        return k >= 0 && k < static_cast<int>(parts.size()) ? parts[static_cast<size_t>(k)]
                                                            : Expr::zero();
    }
    /// sum_k eps^k parts[k] with the reserved eps symbol.
    Expr as_series() const;
};

/// Noether first integral of a certified generator/gauge pair, expanded and
/// truncated at eps^order:
///   I_k = sum_j [ (L_j - u' dL_j/du') xi_{k-j} + dL_j/du' eta_{k-j} ] - A_k,
/// signed so that G_i = 0, X = X0^1 yields I0 = 1/2 (u^2 + u'^2).
/// Throws NotASymmetry if some residual through `order` is nonzero and
/// HigherOrderLagrangian when a u''-dependent G_i actually enters the formula.
FirstIntegral first_integral(const PerturbedLagrangian& lag, const ApproxGenerator& gen,
                             const GaugeTerm& gauge, int order);

/// D_phi I with u'' -> F substituted from the solved equation of motion,
/// truncated at eps^order; the zero Expr certifies on-shell conservation to
/// that order. Throws HigherOrderEquation when no solved form exists.
Expr conservation_check_symbolic(const FirstIntegral& integral, const PerturbedLagrangian& lag,
                                 int order);

} // namespace apsym
