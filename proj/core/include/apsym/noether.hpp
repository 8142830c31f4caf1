#pragma once

#include <array>
#include <optional>
#include <vector>

#include "apsym/expr.hpp"
#include "apsym/lagrangian.hpp"

namespace apsym {

/// A point-transformation generator xi(phi,u) d/dphi + eta(phi,u) d/du.
struct GeneratorPair {
    Expr xi;
    Expr eta;

    bool is_zero() const { return xi.is_zero() && eta.is_zero(); }
    bool operator==(const GeneratorPair& o) const { return xi == o.xi && eta == o.eta; }
};

/// The five Noether point symmetries of u'' + u = 0 with their gauge slices:
///   X1 = d/dphi                                A = 0
///   X2 = sin(2phi) d/dphi + u cos(2phi) d/du   A = u^2 sin(2phi)
///   X3 = cos(2phi) d/dphi - u sin(2phi) d/du   A = u^2 cos(2phi)
///   X4 = sin(phi) d/du                         A = -u cos(phi)
///   X5 = cos(phi) d/du                         A =  u sin(phi)
namespace exact_basis {
const std::array<GeneratorPair, 5>& generators();
const std::array<Expr, 5>& gauges();
/// Combination sum_h coeffs[h] * X_h as a GeneratorPair (coeffs may be Exprs).
GeneratorPair combination(const std::array<Expr, 5>& coeffs);
} // namespace exact_basis

/// Approximate generator X = X0 + eps X1 + ... with the order-0 part held as
/// coordinates over the exact basis and corrections as point-generator pairs.
struct ApproxGenerator {
    std::array<Rational, 5> order0{};
    std::vector<GeneratorPair> corrections; // index 0 is the eps^1 part

    int max_order() const { return static_cast<int>(corrections.size()); }
    GeneratorPair component(int k) const;
};

/// Gauge A = A0 + eps A1 + ...; parts[k] is the eps^k part.
struct GaugeTerm {
    std::vector<Expr> parts;

    Expr component(int k) const {
        return k >= 0 && k < static_cast<int>(parts.size()) ? parts[static_cast<size_t>(k)]
                                                            : Expr::zero();
    }
};

struct SequentialOrderError : ExprError {
    using ExprError::ExprError;
};
/// The Euler-Lagrange reduction produced an equation above second order
/// (u''-dependent perturbation), so no solved form u'' = F exists.
struct HigherOrderEquation : ExprError {
    using ExprError::ExprError;
};

struct Prolongation {
    Expr eta1;
    std::optional<Expr> eta2;
};

/// First (and optionally second) prolongation coefficients of the point
/// generator: eta1 = D eta - u' D xi, eta2 = D eta1 - u'' D xi.
Prolongation prolong(const Expr& xi, const Expr& eta, int depth);

/// X^{[2]} f for the point generator (xi, eta):
/// xi f_phi + eta f_u + eta1 f_u' + eta2 f_u''.
Expr apply_prolonged(const GeneratorPair& gen, const Expr& f);

struct EulerLagrangeResult {
    /// u'' + u - (eps f1 + eps^2 f2 + eps^3 f3), sign-normalized so the order-0
    /// u'' coefficient is +1. Contains u''' / u'''' exactly when some G_i
    /// depends on u''.
    Expr residual;
    bool higher_order = false;
};

EulerLagrangeResult euler_lagrange(const PerturbedLagrangian& lag, int order);

/// Solved form u'' = F(phi, u, u', eps), truncated at eps^order. Throws
/// HigherOrderEquation when the equation is above second order.
Expr el_solved_form(const PerturbedLagrangian& lag, int order);

/// eps^k coefficient of X^{[2]} L + (D xi) L - D A for explicitly given
/// per-order components (components[j] is the eps^j part of X, gauges[j] of A;
/// both must extend through order k). Zero iff the order-k condition holds.
Expr residual_from_components(const PerturbedLagrangian& lag,
                              const std::vector<GeneratorPair>& components,
                              const std::vector<Expr>& gauges, int k);

/// Same, for a concrete generator/gauge pair. Missing lower-order components
/// raise SequentialOrderError.
Expr residual_order_k(const PerturbedLagrangian& lag, const ApproxGenerator& gen,
                      const GaugeTerm& gauge, int k);

} // namespace apsym
