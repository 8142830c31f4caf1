#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "apsym/expr.hpp"

namespace apsym {

struct ParamDecl {
    std::string name;
    std::optional<Rational> default_value;
};

/// The perturbed oscillator Lagrangian
///     L = 1/2 (u^2 - u'^2) + eps G1 + eps^2 G2 + eps^3 G3.
/// The unperturbed part is fixed and not stored. Each G_i is a Laurent
/// polynomial in u with nonnegative powers of u' and u'' and parameter
/// coefficients.
struct PerturbedLagrangian {
    std::array<Expr, 3> g{}; // G1, G2, G3
    std::vector<ParamDecl> params;
    std::string label;

    static Expr l0();

    /// i in 1..3; zero Expr beyond the stored range.
    const Expr& G(int i) const;

    /// Highest i with G_i nonzero; 0 for the unperturbed case.
    int max_order() const;

    bool has_upp_dependence(int up_to_order) const;

    /// Enforces the jet-class invariant and that every parameter appearing in
    /// some G_i is declared. Throws ExprError on violation.
    void validate() const;
};

} // namespace apsym
