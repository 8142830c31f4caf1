#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace apsym {

using SymId = std::uint32_t;

/// What a named symbol means to the algebra.
///  - Param: a free parameter, transcendental over the rationals (a0, ell, eps).
///  - Unknown: a linear ansatz coefficient introduced by the solver.
///  - Placeholder: an uninterpreted function of (phi, u); partial derivatives
///    map to further placeholder symbols (eta1 -> eta1_phi, eta1_u, ...).
enum class SymKind : std::uint8_t { Param, Unknown, Placeholder };

struct SymbolInfo {
    std::string name;
    SymKind kind = SymKind::Param;
    // Placeholder bookkeeping: base family plus subscript counts.
    SymId base = 0;
    int d_phi = 0;
    int d_u = 0;
};

/// Process-wide interning table. Ids are stable for the lifetime of the
/// process; lookups are thread-safe.
namespace symbols {

/// Interns (or finds) a plain parameter symbol.
SymId param(const std::string& name);

/// Interns (or finds) a solver unknown. Re-interning an existing name with a
/// different kind throws.
SymId unknown(const std::string& name);

/// Interns a placeholder family root, e.g. "eta1" standing for eta1(phi, u).
SymId placeholder(const std::string& base_name);

/// The placeholder obtained by one more partial derivative. `wrt_phi` selects
/// d/dphi, otherwise d/du. Throws when `s` is not a placeholder.
SymId placeholder_derivative(SymId s, bool wrt_phi);

const SymbolInfo& info(SymId s);
const std::string& name(SymId s);
SymKind kind(SymId s);

/// Lookup without interning.
std::optional<SymId> find(const std::string& name);

/// Reserved small-parameter symbol for perturbation series.
SymId eps();

} // namespace symbols

} // namespace apsym
