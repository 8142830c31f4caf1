#pragma once

#include <map>
#include <string>
#include <vector>

#include "apsym/basis.hpp"
#include "apsym/expr.hpp"
#include "apsym/linalg.hpp"

namespace apsym {

/// Powers of u', u'', u''', u'''' (u itself stays inside the coefficient).
struct JetKey {
    int up = 0;
    int upp = 0;
    int uppp = 0;
    int upppp = 0;

    auto operator<=>(const JetKey&) const = default;
    std::string str() const;
};

/// Exact partition of a canonical expression by jet monomial; summing
/// jet-monomial * coefficient over the map reproduces the input.
std::map<JetKey, Expr> collect_jet(const Expr& residual);

/// A product of parameter powers (the unknowns' transcendental coefficients
/// are separated coefficient-wise). Factors sorted by symbol name.
struct ParamMonomial {
    std::vector<std::pair<SymId, int>> factors;

    bool operator==(const ParamMonomial& o) const;
    bool operator<(const ParamMonomial& o) const;
    ParamMonomial times(const ParamMonomial& o) const;
    std::string str() const; // "1" for the empty monomial
};

/// Offending-term failure: the residual needs a phi-function or u-power
/// outside the configured family. Signals that basis caps or the u-power
/// range must be enlarged.
struct BasisOverflow : std::runtime_error {
    BasisOverflow(const std::string& what, std::string term)
        : std::runtime_error(what), offending_term(std::move(term)) {}
    std::string offending_term;
};

/// Decomposition of a (phi, u)-coefficient over u-powers and basis functions;
/// values are the (still symbol-carrying) linear forms. Throws BasisOverflow
/// when a term falls outside span(basis) or the u-power range.
std::map<std::pair<int, int>, Expr> expand_in_basis(const Expr& coeff, const PhiBasis& basis,
                                                    int u_min, int u_max);

struct RowKey {
    JetKey jet;
    int u_pow = 0;
    int basis_index = 0;
    ParamMonomial params;

    bool operator<(const RowKey& o) const;
    std::string str(const PhiBasis& basis) const;
};

struct DetRow {
    RowKey key;
    linalg::SparseRow entries; // over unknown indices
};

/// The homogeneous exact-rational linear system produced by full separation of
/// a residual that is linear in the unknown symbols.
struct DeterminingSystem {
    std::vector<SymId> unknowns; // fixed column order
    std::vector<DetRow> rows;    // one per row key, sorted by key
    PhiBasis basis;
    int u_min = 0;
    int u_max = 0;

    /// Rows with duplicate linear forms removed (first key wins); the solver
    /// input.
    std::vector<DetRow> deduplicated() const;

    /// Plain-text matrix dump: one row per line, provenance tuple then
    /// rational coefficients of each unknown.
    std::string to_text() const;
};

/// Separates `residual` (which must be linear homogeneous in `unknowns`) into
/// one row per (jet monomial, u-power, basis function, parameter monomial).
/// Nonlinearity in unknowns is an internal contract violation and throws
/// std::logic_error.
DeterminingSystem determining_system(const Expr& residual, const std::vector<SymId>& unknowns,
                                     const PhiBasis& basis, int u_min, int u_max);

} // namespace apsym
