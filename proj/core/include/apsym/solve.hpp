#pragma once

#include <array>
#include <string>
#include <vector>

#include "apsym/lagrangian.hpp"
#include "apsym/noether.hpp"
#include "apsym/separate.hpp"

namespace apsym {

/// Basis caps, separation range and ansatz degree bounds for one solve.
struct AnsatzConfig {
    int basis_p = 1;
    int basis_m = 2;
    int u_min = -4;
    int u_max = 6;
    int deg_xi = 1; // upper u-degrees
    int deg_eta = 3;
    int deg_gauge = 3;
    int low_xi = 0; // lower u-degrees (negative for Laurent perturbations)
    int low_eta = 0;
    int low_gauge = 0;

    PhiBasis make_basis() const { return PhiBasis::standard(basis_p, basis_m); }
    void validate() const;
};

/// Fresh generator/gauge ansatz for one eps order: expressions linear in the
/// freshly interned unknown symbols.
struct OrderAnsatz {
    GeneratorPair gen;
    Expr gauge;
    std::vector<SymId> unknowns;
};

/// Parameter monomials the order-k components may carry, derived from the
/// monomials of the G_i (products accumulate across orders).
std::vector<ParamMonomial> ansatz_monomials(const PerturbedLagrangian& lag, int order);

OrderAnsatz build_ansatz(const AnsatzConfig& config, int order,
                         const std::vector<ParamMonomial>& monomials);

/// General solution of the conditions through `order`: every component is
/// linear in the surviving free-constant symbols.
struct GeneralSolution {
    int order = -1;
    std::vector<SymId> frees;
    std::array<Expr, 5> c{}; // order-0 coordinates over the exact basis
    std::vector<GeneratorPair> corrections;
    std::vector<Expr> gauges;

    /// Components 0..order with the order-0 exact combination expanded.
    std::vector<GeneratorPair> components() const;
};

enum class VectorClass { Exact, TrivialLift, Nontrivial };
const char* to_string(VectorClass c);

/// One concrete basis vector of the solution space.
struct SpaceVector {
    VectorClass label = VectorClass::TrivialLift;
    std::array<Rational, 5> order0{};
    std::vector<GeneratorPair> corrections;
    std::vector<Expr> gauges;

    bool order0_is_zero() const;
    bool corrections_are_zero() const;
    ApproxGenerator generator() const;
    GaugeTerm gauge_term() const;
};

/// Shape-based label:
///   order-0 part zero                  -> TrivialLift (lifts, shifted
///                                         corrections, pure gauge shifts)
///   corrections zero, order-0 nonzero  -> Exact
///   otherwise                          -> Nontrivial
VectorClass classify(const SpaceVector& v);

struct SolveStats {
    size_t unknown_count = 0;
    size_t row_count = 0;
    size_t nullity = 0;
};

/// Solution space at one order: the general solution plus a canonical
/// (reduced-echelon) classified basis. Reduction eliminates order-0
/// coordinates first, so nontrivial representatives are free of trivial-lift
/// contamination.
struct SolutionSpace {
    int order = 0;
    AnsatzConfig config;
    GeneralSolution general;
    std::vector<SpaceVector> vectors;
    SolveStats stats;

    size_t count(VectorClass c) const;
    std::vector<const SpaceVector*> of(VectorClass c) const;
};

/// Solves the order-k condition on top of `prior` (nullptr only for k = 0).
/// Unknowns are the fresh order-k ansatz coefficients plus the free constants
/// surviving from lower orders. Throws BasisOverflow with enlargement advice
/// when the residual leaves the configured family.
SolutionSpace solve_order(const PerturbedLagrangian& lag, const SolutionSpace* prior, int k,
                          const AnsatzConfig& config);

/// Orders 0..max_order applied sequentially; element [k] is the space after
/// the order-k condition.
std::vector<SolutionSpace> solve_sequential(const PerturbedLagrangian& lag, int max_order,
                                            const AnsatzConfig& config);

/// Rational coordinates of the vectors over the union of their component term
/// slots (shared, deterministic column order). Used for exact span and
/// membership tests; gauge components are included only when requested.
std::vector<linalg::QVec> coordinatize(const std::vector<SpaceVector>& vectors,
                                       bool include_gauge);

} // namespace apsym
