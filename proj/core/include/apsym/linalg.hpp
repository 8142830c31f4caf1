#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "apsym/rational.hpp"

namespace apsym::linalg {

using QVec = std::vector<Rational>;
/// (column, value) pairs sorted by column, values nonzero.
using SparseRow = std::vector<std::pair<int, Rational>>;

struct NullspaceResult {
    /// Basis of the solution space of rows . x = 0, one vector per free
    /// column, each integer-primitive with a positive leading entry.
    std::vector<QVec> basis;
    std::vector<int> pivot_cols;
    std::vector<int> free_cols;
    size_t rank = 0;
};

/// Exact null space of a homogeneous sparse system. Columns are eliminated in
/// `elim_order` (a permutation of 0..ncols-1); pivot rows are chosen by
/// sparsity then input order, so the result is deterministic. Rows are content-
/// normalized after every combination to keep entries integer-primitive.
NullspaceResult nullspace(size_t ncols, std::vector<SparseRow> rows,
                          const std::vector<int>& elim_order);

/// Convenience overload: eliminates columns left to right.
NullspaceResult nullspace(size_t ncols, std::vector<SparseRow> rows);

/// Exact rank by fraction-free (Bareiss) elimination on an integer-scaled
/// copy.
size_t rank_dense(std::vector<QVec> m);

/// Does `target` lie in the rational span of `vectors`? Exact solve.
bool in_span(const std::vector<QVec>& vectors, const QVec& target);

/// Reduced row echelon form of the given vectors (as rows), eliminating
/// columns left to right; zero rows dropped. Deterministic canonical basis of
/// the row space, each row integer-primitive with positive leading entry.
std::vector<QVec> rref(std::vector<QVec> rows);

} // namespace apsym::linalg
