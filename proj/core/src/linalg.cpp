#include "apsym/linalg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace apsym::linalg {

namespace {

/// Scales a sparse row so entries are coprime integers and the first nonzero
/// is positive.
void content_normalize(SparseRow& row) {
    std::erase_if(row, [](const auto& p) { return sgn(p.second) == 0; });
    if (row.empty()) return;
    Integer num_gcd = 0;
    Integer den_lcm = 1;
    for (const auto& [c, q] : row) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den().get_mpz_t());
    }
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (sgn(row.front().second) < 0) scale = -scale;
    for (auto& [c, q] : row) q *= scale;
}

const Rational* find_col(const SparseRow& row, int col) {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& p, int c) { return p.first < c; });
    if (it != row.end() && it->first == col) return &it->second;
    return nullptr;
}

/// target -= factor * source, merging sparse entries.
SparseRow axpy(const SparseRow& target, const Rational& factor, const SparseRow& source) {
    SparseRow out;
    out.reserve(target.size() + source.size());
    size_t i = 0, j = 0;
    while (i < target.size() && j < source.size()) {
        if (target[i].first < source[j].first) {
            out.push_back(target[i++]);
        } else if (target[i].first > source[j].first) {
            out.emplace_back(source[j].first, -factor * source[j].second);
            ++j;
        } else {
            Rational v = target[i].second - factor * source[j].second;
            if (sgn(v) != 0) out.emplace_back(target[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    for (; i < target.size(); ++i) out.push_back(target[i]);
    for (; j < source.size(); ++j) out.emplace_back(source[j].first, -factor * source[j].second);
    return out;
}

} // namespace

NullspaceResult nullspace(size_t ncols, std::vector<SparseRow> rows,
                          const std::vector<int>& elim_order) {
    if (elim_order.size() != ncols) {
        throw std::logic_error("elimination order must cover every column");
    }
    for (auto& r : rows) {
        std::sort(r.begin(), r.end());
        content_normalize(r);
    }

    // Gauss-Jordan over the requested column order. pivot_of[col] = row index.
    std::map<int, size_t> pivot_of;
    std::vector<bool> used(rows.size(), false);

    for (int col : elim_order) {
        size_t best = rows.size();
        size_t best_size = 0;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (used[r]) continue;
            const Rational* v = find_col(rows[r], col);
            if (!v) continue;
            if (best == rows.size() || rows[r].size() < best_size) {
                best = r;
                best_size = rows[r].size();
            }
        }
        if (best == rows.size()) continue; // free column
        used[best] = true;
        pivot_of[col] = best;
        const Rational pivot_val = *find_col(rows[best], col);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == best) continue;
            const Rational* v = find_col(rows[r], col);
            if (!v) continue;
            Rational factor = *v / pivot_val;
            rows[r] = axpy(rows[r], factor, rows[best]);
            content_normalize(rows[r]);
        }
    }

    NullspaceResult res;
    res.rank = pivot_of.size();
    std::vector<bool> is_pivot(ncols, false);
    for (const auto& [c, r] : pivot_of) {
        res.pivot_cols.push_back(c);
        is_pivot[static_cast<size_t>(c)] = true;
    }
    for (size_t c = 0; c < ncols; ++c) {
        if (!is_pivot[c]) res.free_cols.push_back(static_cast<int>(c));
    }

    for (int f : res.free_cols) {
        QVec x(ncols, Rational(0));
        x[static_cast<size_t>(f)] = 1;
        for (const auto& [pc, pr] : pivot_of) {
            const SparseRow& row = rows[pr];
            const Rational pivot_val = *find_col(row, pc);
            Rational acc = 0;
            for (const auto& [c, v] : row) {
                if (c == pc) continue;
                if (sgn(x[static_cast<size_t>(c)]) != 0) acc += v * x[static_cast<size_t>(c)];
            }
            x[static_cast<size_t>(pc)] = -acc / pivot_val;
        }
        res.basis.push_back(primitive_normalized(x));
    }
    return res;
}

NullspaceResult nullspace(size_t ncols, std::vector<SparseRow> rows) {
    std::vector<int> order(ncols);
    for (size_t i = 0; i < ncols; ++i) order[i] = static_cast<int>(i);
    return nullspace(ncols, std::move(rows), order);
}

size_t rank_dense(std::vector<QVec> m) {
    if (m.empty()) return 0;
    const size_t ncols = m.front().size();
    // Scale rows to integers for fraction-free elimination.
    std::vector<std::vector<Integer>> a;
    a.reserve(m.size());
    for (auto& row : m) {
        row = primitive_normalized(row);
        std::vector<Integer> r;
        r.reserve(ncols);
        for (const auto& q : row) r.push_back(q.get_num());
        a.push_back(std::move(r));
    }

    size_t rank = 0;
    Integer prev = 1;
    for (size_t col = 0; col < ncols && rank < a.size(); ++col) {
        size_t piv = a.size();
        for (size_t r = rank; r < a.size(); ++r) {
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        }
        if (piv == a.size()) continue;
        std::swap(a[rank], a[piv]);
        for (size_t r = rank + 1; r < a.size(); ++r) {
            for (size_t c = col + 1; c < ncols; ++c) {
                Integer t = a[r][c] * a[rank][col] - a[r][col] * a[rank][c];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a[r][c] = t;
            }
            a[r][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return rank;
}

bool in_span(const std::vector<QVec>& vectors, const QVec& target) {
    if (vectors.empty()) {
        return std::all_of(target.begin(), target.end(),
                           [](const Rational& q) { return sgn(q) == 0; });
    }
    const size_t dim = target.size();
    // Solve V x = target by rational elimination over the augmented system.
    std::vector<QVec> aug(dim, QVec(vectors.size() + 1, Rational(0)));
    for (size_t j = 0; j < vectors.size(); ++j) {
        if (vectors[j].size() != dim) throw std::logic_error("in_span: dimension mismatch");
        for (size_t i = 0; i < dim; ++i) aug[i][j] = vectors[j][i];
    }
    for (size_t i = 0; i < dim; ++i) aug[i][vectors.size()] = target[i];

    size_t rank = 0;
    for (size_t col = 0; col < vectors.size() && rank < dim; ++col) {
        size_t piv = dim;
        for (size_t r = rank; r < dim; ++r) {
            if (sgn(aug[r][col]) != 0) {
                piv = r;
                break;
            }
        }
        if (piv == dim) continue;
        std::swap(aug[rank], aug[piv]);
        Rational pv = aug[rank][col];
        for (size_t r = 0; r < dim; ++r) {
            if (r == rank || sgn(aug[r][col]) == 0) continue;
            Rational f = aug[r][col] / pv;
            for (size_t c = col; c <= vectors.size(); ++c) aug[r][c] -= f * aug[rank][c];
        }
        ++rank;
    }
    // Consistent iff no row reads 0 ... 0 | nonzero.
    for (size_t r = 0; r < dim; ++r) {
        bool all_zero = true;
        for (size_t c = 0; c < vectors.size(); ++c) {
            if (sgn(aug[r][c]) != 0) {
                all_zero = false;
                break;
            }
        }
        if (all_zero && sgn(aug[r][vectors.size()]) != 0) return false;
    }
    return true;
}

std::vector<QVec> rref(std::vector<QVec> rows) {
    if (rows.empty()) return rows;
    const size_t ncols = rows.front().size();
    size_t rank = 0;
    for (size_t col = 0; col < ncols && rank < rows.size(); ++col) {
        size_t piv = rows.size();
        for (size_t r = rank; r < rows.size(); ++r) {
            if (sgn(rows[r][col]) != 0) {
                piv = r;
                break;
            }
        }
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        Rational pv = rows[rank][col];
        for (auto& q : rows[rank]) q /= pv;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || sgn(rows[r][col]) == 0) continue;
            Rational f = rows[r][col];
            for (size_t c = col; c < ncols; ++c) rows[r][c] -= f * rows[rank][c];
        }
        ++rank;
    }
    rows.resize(rank);
    for (auto& r : rows) r = primitive_normalized(r);
    return rows;
}

} // namespace apsym::linalg
