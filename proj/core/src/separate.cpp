#include "apsym/separate.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace apsym {

std::string JetKey::str() const {
    std::ostringstream os;
    os << "up^" << up << " upp^" << upp << " uppp^" << uppp;
    if (upppp != 0) os << " upppp^" << upppp;
    return os.str();
}

std::map<JetKey, Expr> collect_jet(const Expr& residual) {
    std::map<JetKey, std::vector<Term>> buckets;
    for (const Term& t : residual.terms()) {
        JetKey key{t.jet[JET_UP], t.jet[JET_UPP], t.jet[JET_UPPP], t.jet[JET_UPPPP]};
        Term coeff = t;
        coeff.jet[JET_UP] = coeff.jet[JET_UPP] = coeff.jet[JET_UPPP] = coeff.jet[JET_UPPPP] = 0;
        buckets[key].push_back(std::move(coeff));
    }
    std::map<JetKey, Expr> out;
    for (auto& [key, terms] : buckets) {
        out.emplace(key, Expr::from_terms(std::move(terms)));
    }
    return out;
}

bool ParamMonomial::operator==(const ParamMonomial& o) const {
    if (factors.size() != o.factors.size()) return false;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].second != o.factors[i].second ||
            symbols::name(factors[i].first) != symbols::name(o.factors[i].first)) {
            return false;
        }
    }
    return true;
}

bool ParamMonomial::operator<(const ParamMonomial& o) const {
    const size_t n = std::min(factors.size(), o.factors.size());
    for (size_t i = 0; i < n; ++i) {
        const std::string& a = symbols::name(factors[i].first);
        const std::string& b = symbols::name(o.factors[i].first);
        if (a != b) return a < b;
        if (factors[i].second != o.factors[i].second) return factors[i].second > o.factors[i].second;
    }
    return factors.size() < o.factors.size();
}

ParamMonomial ParamMonomial::times(const ParamMonomial& o) const {
    ParamMonomial out;
    out.factors = factors;
    out.factors.insert(out.factors.end(), o.factors.begin(), o.factors.end());
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        return symbols::name(a.first) < symbols::name(b.first);
    });
    std::vector<std::pair<SymId, int>> folded;
    for (const auto& [s, e] : out.factors) {
        if (!folded.empty() && folded.back().first == s) {
            folded.back().second += e;
        } else {
            folded.emplace_back(s, e);
        }
    }
    std::erase_if(folded, [](const auto& p) { return p.second == 0; });
    out.factors = std::move(folded);
    return out;
}

std::string ParamMonomial::str() const {
    if (factors.empty()) return "1";
    std::string out;
    for (const auto& [s, e] : factors) {
        if (!out.empty()) out += "*";
        out += symbols::name(s);
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
}

std::map<std::pair<int, int>, Expr> expand_in_basis(const Expr& coeff, const PhiBasis& basis,
                                                    int u_min, int u_max) {
    std::map<std::pair<int, int>, std::vector<Term>> buckets;
    for (const Term& t : coeff.terms()) {
        const int u_pow = t.jet[JET_U];
        if (t.jet[JET_UP] != 0 || t.jet[JET_UPP] != 0 || t.jet[JET_UPPP] != 0 ||
            t.jet[JET_UPPPP] != 0) {
            throw std::logic_error("expand_in_basis expects a (phi, u) coefficient, got: " +
                                   Expr::from_terms({t}).str());
        }
        if (u_pow < u_min || u_pow > u_max) {
            throw BasisOverflow("u-power " + std::to_string(u_pow) +
                                    " outside the configured range [" + std::to_string(u_min) +
                                    ", " + std::to_string(u_max) + "]; widen u_min/u_max",
                                Expr::from_terms({t}).str());
        }
        auto idx = basis.index_of(t.phi_pow, t.trig);
        if (!idx) {
            throw BasisOverflow(
                "phi-function outside span of the basis (p_cap=" + std::to_string(basis.p_cap()) +
                    ", m_cap=" + std::to_string(basis.m_cap()) + "); raise the caps",
                Expr::from_terms({t}).str());
        }
        Term rest = t;
        rest.jet[JET_U] = 0;
        rest.phi_pow = 0;
        rest.trig = TrigAtom{};
        buckets[{u_pow, *idx}].push_back(std::move(rest));
    }
    std::map<std::pair<int, int>, Expr> out;
    for (auto& [key, terms] : buckets) {
        Expr e = Expr::from_terms(std::move(terms));
        if (!e.is_zero()) out.emplace(key, std::move(e));
    }
    return out;
}

bool RowKey::operator<(const RowKey& o) const {
    if (jet != o.jet) return jet < o.jet;
    if (u_pow != o.u_pow) return u_pow < o.u_pow;
    if (basis_index != o.basis_index) return basis_index < o.basis_index;
    return params < o.params;
}

std::string RowKey::str(const PhiBasis& basis) const {
    std::ostringstream os;
    os << "(" << jet.str() << " | u^" << u_pow << " | " << basis.name(basis_index) << " | "
       << params.str() << ")";
    return os.str();
}

DeterminingSystem determining_system(const Expr& residual, const std::vector<SymId>& unknowns,
                                     const PhiBasis& basis, int u_min, int u_max) {
    std::unordered_map<SymId, int> index_of;
    for (size_t i = 0; i < unknowns.size(); ++i) {
        index_of[unknowns[i]] = static_cast<int>(i);
    }

    std::map<RowKey, std::map<int, Rational>> rows;
    for (const Term& t : residual.terms()) {
        int unknown_idx = -1;
        ParamMonomial pm;
        for (const auto& [s, e] : t.syms) {
            auto it = index_of.find(s);
            if (it != index_of.end()) {
                if (unknown_idx >= 0 || e != 1) {
                    throw std::logic_error(
                        "residual is not linear in the unknowns; offending term: " +
                        Expr::from_terms({t}).str());
                }
                unknown_idx = it->second;
            } else {
                pm.factors.emplace_back(s, e);
            }
        }
        if (unknown_idx < 0) {
            throw std::logic_error("residual term carries no unknown (inhomogeneous): " +
                                   Expr::from_terms({t}).str());
        }
        if (t.jet[JET_U] < u_min || t.jet[JET_U] > u_max) {
            throw BasisOverflow("u-power " + std::to_string(t.jet[JET_U]) +
                                    " outside the configured range [" + std::to_string(u_min) +
                                    ", " + std::to_string(u_max) + "]; widen u_min/u_max",
                                Expr::from_terms({t}).str());
        }
        auto bidx = basis.index_of(t.phi_pow, t.trig);
        if (!bidx) {
            throw BasisOverflow(
                "phi-function outside span of the basis (p_cap=" + std::to_string(basis.p_cap()) +
                    ", m_cap=" + std::to_string(basis.m_cap()) + "); raise the caps",
                Expr::from_terms({t}).str());
        }
        RowKey key;
        key.jet = JetKey{t.jet[JET_UP], t.jet[JET_UPP], t.jet[JET_UPPP], t.jet[JET_UPPPP]};
        key.u_pow = t.jet[JET_U];
        key.basis_index = *bidx;
        key.params = pm;
        rows[key][unknown_idx] += t.coeff;
    }

    DeterminingSystem sys;
    sys.unknowns = unknowns;
    sys.basis = basis;
    sys.u_min = u_min;
    sys.u_max = u_max;
    for (auto& [key, entries] : rows) {
        linalg::SparseRow row;
        for (auto& [idx, q] : entries) {
            if (sgn(q) != 0) row.emplace_back(idx, q);
        }
        if (row.empty()) continue;
        sys.rows.push_back(DetRow{key, std::move(row)});
    }
    return sys;
}

std::vector<DetRow> DeterminingSystem::deduplicated() const {
    std::vector<DetRow> out;
    std::vector<linalg::SparseRow> seen;
    for (const DetRow& r : rows) {
        // Normalize to integer-primitive with positive lead for comparison.
        std::vector<Rational> dense;
        dense.reserve(r.entries.size());
        for (const auto& [c, q] : r.entries) dense.push_back(q);
        dense = primitive_normalized(dense);
        linalg::SparseRow norm;
        for (size_t i = 0; i < r.entries.size(); ++i) {
            norm.emplace_back(r.entries[i].first, dense[i]);
        }
        if (std::find(seen.begin(), seen.end(), norm) != seen.end()) continue;
        seen.push_back(std::move(norm));
        out.push_back(r);
    }
    return out;
}

std::string DeterminingSystem::to_text() const {
    std::ostringstream os;
    os << "# determining system: " << rows.size() << " rows, " << unknowns.size()
       << " unknowns\n";
    os << "# unknowns:";
    for (SymId s : unknowns) os << " " << symbols::name(s);
    os << "\n";
    for (const DetRow& r : rows) {
        os << r.key.str(basis) << " :";
        for (const auto& [idx, q] : r.entries) {
            os << " " << to_string(q) << "*" << symbols::name(unknowns[static_cast<size_t>(idx)]);
        }
        os << " = 0\n";
    }
    return os.str();
}

} // namespace apsym
