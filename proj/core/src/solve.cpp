#include "apsym/solve.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace apsym {

void AnsatzConfig::validate() const {
    if (basis_p < 0 || basis_m < 1) throw ExprError("basis caps must satisfy p >= 0, m >= 1");
    if (u_min > 0 || u_max < 1) throw ExprError("u-power range must include [0, 1]");
    if (low_xi > deg_xi || low_eta > deg_eta || low_gauge > deg_gauge) {
        throw ExprError("ansatz lower degree exceeds upper degree");
    }
    if (low_xi < u_min || low_eta < u_min || low_gauge < u_min) {
        throw ExprError("ansatz lower degrees must lie inside the u-power range");
    }
}

std::vector<ParamMonomial> ansatz_monomials(const PerturbedLagrangian& lag, int order) {
    // P[i]: monomials of G_i; M[k]: monomials reachable at order k, i.e.
    // {1} plus every product M[j] * P[k-j].
    std::array<std::vector<ParamMonomial>, 4> p;
    for (int i = 1; i <= 3; ++i) {
        std::set<ParamMonomial> s;
        for (const Term& t : lag.G(i).terms()) {
            ParamMonomial pm;
            pm.factors = t.syms;
            std::sort(pm.factors.begin(), pm.factors.end(), [](const auto& a, const auto& b) {
                return symbols::name(a.first) < symbols::name(b.first);
            });
            s.insert(pm);
        }
        p[static_cast<size_t>(i)].assign(s.begin(), s.end());
    }
    std::vector<std::set<ParamMonomial>> m(static_cast<size_t>(order) + 1);
    m[0].insert(ParamMonomial{});
    for (int k = 1; k <= order; ++k) {
        m[static_cast<size_t>(k)].insert(ParamMonomial{});
        for (int j = 0; j < k; ++j) {
            if (k - j > 3) continue;
            for (const auto& a : m[static_cast<size_t>(j)]) {
                for (const auto& b : p[static_cast<size_t>(k - j)]) {
                    m[static_cast<size_t>(k)].insert(a.times(b));
                }
            }
        }
    }
    std::vector<ParamMonomial> out(m[static_cast<size_t>(order)].begin(),
                                   m[static_cast<size_t>(order)].end());
    if (out.size() > 64) {
        throw ExprError("parameter monomial set too large (" + std::to_string(out.size()) +
                        "); simplify the perturbation parameters");
    }
    return out;
}

namespace {

std::string mono_token(const ParamMonomial& pm) {
    std::string out;
    for (const auto& [s, e] : pm.factors) {
        out += "_" + symbols::name(s);
        if (e < 0) out += "m" + std::to_string(-e);
        if (e > 1) out += "p" + std::to_string(e);
    }
    return out;
}

std::string basis_token(const BasisFn& fn) {
    std::string out;
    for (int i = 0; i < fn.phi_pow; ++i) out += "phi";
    if (fn.trig.kind == TrigKind::Sin) out += "sin" + std::to_string(fn.trig.m);
    if (fn.trig.kind == TrigKind::Cos) out += "cos" + std::to_string(fn.trig.m);
    if (out.empty()) out = "one";
    return out;
}

std::string u_token(int u_pow) {
    return u_pow < 0 ? "um" + std::to_string(-u_pow) : "u" + std::to_string(u_pow);
}

/// Sum over u-powers, basis functions and parameter monomials of fresh
/// unknowns; deterministic naming like xi1_u0_cos2.
Expr ansatz_sum(const std::string& prefix, int low, int high, const PhiBasis& basis,
                const std::vector<ParamMonomial>& monomials, std::vector<SymId>& unknowns) {
    std::vector<Term> terms;
    for (int upow = low; upow <= high; ++upow) {
        for (int b = 0; b < basis.size(); ++b) {
            const BasisFn& fn = basis.functions()[static_cast<size_t>(b)];
            for (const ParamMonomial& pm : monomials) {
                std::string name = prefix + "_" + u_token(upow) + "_" + basis_token(fn) +
                                   mono_token(pm);
                SymId w = symbols::unknown(name);
                unknowns.push_back(w);
                Term t;
                t.coeff = 1;
                t.jet[JET_U] = upow;
                t.phi_pow = fn.phi_pow;
                t.trig = fn.trig;
                t.syms = pm.factors;
                t.syms.emplace_back(w, 1);
                terms.push_back(std::move(t));
            }
        }
    }
    return Expr::from_terms(std::move(terms));
}

} // namespace

OrderAnsatz build_ansatz(const AnsatzConfig& config, int order,
                         const std::vector<ParamMonomial>& monomials) {
    config.validate();
    PhiBasis basis = config.make_basis();
    OrderAnsatz out;
    const std::string suffix = std::to_string(order);
    out.gen.xi = ansatz_sum("xi" + suffix, config.low_xi, config.deg_xi, basis, monomials,
                            out.unknowns);
    out.gen.eta = ansatz_sum("eta" + suffix, config.low_eta, config.deg_eta, basis, monomials,
                             out.unknowns);
    out.gauge = ansatz_sum("ga" + suffix, config.low_gauge, config.deg_gauge, basis, monomials,
                           out.unknowns);
    return out;
}

std::vector<GeneratorPair> GeneralSolution::components() const {
    std::vector<GeneratorPair> comps;
    comps.push_back(exact_basis::combination(c));
    comps.insert(comps.end(), corrections.begin(), corrections.end());
    return comps;
}

const char* to_string(VectorClass c) {
    switch (c) {
        case VectorClass::Exact: return "exact";
        case VectorClass::TrivialLift: return "trivial-lift";
        case VectorClass::Nontrivial: return "nontrivial";
    }
    return "?";
}

bool SpaceVector::order0_is_zero() const {
    return std::all_of(order0.begin(), order0.end(),
                       [](const Rational& q) { return sgn(q) == 0; });
}

bool SpaceVector::corrections_are_zero() const {
    return std::all_of(corrections.begin(), corrections.end(),
                       [](const GeneratorPair& g) { return g.is_zero(); });
}

ApproxGenerator SpaceVector::generator() const {
    ApproxGenerator g;
    g.order0 = order0;
    g.corrections = corrections;
    return g;
}

GaugeTerm SpaceVector::gauge_term() const { return GaugeTerm{gauges}; }

VectorClass classify(const SpaceVector& v) {
    if (v.order0_is_zero()) return VectorClass::TrivialLift;
    if (v.corrections_are_zero()) return VectorClass::Exact;
    return VectorClass::Nontrivial;
}

size_t SolutionSpace::count(VectorClass c) const {
    return static_cast<size_t>(std::count_if(vectors.begin(), vectors.end(),
                                             [&](const SpaceVector& v) { return v.label == c; }));
}

std::vector<const SpaceVector*> SolutionSpace::of(VectorClass c) const {
    std::vector<const SpaceVector*> out;
    for (const auto& v : vectors) {
        if (v.label == c) out.push_back(&v);
    }
    return out;
}

// --- coordinatization --------------------------------------------------------

namespace {

/// Column identity for one rational coordinate of a solution vector.
/// block 0: order-0 coordinates, block 1: corrections, block 2: gauges.
struct CoordKey {
    int block = 0;
    int order = 0;
    int func = 0; // 0 = xi, 1 = eta (block 1); unused otherwise
    Term monomial; // coeff ignored

    bool operator<(const CoordKey& o) const {
        if (block != o.block) return block < o.block;
        if (order != o.order) return order < o.order;
        if (func != o.func) return func < o.func;
        return compare_monomials(monomial, o.monomial) < 0;
    }
};

Term monomial_of(const Term& t) {
    Term m = t;
    m.coeff = 1;
    return m;
}

void collect_keys(const SpaceVector& v, bool include_gauge, std::set<CoordKey>& keys) {
    for (int h = 0; h < 5; ++h) {
        Term slot;
        slot.coeff = 1;
        slot.phi_pow = 5 - h; // distinct formal slots, c1 leftmost
        keys.insert(CoordKey{0, 0, 0, slot});
    }
    for (size_t k = 0; k < v.corrections.size(); ++k) {
        for (const Term& t : v.corrections[k].xi.terms()) {
            keys.insert(CoordKey{1, static_cast<int>(k + 1), 0, monomial_of(t)});
        }
        for (const Term& t : v.corrections[k].eta.terms()) {
            keys.insert(CoordKey{1, static_cast<int>(k + 1), 1, monomial_of(t)});
        }
    }
    if (include_gauge) {
        for (size_t k = 0; k < v.gauges.size(); ++k) {
            for (const Term& t : v.gauges[k].terms()) {
                keys.insert(CoordKey{2, static_cast<int>(k), 0, monomial_of(t)});
            }
        }
    }
}

linalg::QVec vectorize(const SpaceVector& v, const std::vector<CoordKey>& keys,
                       bool include_gauge) {
    std::map<CoordKey, Rational> coords;
    for (int h = 0; h < 5; ++h) {
        Term slot;
        slot.coeff = 1;
        slot.phi_pow = 5 - h;
        coords[CoordKey{0, 0, 0, slot}] = v.order0[static_cast<size_t>(h)];
    }
    for (size_t k = 0; k < v.corrections.size(); ++k) {
        for (const Term& t : v.corrections[k].xi.terms()) {
            coords[CoordKey{1, static_cast<int>(k + 1), 0, monomial_of(t)}] = t.coeff;
        }
        for (const Term& t : v.corrections[k].eta.terms()) {
            coords[CoordKey{1, static_cast<int>(k + 1), 1, monomial_of(t)}] = t.coeff;
        }
    }
    if (include_gauge) {
        for (size_t k = 0; k < v.gauges.size(); ++k) {
            for (const Term& t : v.gauges[k].terms()) {
                coords[CoordKey{2, static_cast<int>(k), 0, monomial_of(t)}] = t.coeff;
            }
        }
    }
    linalg::QVec out;
    out.reserve(keys.size());
    for (const CoordKey& key : keys) {
        auto it = coords.find(key);
        out.push_back(it == coords.end() ? Rational(0) : it->second);
    }
    return out;
}

} // namespace

std::vector<linalg::QVec> coordinatize(const std::vector<SpaceVector>& vectors,
                                       bool include_gauge) {
    std::set<CoordKey> key_set;
    for (const auto& v : vectors) collect_keys(v, include_gauge, key_set);
    std::vector<CoordKey> keys(key_set.begin(), key_set.end());
    std::vector<linalg::QVec> out;
    out.reserve(vectors.size());
    for (const auto& v : vectors) out.push_back(vectorize(v, keys, include_gauge));
    return out;
}

// --- the sequential solver ----------------------------------------------------

namespace {

/// Extracts the direction of each free symbol from the general solution: the
/// concrete SpaceVector obtained by setting that free to 1 and the others to 0.
std::vector<SpaceVector> directions(const GeneralSolution& gs) {
    std::vector<SpaceVector> dirs(gs.frees.size());
    std::map<SymId, size_t> index;
    for (size_t i = 0; i < gs.frees.size(); ++i) {
        index[gs.frees[i]] = i;
        dirs[i].corrections.resize(gs.corrections.size());
        dirs[i].gauges.resize(gs.gauges.size());
    }
    auto scatter = [&](const Expr& e, auto&& assign) {
        for (const Term& t : e.terms()) {
            size_t dir = 0;
            bool found = false;
            Term rest = t;
            for (size_t i = 0; i < rest.syms.size(); ++i) {
                auto it = index.find(rest.syms[i].first);
                if (it == index.end()) continue;
                if (found || rest.syms[i].second != 1) {
                    throw std::logic_error("general solution is not linear in the free constants");
                }
                found = true;
                dir = it->second;
                rest.syms.erase(rest.syms.begin() + static_cast<long>(i));
                --i;
            }
            if (!found) throw std::logic_error("general solution carries a term with no free constant");
            assign(dir, rest);
        }
    };
    for (int h = 0; h < 5; ++h) {
        scatter(gs.c[static_cast<size_t>(h)], [&](size_t d, const Term& rest) {
            Expr coeff = Expr::from_terms({rest});
            if (!coeff.is_rational()) {
                throw std::logic_error("order-0 coordinate is not a rational multiple of a free");
            }
            dirs[d].order0[static_cast<size_t>(h)] += coeff.rational_value();
        });
    }
    for (size_t k = 0; k < gs.corrections.size(); ++k) {
        scatter(gs.corrections[k].xi, [&](size_t d, const Term& rest) {
            dirs[d].corrections[k].xi = dirs[d].corrections[k].xi + Expr::from_terms({rest});
        });
        scatter(gs.corrections[k].eta, [&](size_t d, const Term& rest) {
            dirs[d].corrections[k].eta = dirs[d].corrections[k].eta + Expr::from_terms({rest});
        });
    }
    for (size_t k = 0; k < gs.gauges.size(); ++k) {
        scatter(gs.gauges[k], [&](size_t d, const Term& rest) {
            dirs[d].gauges[k] = dirs[d].gauges[k] + Expr::from_terms({rest});
        });
    }
    return dirs;
}

/// Canonical classified basis: reduced echelon over [order-0 | corrections |
/// gauges] coordinates, rebuilt as concrete vectors.
std::vector<SpaceVector> canonical_basis(const GeneralSolution& gs) {
    std::vector<SpaceVector> dirs = directions(gs);
    if (dirs.empty()) return dirs;

    std::set<CoordKey> key_set;
    for (const auto& v : dirs) collect_keys(v, /*include_gauge=*/true, key_set);
    std::vector<CoordKey> keys(key_set.begin(), key_set.end());
    std::vector<linalg::QVec> rows;
    rows.reserve(dirs.size());
    for (const auto& v : dirs) rows.push_back(vectorize(v, keys, /*include_gauge=*/true));
    rows = linalg::rref(std::move(rows));

    std::vector<SpaceVector> out;
    for (const auto& row : rows) {
        SpaceVector v;
        v.corrections.resize(gs.corrections.size());
        v.gauges.resize(gs.gauges.size());
        std::vector<Term> parts;
        for (size_t i = 0; i < keys.size(); ++i) {
            if (sgn(row[i]) == 0) continue;
            const CoordKey& key = keys[i];
            Term t = key.monomial;
            t.coeff = row[i];
            if (key.block == 0) {
                v.order0[static_cast<size_t>(5 - key.monomial.phi_pow)] = row[i];
            } else if (key.block == 1) {
                auto& pair = v.corrections[static_cast<size_t>(key.order - 1)];
                Expr& target = key.func == 0 ? pair.xi : pair.eta;
                target = target + Expr::from_terms({t});
            } else {
                v.gauges[static_cast<size_t>(key.order)] =
                    v.gauges[static_cast<size_t>(key.order)] + Expr::from_terms({t});
            }
        }
        v.label = classify(v);
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace

SolutionSpace solve_order(const PerturbedLagrangian& lag, const SolutionSpace* prior, int k,
                          const AnsatzConfig& config) {
    if (k < 0 || k > 3) throw ExprError("solve order must be in 0..3");
    if (k > 0 && (prior == nullptr || prior->order != k - 1)) {
        throw SequentialOrderError("order " + std::to_string(k) +
                                   " requires the order-" + std::to_string(k - 1) +
                                   " solution (conditions apply sequentially)");
    }
    config.validate();
    PhiBasis basis = config.make_basis();

    // Assemble components: carried general solution below order k plus a fresh
    // ansatz at order k (at k = 0 the exact-basis coordinates c1..c5 are the
    // fresh generator unknowns).
    std::vector<GeneratorPair> comps;
    std::vector<Expr> gauges;
    std::vector<SymId> unknowns;
    std::array<Expr, 5> c_exprs;

    if (k == 0) {
        OrderAnsatz gauge_ansatz;
        gauge_ansatz.gauge = ansatz_sum("ga0", config.low_gauge, config.deg_gauge, basis,
                                        {ParamMonomial{}}, gauge_ansatz.unknowns);
        for (int h = 0; h < 5; ++h) {
            SymId ch = symbols::unknown("c" + std::to_string(h + 1));
            c_exprs[static_cast<size_t>(h)] = Expr::sym(ch);
        }
        comps.push_back(exact_basis::combination(c_exprs));
        gauges.push_back(gauge_ansatz.gauge);
        unknowns = gauge_ansatz.unknowns;
        for (int h = 0; h < 5; ++h) {
            unknowns.push_back(*symbols::find("c" + std::to_string(h + 1)));
        }
    } else {
        OrderAnsatz fresh = build_ansatz(config, k, ansatz_monomials(lag, k));
        c_exprs = prior->general.c;
        comps.push_back(exact_basis::combination(c_exprs));
        for (const auto& corr : prior->general.corrections) comps.push_back(corr);
        comps.push_back(fresh.gen);
        gauges = prior->general.gauges;
        gauges.push_back(fresh.gauge);
        unknowns = fresh.unknowns;
        unknowns.insert(unknowns.end(), prior->general.frees.begin(),
                        prior->general.frees.end());
    }

    Expr residual = residual_from_components(lag, comps, gauges, k);

    DeterminingSystem sys = determining_system(residual, unknowns, basis, config.u_min,
                                               config.u_max);
    std::vector<linalg::SparseRow> rows;
    for (const DetRow& r : sys.deduplicated()) rows.push_back(r.entries);
    linalg::NullspaceResult ns = linalg::nullspace(unknowns.size(), std::move(rows));

    // Rebind every unknown to the new free constants.
    GeneralSolution gs;
    gs.order = k;
    std::map<std::string, Expr> binding;
    for (size_t i = 0; i < unknowns.size(); ++i) {
        binding[symbols::name(unknowns[i])] = Expr::zero();
    }
    for (size_t v = 0; v < ns.basis.size(); ++v) {
        SymId f = symbols::unknown("f" + std::to_string(k) + "_" + std::to_string(v));
        gs.frees.push_back(f);
        for (size_t i = 0; i < unknowns.size(); ++i) {
            const Rational& q = ns.basis[v][i];
            if (sgn(q) == 0) continue;
            auto& slot = binding[symbols::name(unknowns[i])];
            slot = slot + Expr::sym(f).scaled(q);
        }
    }

    for (int h = 0; h < 5; ++h) {
        gs.c[static_cast<size_t>(h)] = substitute(c_exprs[static_cast<size_t>(h)], binding);
    }
    for (size_t j = 1; j < comps.size(); ++j) {
        gs.corrections.push_back(GeneratorPair{substitute(comps[j].xi, binding),
                                               substitute(comps[j].eta, binding)});
    }
    for (const Expr& a : gauges) gs.gauges.push_back(substitute(a, binding));

    SolutionSpace space;
    space.order = k;
    space.config = config;
    space.general = std::move(gs);
    space.stats =
        SolveStats{unknowns.size(), sys.rows.size(), ns.basis.size()};
    space.vectors = canonical_basis(space.general);
    return space;
}

std::vector<SolutionSpace> solve_sequential(const PerturbedLagrangian& lag, int max_order,
                                            const AnsatzConfig& config) {
    if (max_order < 0 || max_order > 3) throw ExprError("max order must be in 0..3");
    std::vector<SolutionSpace> stages;
    for (int k = 0; k <= max_order; ++k) {
        const SolutionSpace* prior = stages.empty() ? nullptr : &stages.back();
        stages.push_back(solve_order(lag, prior, k, config));
    }
    return stages;
}

} // namespace apsym
