#include "apsym/expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace apsym {

const char* jet_name(JetVar v) {
    switch (v) {
        case JET_U: return "u";
        case JET_UP: return "up";
        case JET_UPP: return "upp";
        case JET_UPPP: return "uppp";
        case JET_UPPPP: return "upppp";
        default: return "?";
    }
}

namespace {

int cmp_rational(const Rational& a, const Rational& b) {
    return ::cmp(a, b);
}

int trig_rank(TrigKind k) {
    switch (k) {
        case TrigKind::None: return 0;
        case TrigKind::Sin: return 1;
        case TrigKind::Cos: return 2;
    }
    return 0;
}

int compare_trig(const TrigAtom& a, const TrigAtom& b) {
    if (a.m != b.m) return a.m < b.m ? -1 : 1;
    if (trig_rank(a.kind) != trig_rank(b.kind)) return trig_rank(a.kind) < trig_rank(b.kind) ? -1 : 1;
    return cmp_rational(a.offset, b.offset);
}

int compare_syms(const std::vector<std::pair<SymId, int>>& a,
                 const std::vector<std::pair<SymId, int>>& b) {
    const size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        const std::string& an = symbols::name(a[i].first);
        const std::string& bn = symbols::name(b[i].first);
        if (an != bn) return an < bn ? -1 : 1;
        if (a[i].second != b[i].second) return a[i].second > b[i].second ? -1 : 1;
    }
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}

/// Flips sin(-x) = -sin(x), cos(-x) = cos(x); resolves constant arguments 0.
/// May zero the coefficient (sin 0).
void normalize_trig(Term& t) {
    if (t.trig.kind == TrigKind::None) {
        t.trig.m = 0;
        t.trig.offset = 0;
        return;
    }
    if (t.trig.m < 0 || (t.trig.m == 0 && sgn(t.trig.offset) < 0)) {
        t.trig.m = -t.trig.m;
        t.trig.offset = -t.trig.offset;
        if (t.trig.kind == TrigKind::Sin) t.coeff = -t.coeff;
    }
    if (t.trig.m == 0 && sgn(t.trig.offset) == 0) {
        if (t.trig.kind == TrigKind::Sin) {
            t.coeff = 0;
        }
        t.trig = TrigAtom{};
    }
}

void sort_and_fold_syms(Term& t) {
    std::sort(t.syms.begin(), t.syms.end(), [](const auto& x, const auto& y) {
        return symbols::name(x.first) < symbols::name(y.first);
    });
    std::vector<std::pair<SymId, int>> folded;
    for (const auto& [s, e] : t.syms) {
        if (!folded.empty() && folded.back().first == s) {
            folded.back().second += e;
        } else {
            folded.emplace_back(s, e);
        }
    }
    std::erase_if(folded, [](const auto& p) { return p.second == 0; });
    t.syms = std::move(folded);
}

std::shared_ptr<const std::vector<Term>> empty_terms() {
    static const auto empty = std::make_shared<const std::vector<Term>>();
    return empty;
}

} // namespace

int compare_monomials(const Term& a, const Term& b) {
    for (int v = JET_COUNT - 1; v >= 0; --v) {
        if (a.jet[v] != b.jet[v]) return a.jet[v] > b.jet[v] ? -1 : 1;
    }
    if (int c = compare_syms(a.syms, b.syms); c != 0) return c;
    if (a.phi_pow != b.phi_pow) return a.phi_pow > b.phi_pow ? -1 : 1;
    return compare_trig(a.trig, b.trig);
}

Expr Expr::from_terms(std::vector<Term> raw) {
    std::vector<Term> work;
    work.reserve(raw.size());
    for (auto& t : raw) {
        sort_and_fold_syms(t);
        normalize_trig(t);
        if (sgn(t.coeff) != 0) work.push_back(std::move(t));
    }
    std::sort(work.begin(), work.end(),
              [](const Term& a, const Term& b) { return compare_monomials(a, b) < 0; });
    std::vector<Term> merged;
    for (auto& t : work) {
        if (!merged.empty() && compare_monomials(merged.back(), t) == 0) {
            merged.back().coeff += t.coeff;
            if (sgn(merged.back().coeff) == 0) merged.pop_back();
        } else {
            merged.push_back(std::move(t));
        }
    }
    if (merged.empty()) return {};
    return Expr(std::make_shared<const std::vector<Term>>(std::move(merged)));
}

const std::vector<Term>& Expr::terms() const {
    if (!terms_) return *empty_terms();
    return *terms_;
}

Expr Expr::rational(const Rational& q) {
    if (sgn(q) == 0) return {};
    Term t;
    t.coeff = q;
    return from_terms({t});
}

Expr Expr::sym(SymId s) {
    Term t;
    t.coeff = 1;
    t.syms.emplace_back(s, 1);
    return from_terms({t});
}

Expr Expr::jet(JetVar v) {
    Term t;
    t.coeff = 1;
    t.jet[v] = 1;
    return from_terms({t});
}

Expr Expr::phi() {
    Term t;
    t.coeff = 1;
    t.phi_pow = 1;
    return from_terms({t});
}

Expr Expr::trig(TrigKind kind, int m, const Rational& offset) {
    Term t;
    t.coeff = 1;
    t.trig = TrigAtom{kind, m, offset};
    return from_terms({t});
}

bool Expr::is_rational() const {
    const auto& ts = terms();
    if (ts.empty()) return true;
    if (ts.size() > 1) return false;
    const Term& t = ts.front();
    return t.syms.empty() && t.phi_pow == 0 && t.trig.kind == TrigKind::None &&
           std::all_of(t.jet.begin(), t.jet.end(), [](int e) { return e == 0; });
}

Rational Expr::rational_value() const {
    if (!is_rational()) throw ExprError("expression is not a rational constant: " + str());
    return terms().empty() ? Rational(0) : terms().front().coeff;
}

bool Expr::operator==(const Expr& o) const {
    const auto& a = terms();
    const auto& b = o.terms();
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].coeff != b[i].coeff) return false;
        if (compare_monomials(a[i], b[i]) != 0) return false;
    }
    return true;
}

Expr Expr::operator-() const { return scaled(Rational(-1)); }

Expr Expr::scaled(const Rational& q) const {
    if (sgn(q) == 0 || is_zero()) return {};
    std::vector<Term> out = terms();
    for (auto& t : out) t.coeff *= q;
    return Expr(std::make_shared<const std::vector<Term>>(std::move(out)));
}

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    // Both sides are canonical: merge the sorted term lists directly.
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    std::vector<Term> out;
    out.reserve(ta.size() + tb.size());
    size_t i = 0, j = 0;
    while (i < ta.size() && j < tb.size()) {
        int c = compare_monomials(ta[i], tb[j]);
        if (c < 0) {
            out.push_back(ta[i++]);
        } else if (c > 0) {
            out.push_back(tb[j++]);
        } else {
            Term t = ta[i++];
            t.coeff += tb[j++].coeff;
            if (sgn(t.coeff) != 0) out.push_back(std::move(t));
        }
    }
    for (; i < ta.size(); ++i) out.push_back(ta[i]);
    for (; j < tb.size(); ++j) out.push_back(tb[j]);
    if (out.empty()) return {};
    return Expr::from_terms(std::move(out));
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

namespace {

/// Product of two terms; trig*trig splits via the product-to-sum identities,
/// so up to two output terms.
void mul_terms(const Term& a, const Term& b, std::vector<Term>& out) {
    Term base;
    base.coeff = a.coeff * b.coeff;
    for (int v = 0; v < JET_COUNT; ++v) base.jet[v] = a.jet[v] + b.jet[v];
    base.phi_pow = a.phi_pow + b.phi_pow;
    base.syms = a.syms;
    base.syms.insert(base.syms.end(), b.syms.begin(), b.syms.end());

    if (a.trig.kind == TrigKind::None || b.trig.kind == TrigKind::None) {
        base.trig = a.trig.kind == TrigKind::None ? b.trig : a.trig;
        out.push_back(std::move(base));
        return;
    }

    const TrigAtom& A = a.trig;
    const TrigAtom& B = b.trig;
    TrigAtom diff{TrigKind::None, A.m - B.m, A.offset - B.offset};
    TrigAtom sum{TrigKind::None, A.m + B.m, A.offset + B.offset};
    Rational half = a.coeff * b.coeff / 2;

    Term t1 = base, t2 = base;
    t1.coeff = half;
    t2.coeff = half;
    const bool a_sin = A.kind == TrigKind::Sin;
    const bool b_sin = B.kind == TrigKind::Sin;
    if (a_sin && b_sin) {
        // sin A sin B = 1/2 cos(A-B) - 1/2 cos(A+B)
        t1.trig = diff;
        t1.trig.kind = TrigKind::Cos;
        t2.trig = sum;
        t2.trig.kind = TrigKind::Cos;
        t2.coeff = -half;
    } else if (!a_sin && !b_sin) {
        // cos A cos B = 1/2 cos(A-B) + 1/2 cos(A+B)
        t1.trig = diff;
        t1.trig.kind = TrigKind::Cos;
        t2.trig = sum;
        t2.trig.kind = TrigKind::Cos;
    } else if (a_sin) {
        // sin A cos B = 1/2 sin(A+B) + 1/2 sin(A-B)
        t1.trig = sum;
        t1.trig.kind = TrigKind::Sin;
        t2.trig = diff;
        t2.trig.kind = TrigKind::Sin;
    } else {
        // cos A sin B = 1/2 sin(A+B) - 1/2 sin(A-B)
        t1.trig = sum;
        t1.trig.kind = TrigKind::Sin;
        t2.trig = diff;
        t2.trig.kind = TrigKind::Sin;
        t2.coeff = -half;
    }
    out.push_back(std::move(t1));
    out.push_back(std::move(t2));
}

} // namespace

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Term> out;
    out.reserve(a.terms().size() * b.terms().size() * 2);
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            mul_terms(ta, tb, out);
        }
    }
    return Expr::from_terms(std::move(out));
}

Expr Expr::pow(const Expr& base, int exponent) {
    if (exponent == 0) {
        if (base.is_zero()) throw ExprError("0^0 is undefined");
        return one();
    }
    if (exponent < 0) {
        const auto& ts = base.terms();
        if (ts.size() != 1) {
            throw ExprError("negative power of a sum is outside the expression class: " +
                            base.str());
        }
        const Term& t = ts.front();
        if (t.trig.kind != TrigKind::None || t.phi_pow != 0) {
            throw ExprError("negative power of a trig or phi factor is not supported: " +
                            base.str());
        }
        Term inv;
        inv.coeff = 1 / t.coeff;
        for (int v = 0; v < JET_COUNT; ++v) inv.jet[v] = -t.jet[v];
        inv.syms = t.syms;
        for (auto& [s, e] : inv.syms) e = -e;
        Expr unit = from_terms({inv});
        Expr out = one();
        for (int i = 0; i < -exponent; ++i) out = out * unit;
        return out;
    }
    Expr out = one();
    Expr acc = base;
    int e = exponent;
    while (e > 0) {
        if (e & 1) out = out * acc;
        e >>= 1;
        if (e) acc = acc * acc;
    }
    return out;
}

bool Expr::depends_on_jet(JetVar v) const {
    return std::any_of(terms().begin(), terms().end(),
                       [&](const Term& t) { return t.jet[v] != 0; });
}

bool Expr::depends_on_phi() const {
    return std::any_of(terms().begin(), terms().end(), [](const Term& t) {
        return t.phi_pow != 0 || t.trig.kind != TrigKind::None;
    });
}

bool Expr::depends_on_sym(SymId s) const {
    return std::any_of(terms().begin(), terms().end(), [&](const Term& t) {
        return std::any_of(t.syms.begin(), t.syms.end(),
                           [&](const auto& p) { return p.first == s && p.second != 0; });
    });
}

int Expr::max_jet_power(JetVar v) const {
    int m = 0;
    for (const auto& t : terms()) m = std::max(m, t.jet[v]);
    return m;
}

int Expr::min_u_power() const {
    int m = 0;
    for (const auto& t : terms()) m = std::min(m, t.jet[JET_U]);
    return m;
}

namespace {

int eps_power(const Term& t) {
    for (const auto& [s, e] : t.syms) {
        if (s == symbols::eps()) return e;
    }
    return 0;
}

} // namespace

int Expr::max_eps_power() const {
    int m = 0;
    for (const auto& t : terms()) m = std::max(m, eps_power(t));
    return m;
}

Expr Expr::eps_coefficient(int k) const {
    std::vector<Term> out;
    for (const auto& t : terms()) {
        if (eps_power(t) != k) continue;
        Term c = t;
        std::erase_if(c.syms, [](const auto& p) { return p.first == symbols::eps(); });
        out.push_back(std::move(c));
    }
    return from_terms(std::move(out));
}

Expr Expr::eps_truncated(int k) const {
    std::vector<Term> out;
    for (const auto& t : terms()) {
        if (eps_power(t) <= k) out.push_back(t);
    }
    return from_terms(std::move(out));
}

Expr simplify(const Expr& e) {
    return Expr::from_terms(e.terms());
}

// --- differentiation ---------------------------------------------------------

Expr diff_jet(const Expr& e, JetVar v) {
    std::vector<Term> out;
    for (const auto& t : e.terms()) {
        if (t.jet[v] == 0) continue;
        Term d = t;
        d.coeff *= t.jet[v];
        d.jet[v] -= 1;
        out.push_back(std::move(d));
    }
    // Placeholder symbols f(phi, u): chain through d/du.
    if (v == JET_U) {
        for (const auto& t : e.terms()) {
            for (size_t i = 0; i < t.syms.size(); ++i) {
                const auto [s, exp] = t.syms[i];
                if (symbols::kind(s) != SymKind::Placeholder) continue;
                Term d = t;
                d.coeff *= exp;
                d.syms[i].second -= 1;
                d.syms.emplace_back(symbols::placeholder_derivative(s, /*wrt_phi=*/false), 1);
                out.push_back(std::move(d));
            }
        }
    }
    return Expr::from_terms(std::move(out));
}

Expr diff_phi(const Expr& e) {
    std::vector<Term> out;
    for (const auto& t : e.terms()) {
        if (t.phi_pow > 0) {
            Term d = t;
            d.coeff *= t.phi_pow;
            d.phi_pow -= 1;
            out.push_back(std::move(d));
        }
        if (t.trig.kind != TrigKind::None && t.trig.m != 0) {
            Term d = t;
            d.coeff *= t.trig.m;
            if (t.trig.kind == TrigKind::Sin) {
                d.trig.kind = TrigKind::Cos;
            } else {
                d.trig.kind = TrigKind::Sin;
                d.coeff = -d.coeff;
            }
            out.push_back(std::move(d));
        }
        for (size_t i = 0; i < t.syms.size(); ++i) {
            const auto [s, exp] = t.syms[i];
            if (symbols::kind(s) != SymKind::Placeholder) continue;
            Term d = t;
            d.coeff *= exp;
            d.syms[i].second -= 1;
            d.syms.emplace_back(symbols::placeholder_derivative(s, /*wrt_phi=*/true), 1);
            out.push_back(std::move(d));
        }
    }
    return Expr::from_terms(std::move(out));
}

Expr diff_sym(const Expr& e, SymId s) {
    std::vector<Term> out;
    for (const auto& t : e.terms()) {
        for (size_t i = 0; i < t.syms.size(); ++i) {
            if (t.syms[i].first != s) continue;
            Term d = t;
            d.coeff *= t.syms[i].second;
            d.syms[i].second -= 1;
            out.push_back(std::move(d));
        }
    }
    return Expr::from_terms(std::move(out));
}

Expr diff_partial(const Expr& e, const std::string& var) {
    if (var == "phi") return diff_phi(e);
    for (int v = 0; v < JET_COUNT; ++v) {
        if (var == jet_name(static_cast<JetVar>(v))) return diff_jet(e, static_cast<JetVar>(v));
    }
    auto id = symbols::find(var);
    if (!id) return Expr::zero();
    return diff_sym(e, *id);
}

Expr total_derivative(const Expr& e) {
    if (e.depends_on_jet(JET_UPPPP)) {
        throw ExprError("total derivative would exceed the supported jet chain (u'''' present)");
    }
    Expr out = diff_phi(e);
    for (int v = 0; v + 1 < JET_COUNT; ++v) {
        Expr d = diff_jet(e, static_cast<JetVar>(v));
        if (d.is_zero()) continue;
        out = out + Expr::jet(static_cast<JetVar>(v + 1)) * d;
    }
    return out;
}

// --- substitution -------------------------------------------------------------

Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings) {
    if (bindings.count("phi")) {
        throw ExprError("substituting phi is not supported");
    }
    std::array<const Expr*, JET_COUNT> jet_binding{};
    std::map<SymId, const Expr*> sym_binding;
    for (const auto& [name, value] : bindings) {
        bool is_jet = false;
        for (int v = 0; v < JET_COUNT; ++v) {
            if (name == jet_name(static_cast<JetVar>(v))) {
                jet_binding[v] = &value;
                is_jet = true;
                break;
            }
        }
        if (is_jet) continue;
        if (auto id = symbols::find(name)) sym_binding[*id] = &value;
        // An unknown name binds nothing; the expression cannot contain it.
    }

    std::vector<Term> result;
    for (const auto& t : e.terms()) {
        Term rest;
        rest.coeff = t.coeff;
        rest.phi_pow = t.phi_pow;
        rest.trig = t.trig;
        Expr factor = Expr::one();
        for (int v = 0; v < JET_COUNT; ++v) {
            if (t.jet[v] != 0 && jet_binding[v]) {
                factor = factor * Expr::pow(*jet_binding[v], t.jet[v]);
            } else {
                rest.jet[v] = t.jet[v];
            }
        }
        for (const auto& [s, exp] : t.syms) {
            if (auto it = sym_binding.find(s); it != sym_binding.end()) {
                factor = factor * Expr::pow(*it->second, exp);
            } else {
                rest.syms.emplace_back(s, exp);
            }
        }
        Expr piece = Expr::from_terms({rest}) * factor;
        for (const auto& pt : piece.terms()) result.push_back(pt);
    }
    return Expr::from_terms(std::move(result));
}

// --- numeric evaluation --------------------------------------------------------

double eval_numeric(const Expr& e, const std::map<std::string, double>& assignment) {
    auto lookup = [&](const std::string& name) {
        auto it = assignment.find(name);
        if (it == assignment.end()) throw ExprError("unbound symbol in evaluation: " + name);
        return it->second;
    };
    double total = 0.0;
    for (const auto& t : e.terms()) {
        double v = to_double(t.coeff);
        for (int jv = 0; jv < JET_COUNT; ++jv) {
            if (t.jet[jv] == 0) continue;
            double x = lookup(jet_name(static_cast<JetVar>(jv)));
            if (x == 0.0 && t.jet[jv] < 0) {
                throw ExprError(std::string("domain error: ") + jet_name(static_cast<JetVar>(jv)) +
                                " = 0 under a negative power");
            }
            v *= std::pow(x, t.jet[jv]);
        }
        for (const auto& [s, exp] : t.syms) {
            double x = lookup(symbols::name(s));
            if (x == 0.0 && exp < 0) {
                throw ExprError("domain error: " + symbols::name(s) + " = 0 under a negative power");
            }
            v *= std::pow(x, exp);
        }
        if (t.phi_pow != 0 || t.trig.kind != TrigKind::None) {
            double phi = lookup("phi");
            if (t.phi_pow != 0) v *= std::pow(phi, t.phi_pow);
            if (t.trig.kind != TrigKind::None) {
                double arg = t.trig.m * phi + to_double(t.trig.offset);
                v *= t.trig.kind == TrigKind::Sin ? std::sin(arg) : std::cos(arg);
            }
        }
        total += v;
    }
    return total;
}

// --- printing -------------------------------------------------------------------

namespace {

std::string trig_arg_str(const TrigAtom& a) {
    std::string out;
    if (a.m == 1) {
        out = "phi";
    } else if (a.m != 0) {
        out = std::to_string(a.m) + "*phi";
    }
    if (sgn(a.offset) != 0) {
        Rational off = a.offset;
        if (out.empty()) {
            out = to_string(off);
        } else if (sgn(off) > 0) {
            out += " + " + to_string(off);
        } else {
            out += " - " + to_string(Rational(-off));
        }
    }
    if (out.empty()) out = "0";
    return out;
}

/// Renders |t| as a product of factors (sign handled by the caller).
std::string term_magnitude_str(const Term& t) {
    std::vector<std::string> factors;
    Rational c = abs(t.coeff);
    for (const auto& [s, exp] : t.syms) {
        std::string f = symbols::name(s);
        if (exp != 1) f += "^" + std::to_string(exp);
        factors.push_back(std::move(f));
    }
    for (int v = 0; v < JET_COUNT; ++v) {
        if (t.jet[v] == 0) continue;
        std::string f = jet_name(static_cast<JetVar>(v));
        if (t.jet[v] != 1) f += "^" + std::to_string(t.jet[v]);
        factors.push_back(std::move(f));
    }
    if (t.phi_pow != 0) {
        std::string f = "phi";
        if (t.phi_pow != 1) f += "^" + std::to_string(t.phi_pow);
        factors.push_back(std::move(f));
    }
    if (t.trig.kind != TrigKind::None) {
        std::string f = t.trig.kind == TrigKind::Sin ? "sin(" : "cos(";
        f += trig_arg_str(t.trig) + ")";
        factors.push_back(std::move(f));
    }
    std::string coeff_str;
    if (factors.empty()) {
        return to_string(c);
    }
    if (!is_one(c)) {
        coeff_str = c.get_den() == 1 ? to_string(c) : "(" + to_string(c) + ")";
    }
    std::string out = coeff_str;
    for (const auto& f : factors) {
        if (!out.empty()) out += "*";
        out += f;
    }
    return out;
}

} // namespace

std::string Expr::str() const { return print_canonical(*this); }

std::string print_canonical(const Expr& e) {
    if (e.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : e.terms()) {
        if (first) {
            if (sgn(t.coeff) < 0) out += "-";
            first = false;
        } else {
            out += sgn(t.coeff) < 0 ? " - " : " + ";
        }
        out += term_magnitude_str(t);
    }
    return out;
}

} // namespace apsym
