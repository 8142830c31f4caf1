#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "apsym/rational.hpp"
#include "apsym/symbol.hpp"

namespace apsym {

/// Jet coordinates u, u', u'', u''', u'''' treated as independent symbols.
/// The independent variable phi lives in its own slot of Term.
enum JetVar : int { JET_U = 0, JET_UP, JET_UPP, JET_UPPP, JET_UPPPP, JET_COUNT };

const char* jet_name(JetVar v);

enum class TrigKind : std::uint8_t { None = 0, Sin, Cos };

/// sin/cos of (m*phi + offset) with integer m >= 0 and rational offset.
struct TrigAtom {
    TrigKind kind = TrigKind::None;
    int m = 0;
    Rational offset = 0;

    bool operator==(const TrigAtom& o) const {
        return kind == o.kind && m == o.m && offset == o.offset;
    }
};

/// One canonical product: rational coefficient times a monomial in the jet
/// variables (u may carry negative powers), named symbols, a power of phi and
/// at most one trig factor. Symbol factors are kept sorted by name.
struct Term {
    Rational coeff = 0;
    std::array<int, JET_COUNT> jet{};
    std::vector<std::pair<SymId, int>> syms;
    int phi_pow = 0;
    TrigAtom trig;
};

/// Compares the monomial part only (not the coefficient); total order used for
/// canonical term sorting. Returns <0, 0, >0.
int compare_monomials(const Term& a, const Term& b);

struct ExprError : std::runtime_error {
    explicit ExprError(const std::string& what) : std::runtime_error(what) {}
};

/// Immutable symbolic expression in canonical form: an ordered, merged sum of
/// Terms. The empty sum is the unique zero. Structural equality of canonical
/// forms is semantic equality within the supported expression class.
class Expr {
public:
    Expr() = default; // zero

    static Expr zero() { return {}; }
    static Expr one() { return rational(Rational(1)); }
    static Expr rational(const Rational& q);
    static Expr integer(long n) { return rational(Rational(n)); }
    static Expr sym(SymId s);
    static Expr sym(const std::string& name) { return sym(symbols::param(name)); }
    static Expr jet(JetVar v);
    static Expr phi();
    static Expr trig(TrigKind kind, int m, const Rational& offset = Rational(0));
    static Expr sin_mphi(int m) { return trig(TrigKind::Sin, m); }
    static Expr cos_mphi(int m) { return trig(TrigKind::Cos, m); }

    /// Builds the canonical form of an arbitrary term list.
    static Expr from_terms(std::vector<Term> raw);

    const std::vector<Term>& terms() const;
    bool is_zero() const { return terms().empty(); }
    bool is_rational() const;
    Rational rational_value() const; // requires is_rational()

    bool operator==(const Expr& o) const;
    bool operator!=(const Expr& o) const { return !(*this == o); }

    Expr operator-() const;
    Expr scaled(const Rational& q) const;

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);

    /// Integer power. Negative exponents require a single trig-free term with
    /// no phi factor.
    static Expr pow(const Expr& base, int exponent);

    // --- queries -----------------------------------------------------------

    bool depends_on_jet(JetVar v) const;
    bool depends_on_phi() const; // explicit phi power or trig factor
    bool depends_on_sym(SymId s) const;
    int max_jet_power(JetVar v) const;  // 0 for no dependence
    int min_u_power() const;            // min exponent of u over terms that carry u
    int max_eps_power() const;

    /// Coefficient of eps^k (the symbol factor removed). Sum over k rebuilds
    /// the expression.
    Expr eps_coefficient(int k) const;
    /// Drops every term with eps power > k.
    Expr eps_truncated(int k) const;

    std::string str() const; // print_canonical

private:
    explicit Expr(std::shared_ptr<const std::vector<Term>> t) : terms_(std::move(t)) {}
    std::shared_ptr<const std::vector<Term>> terms_; // nullptr means zero
};

// --- operations -------------------------------------------------------------

/// Re-canonicalizes. Idempotent; the identity on Expr values (kept as the
/// public simplification entry point).
Expr simplify(const Expr& e);

/// Partial derivative treating phi, u, u', u'', ... as independent variables.
Expr diff_jet(const Expr& e, JetVar v);
Expr diff_phi(const Expr& e);
Expr diff_sym(const Expr& e, SymId s);
/// By name: "phi", "u", "up", ..., or any symbol name.
Expr diff_partial(const Expr& e, const std::string& var);

/// Total derivative along phi: D = d/dphi + u' d/du + u'' d/du' + ...
/// Introduces the next jet symbol for the highest one present; throws if the
/// expression already depends on the top of the supported jet chain.
Expr total_derivative(const Expr& e);

/// Simultaneous substitution of named symbols and jet variables, followed by
/// canonicalization. Substituting phi is not supported (trig arguments must
/// stay integer multiples of phi).
Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings);

/// IEEE-double evaluation. Every symbol, jet variable and (when used) phi must
/// be bound by name. u = 0 under a negative u-power is a domain error.
double eval_numeric(const Expr& e, const std::map<std::string, double>& assignment);

std::string print_canonical(const Expr& e);

} // namespace apsym
