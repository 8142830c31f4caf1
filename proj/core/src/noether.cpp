#include "apsym/noether.hpp"

namespace apsym {

namespace exact_basis {

const std::array<GeneratorPair, 5>& generators() {
    static const std::array<GeneratorPair, 5> gens = [] {
        Expr u = Expr::jet(JET_U);
        std::array<GeneratorPair, 5> g;
        g[0] = GeneratorPair{Expr::one(), Expr::zero()};
        g[1] = GeneratorPair{Expr::sin_mphi(2), u * Expr::cos_mphi(2)};
        g[2] = GeneratorPair{Expr::cos_mphi(2), -(u * Expr::sin_mphi(2))};
        g[3] = GeneratorPair{Expr::zero(), Expr::sin_mphi(1)};
        g[4] = GeneratorPair{Expr::zero(), Expr::cos_mphi(1)};
        return g;
    }();
    return gens;
}

const std::array<Expr, 5>& gauges() {
    static const std::array<Expr, 5> gauges_ = [] {
        Expr u = Expr::jet(JET_U);
        Expr u2 = Expr::pow(u, 2);
        std::array<Expr, 5> a;
        a[0] = Expr::zero();
        a[1] = u2 * Expr::sin_mphi(2);
        a[2] = u2 * Expr::cos_mphi(2);
        a[3] = -(u * Expr::cos_mphi(1));
        a[4] = u * Expr::sin_mphi(1);
        return a;
    }();
    return gauges_;
}

GeneratorPair combination(const std::array<Expr, 5>& coeffs) {
    GeneratorPair out;
    const auto& gens = generators();
    for (size_t h = 0; h < 5; ++h) {
        out.xi = out.xi + coeffs[h] * gens[h].xi;
        out.eta = out.eta + coeffs[h] * gens[h].eta;
    }
    return out;
}

} // namespace exact_basis

GeneratorPair ApproxGenerator::component(int k) const {
    if (k == 0) {
        std::array<Expr, 5> coeffs;
        for (size_t h = 0; h < 5; ++h) coeffs[h] = Expr::rational(order0[h]);
        return exact_basis::combination(coeffs);
    }
    if (k < 1 || k > max_order()) return {};
    return corrections[static_cast<size_t>(k - 1)];
}

Prolongation prolong(const Expr& xi, const Expr& eta, int depth) {
    if (depth < 1 || depth > 2) throw ExprError("prolongation depth must be 1 or 2");
    for (int v = JET_UP; v < JET_COUNT; ++v) {
        if (xi.depends_on_jet(static_cast<JetVar>(v)) ||
            eta.depends_on_jet(static_cast<JetVar>(v))) {
            throw ExprError("prolongation expects point-generator components in (phi, u)");
        }
    }
    Expr dxi = total_derivative(xi);
    Expr eta1 = total_derivative(eta) - Expr::jet(JET_UP) * dxi;
    Prolongation out{eta1, std::nullopt};
    if (depth == 2) {
        out.eta2 = total_derivative(eta1) - Expr::jet(JET_UPP) * dxi;
    }
    return out;
}

Expr apply_prolonged(const GeneratorPair& gen, const Expr& f) {
    Expr out = gen.xi * diff_phi(f) + gen.eta * diff_jet(f, JET_U);
    Expr f_up = diff_jet(f, JET_UP);
    Expr f_upp = diff_jet(f, JET_UPP);
    if (f_up.is_zero() && f_upp.is_zero()) return out;
    Prolongation pr = prolong(gen.xi, gen.eta, f_upp.is_zero() ? 1 : 2);
    out = out + pr.eta1 * f_up;
    if (!f_upp.is_zero()) out = out + *pr.eta2 * f_upp;
    return out;
}

EulerLagrangeResult euler_lagrange(const PerturbedLagrangian& lag, int order) {
    if (order < 0 || order > 3) throw ExprError("order must be in 0..3");
    // Euler operator d/du - D d/du' + D^2 d/du'' applied termwise.
    auto euler = [](const Expr& f) {
        Expr e = diff_jet(f, JET_U) - total_derivative(diff_jet(f, JET_UP));
        Expr f_upp = diff_jet(f, JET_UPP);
        if (!f_upp.is_zero()) e = e + total_derivative(total_derivative(f_upp));
        return e;
    };
    Expr residual = euler(PerturbedLagrangian::l0()); // u'' + u, with the +1 sign on u''
    Expr eps = Expr::sym(symbols::eps());
    for (int i = 1; i <= order; ++i) {
        if (lag.G(i).is_zero()) continue;
        residual = residual + Expr::pow(eps, i) * euler(lag.G(i));
    }
    EulerLagrangeResult out;
    out.higher_order = residual.depends_on_jet(JET_UPPP) || residual.depends_on_jet(JET_UPPPP);
    out.residual = residual;
    return out;
}

Expr el_solved_form(const PerturbedLagrangian& lag, int order) {
    EulerLagrangeResult el = euler_lagrange(lag, order);
    if (el.higher_order) {
        throw HigherOrderEquation(
            "the Euler-Lagrange equation is above second order (u''-dependent perturbation); "
            "no solved form u'' = F exists");
    }
    // residual = u'' + u + R(phi, u, u', u'', eps) with R of order >= eps^1.
    // Iterate u'' -> F through the eps orders; each pass is exact one order
    // further.
    Expr rest = el.residual - Expr::jet(JET_UPP); // u + eps-terms (may contain u'')
    Expr f = -Expr::jet(JET_U);
    for (int pass = 0; pass < order; ++pass) {
        f = (-substitute(rest, {{"upp", f}})).eps_truncated(order);
    }
    return f;
}

Expr residual_from_components(const PerturbedLagrangian& lag,
                              const std::vector<GeneratorPair>& components,
                              const std::vector<Expr>& gauges, int k) {
    if (static_cast<int>(components.size()) <= k || static_cast<int>(gauges.size()) <= k) {
        throw SequentialOrderError("residual at order " + std::to_string(k) +
                                   " needs generator and gauge components through that order");
    }
    Expr out;
    for (int j = 0; j <= k; ++j) {
        const Expr lagpart = (k - j == 0) ? PerturbedLagrangian::l0() : lag.G(k - j);
        if (lagpart.is_zero()) continue;
        const GeneratorPair& gen = components[static_cast<size_t>(j)];
        if (gen.is_zero()) continue;
        out = out + apply_prolonged(gen, lagpart) + total_derivative(gen.xi) * lagpart;
    }
    out = out - total_derivative(gauges[static_cast<size_t>(k)]);
    return out;
}

namespace {

void require_point_function(const Expr& e, const char* what) {
    for (int v = JET_UP; v < JET_COUNT; ++v) {
        if (e.depends_on_jet(static_cast<JetVar>(v))) {
            throw ExprError(std::string(what) +
                            " must depend on (phi, u) only (point symmetries): " + e.str());
        }
    }
}

} // namespace

Expr residual_order_k(const PerturbedLagrangian& lag, const ApproxGenerator& gen,
                      const GaugeTerm& gauge, int k) {
    if (k < 0 || k > 3) throw ExprError("order must be in 0..3");
    for (const GeneratorPair& g : gen.corrections) {
        require_point_function(g.xi, "xi");
        require_point_function(g.eta, "eta");
    }
    for (const Expr& a : gauge.parts) require_point_function(a, "the gauge term");
    if (gen.max_order() < k && k > 0) {
        throw SequentialOrderError("generator components missing below order " +
                                   std::to_string(k) + "; orders must be built sequentially");
    }
    if (static_cast<int>(gauge.parts.size()) <= k) {
        throw SequentialOrderError("gauge component missing at order " + std::to_string(k));
    }
    std::vector<GeneratorPair> comps;
    std::vector<Expr> gauges;
    for (int j = 0; j <= k; ++j) {
        comps.push_back(gen.component(j));
        gauges.push_back(gauge.component(j));
    }
    return residual_from_components(lag, comps, gauges, k);
}

} // namespace apsym
