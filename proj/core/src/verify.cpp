#include "apsym/verify.hpp"

#include "apsym/numfmt.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace apsym {

namespace {

/// Expression specialized to (phi, u, u') with every other symbol bound; flat
/// term loop for tight evaluation inside the integrator.
struct Compiled {
    struct CTerm {
        double c;
        int pu;
        int pup;
        int phi_pow;
        TrigKind kind;
        int m;
        double offset;
    };
    std::vector<CTerm> terms;
    bool negative_u_power = false;

    double eval(double phi, double u, double up) const {
        double total = 0.0;
        for (const CTerm& t : terms) {
            double v = t.c;
            if (t.pu != 0) v *= std::pow(u, t.pu);
            if (t.pup != 0) v *= std::pow(up, t.pup);
            if (t.phi_pow != 0) v *= std::pow(phi, t.phi_pow);
            if (t.kind != TrigKind::None) {
                double arg = t.m * phi + t.offset;
                v *= t.kind == TrigKind::Sin ? std::sin(arg) : std::cos(arg);
            }
            total += v;
        }
        return total;
    }
};

Compiled compile(const Expr& e, const std::map<std::string, double>& bound) {
    Compiled out;
    for (const Term& t : e.terms()) {
        if (t.jet[JET_UPP] != 0 || t.jet[JET_UPPP] != 0 || t.jet[JET_UPPPP] != 0) {
            throw IntegrationError("expression depends on u'' or higher: " + e.str());
        }
        Compiled::CTerm ct{};
        ct.c = to_double(t.coeff);
        ct.pu = t.jet[JET_U];
        ct.pup = t.jet[JET_UP];
        ct.phi_pow = t.phi_pow;
        ct.kind = t.trig.kind;
        ct.m = t.trig.m;
        ct.offset = to_double(t.trig.offset);
        for (const auto& [s, exp] : t.syms) {
            auto it = bound.find(symbols::name(s));
            if (it == bound.end()) {
                throw IntegrationError("unbound parameter: " + symbols::name(s));
            }
            ct.c *= std::pow(it->second, exp);
        }
        if (ct.pu < 0) out.negative_u_power = true;
        out.terms.push_back(ct);
    }
    return out;
}

} // namespace

std::string Trajectory::to_dsv() const {
    std::ostringstream os;
    os << "phi\tu\tup\n";
    for (size_t i = 0; i < phi.size(); ++i) {
        os << format_double(phi[i]) << "\t" << format_double(u[i]) << "\t" << format_double(up[i])
           << "\n";
    }
    return os.str();
}

Trajectory integrate_el(const PerturbedLagrangian& lag, int order, double eps,
                        const std::map<std::string, double>& params, double u0, double up0,
                        double phi_end, double h) {
    if (h <= 0 || phi_end <= 0) throw IntegrationError("need h > 0 and phi_end > 0");
    Expr f_expr = el_solved_form(lag, order); // throws HigherOrderEquation for u''-dependent G
    std::map<std::string, double> bound = params;
    bound["eps"] = eps;
    Compiled f = compile(f_expr, bound);

    Trajectory t;
    t.eps = eps;
    t.params = params;
    t.h = h;
    const auto steps = static_cast<size_t>(std::llround(phi_end / h));
    t.phi.reserve(steps + 1);
    t.u.reserve(steps + 1);
    t.up.reserve(steps + 1);

    double phi = 0.0, u = u0, up = up0;
    double prev_u = u0;
    auto guard = [&](double uu, double at) {
        if (!f.negative_u_power) return;
        // |u| < 1e-6 near the pole, or a sign change that stepped across it.
        if (std::fabs(uu) < 1e-6 || uu * prev_u < 0.0) {
            throw IntegrationError("singularity guard: u reaches 0 near phi = " +
                                   format_double(at) + " with negative u-powers present");
        }
        prev_u = uu;
    };
    guard(u, phi);
    t.phi.push_back(phi);
    t.u.push_back(u);
    t.up.push_back(up);

    for (size_t i = 0; i < steps; ++i) {
        const double k1u = up;
        const double k1v = f.eval(phi, u, up);
        const double k2u = up + 0.5 * h * k1v;
        const double k2v = f.eval(phi + 0.5 * h, u + 0.5 * h * k1u, up + 0.5 * h * k1v);
        const double k3u = up + 0.5 * h * k2v;
        const double k3v = f.eval(phi + 0.5 * h, u + 0.5 * h * k2u, up + 0.5 * h * k2v);
        const double k4u = up + h * k3v;
        const double k4v = f.eval(phi + h, u + h * k3u, up + h * k3v);
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        up += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        phi = static_cast<double>(i + 1) * h;
        guard(u, phi);
        t.phi.push_back(phi);
        t.u.push_back(u);
        t.up.push_back(up);
    }
    return t;
}

DriftResult conservation_drift(const FirstIntegral& integral, const Trajectory& t) {
    std::map<std::string, double> bound = t.params;
    bound["eps"] = t.eps;
    Compiled f = compile(integral.as_series(), bound);

    DriftResult out;
    out.profile.reserve(t.phi.size());
    for (size_t i = 0; i < t.phi.size(); ++i) {
        out.profile.push_back(f.eval(t.phi[i], t.u[i], t.up[i]));
    }
    if (out.profile.empty()) return out;
    const double i0 = out.profile.front();
    for (double v : out.profile) {
        out.max_drift = std::max(out.max_drift, std::fabs(v - i0));
    }
    return out;
}

std::string DriftResult::to_dsv(const Trajectory& t) const {
    std::ostringstream os;
    os << "phi\tu\tup\tintegral\n";
    for (size_t i = 0; i < t.phi.size() && i < profile.size(); ++i) {
        os << format_double(t.phi[i]) << "\t" << format_double(t.u[i]) << "\t"
           << format_double(t.up[i]) << "\t" << format_double(profile[i]) << "\n";
    }
    return os.str();
}

} // namespace apsym
