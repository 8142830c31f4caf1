// apsym: approximate Noether symmetries and first integrals of perturbed
// oscillator Lagrangians L = 1/2(u^2 - u'^2) + eps G1 + eps^2 G2 + eps^3 G3.
//
// Subcommands:
//   list-builtins          names of the built-in cases
//   conditions CASE -k N   print the derived order-N symmetry condition
//   solve CASE -k N        solve the conditions sequentially through order N
//   verify CASE            integrate the equation of motion and report
//                          conservation drift of the approximate integrals
//
// Exit codes: 0 success, 2 input error, 3 basis overflow, 4 verification
// refused.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>

#include "apsym/casefile.hpp"
#include "apsym/parser.hpp"
#include "apsym/report.hpp"
#include "apsym/verify.hpp"

namespace {

constexpr int kExitInputError = 2;
constexpr int kExitBasisOverflow = 3;
constexpr int kExitVerifyRefused = 4;

struct CommonOpts {
    std::string case_name;
    std::string format = "text";
    std::optional<int> basis_p, basis_m, u_min, u_max;
    std::optional<int> deg_xi, deg_eta, deg_gauge;
    std::optional<int> low_xi, low_eta, low_gauge;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("case", o.case_name, "builtin case name or case-file path")->required();
    cmd->add_option("--format", o.format, "report format: text|machine")
        ->check(CLI::IsMember({"text", "machine"}));
    cmd->add_option("--basis-p", o.basis_p, "max power of the secular phi factor");
    cmd->add_option("--basis-m", o.basis_m, "max trig multiple m in sin/cos(m phi)");
    cmd->add_option("--u-min", o.u_min, "lowest u-power kept in separation");
    cmd->add_option("--u-max", o.u_max, "highest u-power kept in separation");
    cmd->add_option("--deg-xi", o.deg_xi, "upper u-degree of the xi ansatz");
    cmd->add_option("--deg-eta", o.deg_eta, "upper u-degree of the eta ansatz");
    cmd->add_option("--deg-gauge", o.deg_gauge, "upper u-degree of the gauge ansatz");
    cmd->add_option("--low-xi", o.low_xi, "lower u-degree of the xi ansatz");
    cmd->add_option("--low-eta", o.low_eta, "lower u-degree of the eta ansatz");
    cmd->add_option("--low-gauge", o.low_gauge, "lower u-degree of the gauge ansatz");
}

apsym::CaseFile resolve_with_overrides(const CommonOpts& o) {
    apsym::CaseFile cf = apsym::resolve_case(o.case_name);
    auto set = [](std::optional<int> v, int& target) {
        if (v) target = *v;
    };
    set(o.basis_p, cf.solver.basis_p);
    set(o.basis_m, cf.solver.basis_m);
    set(o.u_min, cf.solver.u_min);
    set(o.u_max, cf.solver.u_max);
    set(o.deg_xi, cf.solver.deg_xi);
    set(o.deg_eta, cf.solver.deg_eta);
    set(o.deg_gauge, cf.solver.deg_gauge);
    set(o.low_xi, cf.solver.low_xi);
    set(o.low_eta, cf.solver.low_eta);
    set(o.low_gauge, cf.solver.low_gauge);
    cf.solver.validate();
    return cf;
}

apsym::ReportFormat format_of(const CommonOpts& o) {
    return *apsym::parse_format(o.format);
}

int run_conditions(const CommonOpts& o, int order) {
    apsym::CaseFile cf = resolve_with_overrides(o);
    apsym::PerturbedLagrangian lag = cf.lagrangian();

    // Generic components: exact-basis coordinates c1..c5 at order 0,
    // uninterpreted functions of (phi, u) above.
    std::vector<apsym::GeneratorPair> comps;
    std::vector<apsym::Expr> gauges;
    std::array<apsym::Expr, 5> c;
    for (int h = 0; h < 5; ++h) {
        c[static_cast<size_t>(h)] =
            apsym::Expr::sym(apsym::symbols::unknown("c" + std::to_string(h + 1)));
    }
    comps.push_back(apsym::exact_basis::combination(c));
    gauges.push_back(apsym::Expr::sym(apsym::symbols::placeholder("ga0")));
    for (int j = 1; j <= order; ++j) {
        apsym::GeneratorPair gen;
        gen.xi = apsym::Expr::sym(apsym::symbols::placeholder("xi" + std::to_string(j)));
        gen.eta = apsym::Expr::sym(apsym::symbols::placeholder("eta" + std::to_string(j)));
        comps.push_back(gen);
        gauges.push_back(apsym::Expr::sym(apsym::symbols::placeholder("ga" + std::to_string(j))));
    }
    apsym::Expr residual = apsym::residual_from_components(lag, comps, gauges, order);
    std::cout << apsym::conditions_report(cf, o.case_name, order, residual, format_of(o));
    return 0;
}

int run_solve(const CommonOpts& o, int order) {
    apsym::CaseFile cf = resolve_with_overrides(o);
    auto stages = apsym::solve_sequential(cf.lagrangian(), order, cf.solver);
    std::cout << apsym::solve_report(cf, o.case_name, stages, format_of(o));
    return 0;
}

int run_verify(const CommonOpts& o) {
    apsym::CaseFile cf = resolve_with_overrides(o);
    apsym::PerturbedLagrangian lag = cf.lagrangian();
    const int order = cf.max_order();
    auto stages = apsym::solve_sequential(lag, order, cf.solver);
    const apsym::SolutionSpace& top = stages.back();

    // Verify the nontrivial integrals; with none present fall back to the
    // surviving exact ones (the unperturbed energy-style integrals).
    std::vector<const apsym::SpaceVector*> targets = top.of(apsym::VectorClass::Nontrivial);
    std::string group = "nontrivial";
    if (targets.empty()) {
        targets = top.of(apsym::VectorClass::Exact);
        group = "exact";
    }
    if (targets.empty()) {
        std::cerr << "verify: no certified generators with first integrals to check\n";
        return kExitVerifyRefused;
    }

    std::vector<apsym::FirstIntegral> integrals;
    for (const auto* v : targets) {
        integrals.push_back(apsym::first_integral(lag, v->generator(), v->gauge_term(), order));
    }

    std::map<std::string, double> params = cf.numeric_params();
    apsym::VerifyData data;
    data.order = order;
    data.config = cf.verify;
    data.rows.resize(integrals.size());
    for (size_t i = 0; i < integrals.size(); ++i) {
        data.rows[i].name = "I(" + group + " " + std::to_string(i + 1) + ")";
        data.rows[i].generator = apsym::order0_combo_str(targets[i]->order0);
    }
    for (double eps : cf.verify.eps_values) {
        apsym::Trajectory traj = apsym::integrate_el(lag, order, eps, params, cf.verify.u0,
                                                     cf.verify.up0, cf.verify.phi_end,
                                                     cf.verify.h);
        for (size_t i = 0; i < integrals.size(); ++i) {
            data.rows[i].drifts.push_back(apsym::conservation_drift(integrals[i], traj).max_drift);
            apsym::FirstIntegral exact_part;
            exact_part.parts = {integrals[i].component(0)};
            data.rows[i].exact_drifts.push_back(
                apsym::conservation_drift(exact_part, traj).max_drift);
        }
    }
    std::cout << apsym::verify_report(cf, o.case_name, data, format_of(o));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"approximate Noether symmetries of perturbed oscillator Lagrangians"};
    app.require_subcommand(1);

    auto* list_cmd = app.add_subcommand("list-builtins", "list built-in cases");

    CommonOpts cond_opts;
    int cond_order = 1;
    auto* cond_cmd =
        app.add_subcommand("conditions", "print the derived order-k symmetry condition");
    add_common(cond_cmd, cond_opts);
    cond_cmd->add_option("--order,-k", cond_order, "eps order (0..3)")
        ->check(CLI::Range(0, 3));

    CommonOpts solve_opts;
    int solve_order_arg = -1;
    auto* solve_cmd = app.add_subcommand("solve", "solve the conditions through order k");
    add_common(solve_cmd, solve_opts);
    solve_cmd->add_option("--order,-k", solve_order_arg,
                          "max eps order (default: the case's perturbation order)")
        ->check(CLI::Range(0, 3));

    CommonOpts verify_opts;
    auto* verify_cmd =
        app.add_subcommand("verify", "numeric conservation drift of the approximate integrals");
    add_common(verify_cmd, verify_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (list_cmd->parsed()) {
            for (const auto& n : apsym::builtin_names()) std::cout << n << "\n";
            return 0;
        }
        if (cond_cmd->parsed()) return run_conditions(cond_opts, cond_order);
        if (solve_cmd->parsed()) {
            int order = solve_order_arg;
            if (order < 0) order = apsym::resolve_case(solve_opts.case_name).max_order();
            return run_solve(solve_opts, order);
        }
        if (verify_cmd->parsed()) return run_verify(verify_opts);
    } catch (const apsym::BasisOverflow& e) {
        std::cerr << "basis overflow: " << e.what() << "\n  offending term: " << e.offending_term
                  << "\n";
        return kExitBasisOverflow;
    } catch (const apsym::HigherOrderEquation& e) {
        std::cerr << "verification refused: " << e.what() << "\n";
        return kExitVerifyRefused;
    } catch (const apsym::HigherOrderLagrangian& e) {
        std::cerr << "verification refused: " << e.what() << "\n";
        return kExitVerifyRefused;
    } catch (const apsym::IntegrationError& e) {
        std::cerr << "verification refused: " << e.what() << "\n";
        return kExitVerifyRefused;
    } catch (const apsym::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const apsym::CaseError& e) {
        std::cerr << "case error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const apsym::ExprError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
