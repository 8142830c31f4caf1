#include <benchmark/benchmark.h>

#include "apsym/casefile.hpp"
#include "apsym/integrals.hpp"
#include "apsym/parser.hpp"
#include "apsym/solve.hpp"
#include "apsym/verify.hpp"

namespace {

void BM_parse_canonicalize(benchmark::State& state) {
    const std::string text =
        "-(1/2)*up^2 + (1/2)*u^2 + a0*phi*cos(2*phi)*u^3 - sin(phi)*cos(phi)*up"
        " + (3/7)*u^-2*sin(2*phi)";
    for (auto _ : state) {
        benchmark::DoNotOptimize(apsym::parse(text));
    }
}
BENCHMARK(BM_parse_canonicalize);

void BM_residual_order1(benchmark::State& state) {
    apsym::CaseFile cf = apsym::builtin("quadratic");
    apsym::PerturbedLagrangian lag = cf.lagrangian();
    auto s0 = apsym::solve_sequential(lag, 0, cf.solver);
    auto monos = apsym::ansatz_monomials(lag, 1);
    for (auto _ : state) {
        apsym::OrderAnsatz fresh = apsym::build_ansatz(cf.solver, 1, monos);
        auto comps = s0[0].general.components();
        comps.push_back(fresh.gen);
        auto gauges = s0[0].general.gauges;
        gauges.push_back(fresh.gauge);
        benchmark::DoNotOptimize(apsym::residual_from_components(lag, comps, gauges, 1));
    }
}
BENCHMARK(BM_residual_order1);

void BM_solve_schwarzschild_order1(benchmark::State& state) {
    apsym::CaseFile cf = apsym::builtin("schwarzschild");
    apsym::PerturbedLagrangian lag = cf.lagrangian();
    for (auto _ : state) {
        benchmark::DoNotOptimize(apsym::solve_sequential(lag, 1, cf.solver));
    }
}
BENCHMARK(BM_solve_schwarzschild_order1);

void BM_solve_orbital_order2(benchmark::State& state) {
    apsym::CaseFile cf = apsym::builtin("orbital");
    apsym::PerturbedLagrangian lag = cf.lagrangian();
    for (auto _ : state) {
        benchmark::DoNotOptimize(apsym::solve_sequential(lag, 2, cf.solver));
    }
}
BENCHMARK(BM_solve_orbital_order2);

void BM_integrate_rk4(benchmark::State& state) {
    apsym::CaseFile cf = apsym::builtin("schwarzschild");
    apsym::PerturbedLagrangian lag = cf.lagrangian();
    std::map<std::string, double> params{{"ell", 2.0}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            apsym::integrate_el(lag, 1, 1e-3, params, 1.0, 0.0, 20.0 * 3.14159265358979, 1e-3));
    }
}
BENCHMARK(BM_integrate_rk4);

} // namespace

BENCHMARK_MAIN();
