#pragma once

#include <map>
#include <string>
#include <vector>

#include "apsym/integrals.hpp"
#include "apsym/lagrangian.hpp"

namespace apsym {

struct IntegrationError : ExprError {
    using ExprError::ExprError;
};

/// Numerically integrated solution of the perturbed equation of motion.
struct Trajectory {
    std::vector<double> phi;
    std::vector<double> u;
    std::vector<double> up;
    double eps = 0.0;
    std::map<std::string, double> params;
    double h = 0.0;
    std::string method = "rk4";

    /// Delimiter-separated dump (phi, u, u' per line) for external plotting.
    std::string to_dsv() const;
};

/// Classical fixed-step 4th-order integration of u'' = F(phi, u, u', eps)
/// truncated at eps^order. Refuses u''-dependent perturbations
/// (HigherOrderEquation) and trips a singularity guard when |u| < 1e-6 while
/// the right-hand side carries negative u-powers.
Trajectory integrate_el(const PerturbedLagrangian& lag, int order, double eps,
                        const std::map<std::string, double>& params, double u0, double up0,
                        double phi_end, double h);

struct DriftResult {
    double max_drift = 0.0;
    std::vector<double> profile; // I(phi_i) along the grid

    std::string to_dsv(const Trajectory& t) const; // phi, u, u', I per line
};

/// max |I(phi) - I(0)| along the trajectory, with eps and parameters bound
/// numerically.
DriftResult conservation_drift(const FirstIntegral& integral, const Trajectory& t);

} // namespace apsym
