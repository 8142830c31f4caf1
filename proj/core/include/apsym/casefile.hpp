#pragma once

#include <string>
#include <vector>

#include "apsym/lagrangian.hpp"
#include "apsym/solve.hpp"

namespace apsym {

struct CaseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VerifyConfig {
    std::vector<double> eps_values{1e-3, 5e-4};
    double u0 = 1.0;
    double up0 = 0.0;
    double phi_end = 62.831853071795862; // 20 pi
    double h = 1e-3;
};

/// Flat-text case description: label, the three perturbation terms in the
/// expression grammar, parameter declarations and solver/verify settings.
struct CaseFile {
    std::string label;
    std::array<Expr, 3> g{};
    std::vector<ParamDecl> params;
    AnsatzConfig solver;
    VerifyConfig verify;

    PerturbedLagrangian lagrangian() const;

    /// Highest order with G_i nonzero (0 for the unperturbed case).
    int max_order() const { return lagrangian().max_order(); }

    /// Parameter defaults as a numeric assignment; throws CaseError when a
    /// declared parameter has no default.
    std::map<std::string, double> numeric_params() const;

    /// Canonical serialization; parse_text(serialize()) round-trips and the
    /// output is byte-stable.
    std::string serialize() const;

    static CaseFile parse_text(const std::string& text, const std::string& source_name);
    static CaseFile load(const std::string& path);

    void validate() const;
};

const std::vector<std::string>& builtin_names();
bool is_builtin(const std::string& name);
const CaseFile& builtin(const std::string& name);

/// Loads a builtin by name or a case file by path.
CaseFile resolve_case(const std::string& name_or_path);

} // namespace apsym
