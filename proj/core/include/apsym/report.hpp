#pragma once

#include <optional>
#include <string>
#include <vector>

#include "apsym/casefile.hpp"
#include "apsym/integrals.hpp"
#include "apsym/solve.hpp"
#include "apsym/verify.hpp"

namespace apsym {

enum class ReportFormat { Text, Machine };

std::optional<ReportFormat> parse_format(const std::string& s);

/// "X0^4 - 2*X0^1" style rendering of order-0 coordinates; "0" when empty.
std::string order0_combo_str(const std::array<Rational, 5>& c);

std::string conditions_report(const CaseFile& cf, const std::string& case_name, int order,
                              const Expr& residual, ReportFormat format);

std::string solve_report(const CaseFile& cf, const std::string& case_name,
                         const std::vector<SolutionSpace>& stages, ReportFormat format);

struct DriftRow {
    std::string name;        // integral label, e.g. "I(nontrivial 1)"
    std::string generator;   // order-0 combo of the generator it belongs to
    std::vector<double> drifts;       // per eps value, full integral
    std::vector<double> exact_drifts; // per eps value, order-0 truncation
};

struct VerifyData {
    int order = 0;
    VerifyConfig config;
    std::vector<DriftRow> rows;
};

std::string verify_report(const CaseFile& cf, const std::string& case_name,
                          const VerifyData& data, ReportFormat format);

} // namespace apsym
