#include "apsym/report.hpp"

#include "apsym/numfmt.hpp"

#include <cstdio>
#include <sstream>

namespace apsym {

namespace {

std::string json_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += "\"";
    return out;
}

std::string json_arr(const std::vector<std::string>& elems) {
    std::string out = "[";
    for (size_t i = 0; i < elems.size(); ++i) {
        if (i) out += ",";
        out += elems[i];
    }
    return out + "]";
}

std::string json_obj(const std::vector<std::pair<std::string, std::string>>& fields) {
    std::string out = "{";
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ",";
        out += json_quote(fields[i].first) + ":" + fields[i].second;
    }
    return out + "}";
}

std::string config_line(const AnsatzConfig& c) {
    std::ostringstream os;
    os << "basis: p <= " << c.basis_p << ", m <= " << c.basis_m << "; u-powers [" << c.u_min
       << ", " << c.u_max << "]; ansatz u-degrees xi [" << c.low_xi << ", " << c.deg_xi
       << "], eta [" << c.low_eta << ", " << c.deg_eta << "], gauge [" << c.low_gauge << ", "
       << c.deg_gauge << "]";
    return os.str();
}

std::string json_config(const AnsatzConfig& c) {
    return json_obj({{"basis_p", std::to_string(c.basis_p)},
                     {"basis_m", std::to_string(c.basis_m)},
                     {"u_min", std::to_string(c.u_min)},
                     {"u_max", std::to_string(c.u_max)},
                     {"deg_xi", std::to_string(c.deg_xi)},
                     {"deg_eta", std::to_string(c.deg_eta)},
                     {"deg_gauge", std::to_string(c.deg_gauge)},
                     {"low_xi", std::to_string(c.low_xi)},
                     {"low_eta", std::to_string(c.low_eta)},
                     {"low_gauge", std::to_string(c.low_gauge)}});
}

/// Integral of an exact or nontrivial vector at the stage order, or the
/// refusal message.
struct IntegralInfo {
    std::optional<FirstIntegral> integral;
    std::string note;
};

IntegralInfo integral_for(const PerturbedLagrangian& lag, const SpaceVector& v, int order) {
    IntegralInfo out;
    try {
        out.integral = first_integral(lag, v.generator(), v.gauge_term(), order);
    } catch (const HigherOrderLagrangian& e) {
        out.note = e.what();
    }
    return out;
}

} // namespace

std::optional<ReportFormat> parse_format(const std::string& s) {
    if (s == "text") return ReportFormat::Text;
    if (s == "machine") return ReportFormat::Machine;
    return std::nullopt;
}

std::string order0_combo_str(const std::array<Rational, 5>& c) {
    std::string out;
    for (int h = 0; h < 5; ++h) {
        const Rational& q = c[static_cast<size_t>(h)];
        if (sgn(q) == 0) continue;
        std::string mag;
        Rational a = abs(q);
        if (!is_one(a)) {
            mag = (a.get_den() == 1 ? to_string(a) : "(" + to_string(a) + ")") + "*";
        }
        mag += "X0^" + std::to_string(h + 1);
        if (out.empty()) {
            out = (sgn(q) < 0 ? "-" : "") + mag;
        } else {
            out += (sgn(q) < 0 ? " - " : " + ") + mag;
        }
    }
    return out.empty() ? "0" : out;
}

std::string conditions_report(const CaseFile& cf, const std::string& case_name, int order,
                              const Expr& residual, ReportFormat format) {
    if (format == ReportFormat::Machine) {
        return json_obj({{"command", json_quote("conditions")},
                         {"case", json_quote(case_name)},
                         {"label", json_quote(cf.label)},
                         {"order", std::to_string(order)},
                         {"config", json_config(cf.solver)},
                         {"residual", json_quote(residual.str())}}) +
               "\n";
    }
    std::ostringstream os;
    os << "case: " << cf.label << " (" << case_name << ")\n";
    os << "command: conditions, order " << order << "\n";
    os << config_line(cf.solver) << "\n\n";
    os << "order-" << order << " residual (zero iff the condition holds):\n";
    os << "  " << residual.str() << "\n";
    return os.str();
}

namespace {

std::string vector_json(const PerturbedLagrangian& lag, const SpaceVector& v, int order) {
    std::vector<std::pair<std::string, std::string>> fields;
    fields.emplace_back("class", json_quote(to_string(v.label)));
    fields.emplace_back("order0", json_quote(order0_combo_str(v.order0)));
    std::vector<std::string> c_list;
    for (const auto& q : v.order0) c_list.push_back(json_quote(to_string(q)));
    fields.emplace_back("c", json_arr(c_list));
    std::vector<std::string> xi_list, eta_list, gauge_list;
    for (const auto& g : v.corrections) {
        xi_list.push_back(json_quote(g.xi.str()));
        eta_list.push_back(json_quote(g.eta.str()));
    }
    for (const auto& a : v.gauges) gauge_list.push_back(json_quote(a.str()));
    fields.emplace_back("xi", json_arr(xi_list));
    fields.emplace_back("eta", json_arr(eta_list));
    fields.emplace_back("gauge", json_arr(gauge_list));
    if (v.label != VectorClass::TrivialLift) {
        IntegralInfo info = integral_for(lag, v, order);
        if (info.integral) {
            std::vector<std::string> parts;
            for (const Expr& p : info.integral->parts) parts.push_back(json_quote(p.str()));
            fields.emplace_back("integral", json_arr(parts));
        } else {
            fields.emplace_back("integral_error", json_quote(info.note));
        }
    }
    return json_obj(fields);
}

void vector_text(std::ostringstream& os, const PerturbedLagrangian& lag, const SpaceVector& v,
                 int order, int index) {
    os << "  [" << index << "] order-0: " << order0_combo_str(v.order0) << "\n";
    for (size_t k = 0; k < v.corrections.size(); ++k) {
        const auto& g = v.corrections[k];
        if (g.is_zero()) continue;
        os << "      eps^" << k + 1 << ": xi = " << g.xi.str() << ", eta = " << g.eta.str()
           << "\n";
    }
    for (size_t k = 0; k < v.gauges.size(); ++k) {
        if (v.gauges[k].is_zero()) continue;
        os << "      gauge A" << k << " = " << v.gauges[k].str() << "\n";
    }
    if (v.label != VectorClass::TrivialLift) {
        IntegralInfo info = integral_for(lag, v, order);
        if (info.integral) {
            for (size_t k = 0; k < info.integral->parts.size(); ++k) {
                const Expr& p = info.integral->parts[k];
                if (p.is_zero() && k > 0) continue;
                os << "      integral I" << k << " = " << p.str() << "\n";
            }
        } else {
            os << "      integral: unavailable (" << info.note << ")\n";
        }
    }
}

} // namespace

std::string solve_report(const CaseFile& cf, const std::string& case_name,
                         const std::vector<SolutionSpace>& stages, ReportFormat format) {
    PerturbedLagrangian lag = cf.lagrangian();
    if (format == ReportFormat::Machine) {
        std::vector<std::string> stage_objs;
        for (const auto& s : stages) {
            std::vector<std::string> vecs;
            for (const auto& v : s.vectors) vecs.push_back(vector_json(lag, v, s.order));
            stage_objs.push_back(json_obj(
                {{"order", std::to_string(s.order)},
                 {"unknowns", std::to_string(s.stats.unknown_count)},
                 {"rows", std::to_string(s.stats.row_count)},
                 {"dimension", std::to_string(s.stats.nullity)},
                 {"nontrivial", std::to_string(s.count(VectorClass::Nontrivial))},
                 {"exact", std::to_string(s.count(VectorClass::Exact))},
                 {"trivial_lift", std::to_string(s.count(VectorClass::TrivialLift))},
                 {"vectors", json_arr(vecs)}}));
        }
        return json_obj({{"command", json_quote("solve")},
                         {"case", json_quote(case_name)},
                         {"label", json_quote(cf.label)},
                         {"config", json_config(cf.solver)},
                         {"stages", json_arr(stage_objs)}}) +
               "\n";
    }

    std::ostringstream os;
    os << "case: " << cf.label << " (" << case_name << ")\n";
    os << "command: solve through order " << (stages.empty() ? 0 : stages.back().order) << "\n";
    os << config_line(cf.solver) << "\n";
    for (const auto& s : stages) {
        os << "\n== order " << s.order << " ==\n";
        os << "system: " << s.stats.unknown_count << " unknowns, " << s.stats.row_count
           << " rows; solution dimension " << s.stats.nullity << "\n";
        for (VectorClass cls :
             {VectorClass::Nontrivial, VectorClass::Exact, VectorClass::TrivialLift}) {
            auto group = s.of(cls);
            os << to_string(cls) << " (" << group.size() << ")"
               << (group.empty() ? "\n" : ":\n");
            int idx = 1;
            for (const SpaceVector* v : group) {
                if (cls == VectorClass::TrivialLift) {
                    // Compact single line: first nonzero component only.
                    os << "  [" << idx << "]";
                    bool described = false;
                    for (size_t k = 0; k < v->corrections.size() && !described; ++k) {
                        if (!v->corrections[k].is_zero()) {
                            os << " eps^" << k + 1 << ": xi = " << v->corrections[k].xi.str()
                               << ", eta = " << v->corrections[k].eta.str();
                            described = true;
                        }
                    }
                    if (!described) {
                        for (size_t k = 0; k < v->gauges.size() && !described; ++k) {
                            if (!v->gauges[k].is_zero()) {
                                os << " pure gauge: A" << k << " = " << v->gauges[k].str();
                                described = true;
                            }
                        }
                    }
                    os << "\n";
                } else {
                    vector_text(os, lag, *v, s.order, idx);
                }
                ++idx;
            }
        }
    }
    return os.str();
}

std::string verify_report(const CaseFile& cf, const std::string& case_name,
                          const VerifyData& data, ReportFormat format) {
    const auto& eps = data.config.eps_values;
    auto ratios = [&](const std::vector<double>& drifts) {
        std::vector<double> r;
        for (size_t i = 0; i + 1 < drifts.size(); ++i) {
            r.push_back(drifts[i + 1] != 0.0 ? drifts[i] / drifts[i + 1] : 0.0);
        }
        return r;
    };
    if (format == ReportFormat::Machine) {
        std::vector<std::string> rows;
        for (const auto& row : data.rows) {
            std::vector<std::string> d, ed, r, er;
            for (double v : row.drifts) d.push_back(format_double(v));
            for (double v : row.exact_drifts) ed.push_back(format_double(v));
            for (double v : ratios(row.drifts)) r.push_back(format_double(v));
            for (double v : ratios(row.exact_drifts)) er.push_back(format_double(v));
            rows.push_back(json_obj({{"name", json_quote(row.name)},
                                     {"generator", json_quote(row.generator)},
                                     {"drift", json_arr(d)},
                                     {"drift_ratio", json_arr(r)},
                                     {"exact_part_drift", json_arr(ed)},
                                     {"exact_part_ratio", json_arr(er)}}));
        }
        std::vector<std::string> eps_list;
        for (double e : eps) eps_list.push_back(format_double(e));
        return json_obj({{"command", json_quote("verify")},
                         {"case", json_quote(case_name)},
                         {"label", json_quote(cf.label)},
                         {"order", std::to_string(data.order)},
                         {"eps", json_arr(eps_list)},
                         {"u0", format_double(data.config.u0)},
                         {"up0", format_double(data.config.up0)},
                         {"phi_end", format_double(data.config.phi_end)},
                         {"h", format_double(data.config.h)},
                         {"rows", json_arr(rows)}}) +
               "\n";
    }

    std::ostringstream os;
    os << "case: " << cf.label << " (" << case_name << ")\n";
    os << "command: verify at order " << data.order << "\n";
    os << "trajectory: u(0) = " << format_double(data.config.u0)
       << ", u'(0) = " << format_double(data.config.up0)
       << ", phi in [0, " << format_double(data.config.phi_end) << "], h = "
       << format_double(data.config.h) << " (rk4)\n";
    os << "eps values:";
    for (double e : eps) os << " " << format_double(e);
    os << "\n\n";
    for (const auto& row : data.rows) {
        os << row.name << "  (generator " << row.generator << ")\n";
        os << "  max drift      :";
        for (double v : row.drifts) os << " " << format_double(v);
        os << "\n";
        auto r = ratios(row.drifts);
        if (!r.empty()) {
            os << "  drift ratios   :";
            for (double v : r) os << " " << format_double(v);
            os << "  (expect ~" << (1 << (data.order + 1)) << " per eps halving)\n";
        }
        os << "  exact-part only:";
        for (double v : row.exact_drifts) os << " " << format_double(v);
        os << "\n";
        auto er = ratios(row.exact_drifts);
        if (!er.empty()) {
            os << "  exact ratios   :";
            for (double v : er) os << " " << format_double(v);
            os << "\n";
        }
    }
    return os.str();
}

} // namespace apsym
