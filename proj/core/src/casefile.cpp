#include "apsym/casefile.hpp"

#include "apsym/numfmt.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "apsym/parser.hpp"

namespace apsym {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool reserved_param_name(const std::string& n) {
    static const std::vector<std::string> exact = {"eps", "phi", "u",   "up",  "upp",
                                                   "uppp", "upppp", "sin", "cos"};
    if (std::find(exact.begin(), exact.end(), n) != exact.end()) return true;
    // Names the solver interns for itself: c1..c5, f<k>_..., xi<k>..., eta<k>...,
    // ga<k>...
    auto digit_after = [&](const std::string& prefix) {
        return n.size() > prefix.size() && n.compare(0, prefix.size(), prefix) == 0 &&
               std::isdigit(static_cast<unsigned char>(n[prefix.size()]));
    };
    if (n.size() == 2 && n[0] == 'c' && n[1] >= '1' && n[1] <= '5') return true;
    return digit_after("f") || digit_after("xi") || digit_after("eta") || digit_after("ga");
}

double parse_double(const std::string& v, const std::string& key) {
    try {
        size_t used = 0;
        double d = std::stod(v, &used);
        if (trim(v.substr(used)).empty()) return d;
    } catch (...) {
    }
    throw CaseError("invalid numeric value for '" + key + "': " + v);
}

int parse_int(const std::string& v, const std::string& key) {
    try {
        size_t used = 0;
        int d = std::stoi(v, &used);
        if (trim(v.substr(used)).empty()) return d;
    } catch (...) {
    }
    throw CaseError("invalid integer value for '" + key + "': " + v);
}

} // namespace

PerturbedLagrangian CaseFile::lagrangian() const {
    PerturbedLagrangian lag;
    lag.g = g;
    lag.params = params;
    lag.label = label;
    return lag;
}

std::map<std::string, double> CaseFile::numeric_params() const {
    std::map<std::string, double> out;
    for (const ParamDecl& p : params) {
        if (!p.default_value) {
            throw CaseError("parameter '" + p.name + "' has no numeric default");
        }
        out[p.name] = to_double(*p.default_value);
    }
    return out;
}

std::string CaseFile::serialize() const {
    std::ostringstream os;
    os << "[case]\n";
    os << "label = " << label << "\n\n";
    os << "[lagrangian]\n";
    for (int i = 0; i < 3; ++i) {
        os << "g" << i + 1 << " = " << g[static_cast<size_t>(i)].str() << "\n";
    }
    os << "\n[params]\n";
    for (const ParamDecl& p : params) {
        os << p.name;
        if (p.default_value) os << " = " << to_string(*p.default_value);
        os << "\n";
    }
    os << "\n[solver]\n";
    os << "basis_p = " << solver.basis_p << "\n";
    os << "basis_m = " << solver.basis_m << "\n";
    os << "u_min = " << solver.u_min << "\n";
    os << "u_max = " << solver.u_max << "\n";
    os << "deg_xi = " << solver.deg_xi << "\n";
    os << "deg_eta = " << solver.deg_eta << "\n";
    os << "deg_gauge = " << solver.deg_gauge << "\n";
    os << "low_xi = " << solver.low_xi << "\n";
    os << "low_eta = " << solver.low_eta << "\n";
    os << "low_gauge = " << solver.low_gauge << "\n";
    os << "\n[verify]\n";
    os << "eps = ";
    for (size_t i = 0; i < verify.eps_values.size(); ++i) {
        if (i) os << ", ";
        os << format_double(verify.eps_values[i]);
    }
    os << "\n";
    os << "u0 = " << format_double(verify.u0) << "\n";
    os << "up0 = " << format_double(verify.up0) << "\n";
    os << "phi_end = " << format_double(verify.phi_end) << "\n";
    os << "h = " << format_double(verify.h) << "\n";
    return os.str();
}

CaseFile CaseFile::parse_text(const std::string& text, const std::string& source_name) {
    CaseFile cf;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw CaseError(source_name + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail("malformed section header: " + line);
            section = line.substr(1, line.size() - 2);
            continue;
        }
        std::string key, value;
        if (auto eq = line.find('='); eq != std::string::npos) {
            key = trim(line.substr(0, eq));
            value = trim(line.substr(eq + 1));
        } else {
            key = line;
        }
        if (section == "case") {
            if (key == "label") {
                cf.label = value;
            } else {
                fail("unknown key in [case]: " + key);
            }
        } else if (section == "lagrangian") {
            int idx = -1;
            if (key == "g1") idx = 0;
            if (key == "g2") idx = 1;
            if (key == "g3") idx = 2;
            if (idx < 0) fail("unknown key in [lagrangian]: " + key);
            try {
                cf.g[static_cast<size_t>(idx)] = parse(value);
            } catch (const ParseError& e) {
                fail(std::string("in ") + key + ": " + e.what());
            }
        } else if (section == "params") {
            ParamDecl p;
            p.name = key;
            if (!value.empty()) {
                try {
                    p.default_value = rat_from_string(value);
                } catch (const std::domain_error& e) {
                    fail(e.what());
                }
            }
            cf.params.push_back(std::move(p));
        } else if (section == "solver") {
            if (key == "basis_p") cf.solver.basis_p = parse_int(value, key);
            else if (key == "basis_m") cf.solver.basis_m = parse_int(value, key);
            else if (key == "u_min") cf.solver.u_min = parse_int(value, key);
            else if (key == "u_max") cf.solver.u_max = parse_int(value, key);
            else if (key == "deg_xi") cf.solver.deg_xi = parse_int(value, key);
            else if (key == "deg_eta") cf.solver.deg_eta = parse_int(value, key);
            else if (key == "deg_gauge") cf.solver.deg_gauge = parse_int(value, key);
            else if (key == "low_xi") cf.solver.low_xi = parse_int(value, key);
            else if (key == "low_eta") cf.solver.low_eta = parse_int(value, key);
            else if (key == "low_gauge") cf.solver.low_gauge = parse_int(value, key);
            else fail("unknown key in [solver]: " + key);
        } else if (section == "verify") {
            if (key == "eps") {
                cf.verify.eps_values.clear();
                std::istringstream vs(value);
                std::string piece;
                while (std::getline(vs, piece, ',')) {
                    cf.verify.eps_values.push_back(parse_double(trim(piece), key));
                }
                if (cf.verify.eps_values.empty()) fail("empty eps list");
            } else if (key == "u0") {
                cf.verify.u0 = parse_double(value, key);
            } else if (key == "up0") {
                cf.verify.up0 = parse_double(value, key);
            } else if (key == "phi_end") {
                cf.verify.phi_end = parse_double(value, key);
            } else if (key == "h") {
                cf.verify.h = parse_double(value, key);
            } else {
                fail("unknown key in [verify]: " + key);
            }
        } else if (section.empty()) {
            fail("content before the first section header");
        } else {
            fail("unknown section [" + section + "]");
        }
    }
    cf.validate();
    return cf;
}

CaseFile CaseFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CaseError("cannot open case file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), path);
}

void CaseFile::validate() const {
    for (const ParamDecl& p : params) {
        if (reserved_param_name(p.name)) {
            throw CaseError("parameter name '" + p.name + "' is reserved");
        }
    }
    bool any = false;
    for (int i = 1; i <= 3; ++i) any = any || !g[static_cast<size_t>(i - 1)].is_zero();
    if (any && g[0].is_zero()) {
        throw CaseError("a perturbed case must have a nonzero g1 (orders start at eps^1)");
    }
    lagrangian().validate(); // jet-class invariant + declared parameters
    solver.validate();
    if (verify.h <= 0 || verify.phi_end <= 0) {
        throw CaseError("verify settings need h > 0 and phi_end > 0");
    }
    for (double e : verify.eps_values) {
        if (std::fabs(e) > 0.1) {
            throw CaseError("|eps| > 0.1 is outside the perturbative regime this tool targets");
        }
    }
}

namespace {

CaseFile make_case(const std::string& label, const std::string& g1, const std::string& g2,
                   const std::string& g3,
                   const std::vector<std::pair<std::string, std::string>>& params) {
    CaseFile cf;
    cf.label = label;
    cf.g[0] = parse(g1);
    cf.g[1] = parse(g2);
    cf.g[2] = parse(g3);
    for (const auto& [n, v] : params) {
        ParamDecl p;
        p.name = n;
        if (!v.empty()) p.default_value = rat_from_string(v);
        cf.params.push_back(std::move(p));
    }
    return cf;
}

std::map<std::string, CaseFile> make_builtins() {
    std::map<std::string, CaseFile> out;

    out["unperturbed"] = make_case("harmonic oscillator, no perturbation", "0", "0", "0", {});

    out["quadratic"] =
        make_case("quadratic polynomial perturbation",
                  "(1/2)*a0*u^2 + a1*u + a2", "0", "0", {{"a0", "1"}, {"a1", "1"}, {"a2", "1"}});

    // Reduced minimal-length Klein-Gordon oscillator: V0 = 1 is absorbed into
    // the unperturbed part and eps stands for -2*beta*h^2.
    out["gup"] = make_case("reduced Klein-Gordon oscillator, minimal-length correction"
                           " (V0 = 1, eps = -2*beta*h^2)",
                           "-(1/2)*upp^2", "0", "0", {});

    CaseFile sch = make_case("Schwarzschild orbital correction",
                             "-(1/2)*ell^-2*u - (1/2)*u^3", "0", "0", {{"ell", "2"}});
    sch.solver.low_xi = -1;
    sch.solver.low_eta = -2;
    sch.solver.low_gauge = -3;
    out["schwarzschild"] = sch;

    CaseFile orb = make_case(
        "embedded Reissner-Nordstrom orbital equation (charge and cosmic terms)",
        "-(1/2)*ell^-2*u - (1/2)*u^3",
        "(1/2)*kappa*ell^-2*u^2 + (1/2)*kappa*u^4 - (1/2)*rho*ell^-2*u^-2", "0",
        {{"ell", "2"}, {"kappa", "1"}, {"rho", "1"}});
    orb.solver.low_xi = -1;
    orb.solver.low_eta = -2;
    orb.solver.low_gauge = -3;
    // The u^-2 term blows up where u crosses zero, so the numeric check runs a
    // short arc with u bounded away from zero.
    orb.verify.phi_end = 1.0;
    orb.verify.h = 1e-4;
    out["orbital"] = orb;

    CaseFile rn = make_case("Reissner-Nordstrom orbital equation (charge terms only)",
                            "-(1/2)*ell^-2*u - (1/2)*u^3",
                            "(1/2)*kappa*ell^-2*u^2 + (1/2)*kappa*u^4", "0",
                            {{"ell", "2"}, {"kappa", "1"}});
    rn.solver.low_xi = -1;
    rn.solver.low_eta = -2;
    rn.solver.low_gauge = -3;
    out["reissner-nordstrom"] = rn;

    CaseFile bar = make_case("Bardeen orbital equation",
                             "-(1/2)*ell^-2*u - (1/2)*u^3", "0",
                             "(3/4)*kappa*u^5 + (3/4)*kappa*ell^-2*u^3",
                             {{"ell", "2"}, {"kappa", "1"}});
    bar.solver.low_xi = -1;
    bar.solver.low_eta = -2;
    bar.solver.low_gauge = -3;
    out["bardeen"] = bar;

    for (auto& [name, cf] : out) cf.validate();
    return out;
}

const std::map<std::string, CaseFile>& builtins() {
    static const std::map<std::string, CaseFile> b = make_builtins();
    return b;
}

} // namespace

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, cf] : builtins()) n.push_back(name);
        return n;
    }();
    return names;
}

bool is_builtin(const std::string& name) { return builtins().count(name) > 0; }

const CaseFile& builtin(const std::string& name) {
    auto it = builtins().find(name);
    if (it == builtins().end()) throw CaseError("unknown builtin case: " + name);
    return it->second;
}

CaseFile resolve_case(const std::string& name_or_path) {
    if (is_builtin(name_or_path)) return builtin(name_or_path);
    if (std::filesystem::exists(name_or_path)) return CaseFile::load(name_or_path);
    throw CaseError("'" + name_or_path +
                    "' is neither a builtin case nor an existing case file (see list-builtins)");
}

} // namespace apsym
