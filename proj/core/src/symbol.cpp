#include "apsym/symbol.hpp"

#include <deque>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace apsym::symbols {

namespace {

// Entries are append-only and a deque keeps references stable, so handing out
// const references after the lock is released is safe.
struct Table {
    std::mutex mu;
    std::deque<SymbolInfo> infos;
    std::unordered_map<std::string, SymId> by_name;

    static Table& instance() {
        static Table t;
        return t;
    }
};

SymId intern(const std::string& name, SymKind kind, SymId base, int d_phi, int d_u) {
    auto& t = Table::instance();
    std::lock_guard lock(t.mu);
    if (auto it = t.by_name.find(name); it != t.by_name.end()) {
        const auto& existing = t.infos[it->second];
        // Param and Unknown are interchangeable plain symbols (the solver keys
        // its unknowns by explicit lists, not by kind). Placeholders carry
        // derivative structure and must not be aliased.
        const bool plain = (existing.kind != SymKind::Placeholder) &&
                           (kind != SymKind::Placeholder);
        if (existing.kind != kind && !plain) {
            throw std::logic_error("symbol '" + name + "' already interned with a different kind");
        }
        return it->second;
    }
    SymId id = static_cast<SymId>(t.infos.size());
    t.infos.push_back(SymbolInfo{name, kind, base == 0 && kind == SymKind::Placeholder ? id : base,
                                 d_phi, d_u});
    t.by_name.emplace(name, id);
    return id;
}

std::string placeholder_name(const std::string& base, int d_phi, int d_u) {
    if (d_phi == 0 && d_u == 0) return base;
    std::string n = base + "_";
    for (int i = 0; i < d_phi; ++i) n += "phi";
    for (int i = 0; i < d_u; ++i) n += "u";
    return n;
}

} // namespace

SymId param(const std::string& name) { return intern(name, SymKind::Param, 0, 0, 0); }

SymId unknown(const std::string& name) { return intern(name, SymKind::Unknown, 0, 0, 0); }

SymId placeholder(const std::string& base_name) {
    return intern(base_name, SymKind::Placeholder, 0, 0, 0);
}

SymId placeholder_derivative(SymId s, bool wrt_phi) {
    SymbolInfo base_info = info(s);
    if (base_info.kind != SymKind::Placeholder) {
        throw std::logic_error("placeholder_derivative on non-placeholder symbol '" +
                               base_info.name + "'");
    }
    const std::string base_name = info(base_info.base).name;
    int d_phi = base_info.d_phi + (wrt_phi ? 1 : 0);
    int d_u = base_info.d_u + (wrt_phi ? 0 : 1);
    return intern(placeholder_name(base_name, d_phi, d_u), SymKind::Placeholder, base_info.base,
                  d_phi, d_u);
}

const SymbolInfo& info(SymId s) {
    auto& t = Table::instance();
    std::lock_guard lock(t.mu);
    if (s >= t.infos.size()) throw std::logic_error("invalid symbol id");
    return t.infos[s];
}

const std::string& name(SymId s) { return info(s).name; }
SymKind kind(SymId s) { return info(s).kind; }

std::optional<SymId> find(const std::string& name) {
    auto& t = Table::instance();
    std::lock_guard lock(t.mu);
    if (auto it = t.by_name.find(name); it != t.by_name.end()) return it->second;
    return std::nullopt;
}

SymId eps() {
    static SymId id = param("eps");
    return id;
}

} // namespace apsym::symbols
