#include "apsym/lagrangian.hpp"

#include <algorithm>

namespace apsym {

Expr PerturbedLagrangian::l0() {
    // 1/2 u^2 - 1/2 u'^2
    static const Expr l = Expr::pow(Expr::jet(JET_U), 2).scaled(rat(1, 2)) -
                          Expr::pow(Expr::jet(JET_UP), 2).scaled(rat(1, 2));
    return l;
}

const Expr& PerturbedLagrangian::G(int i) const {
    static const Expr zero;
    if (i < 1 || i > 3) return zero;
    return g[static_cast<size_t>(i - 1)];
}

int PerturbedLagrangian::max_order() const {
    for (int i = 3; i >= 1; --i) {
        if (!G(i).is_zero()) return i;
    }
    return 0;
}

bool PerturbedLagrangian::has_upp_dependence(int up_to_order) const {
    for (int i = 1; i <= std::min(up_to_order, 3); ++i) {
        if (G(i).depends_on_jet(JET_UPP)) return true;
    }
    return false;
}

void PerturbedLagrangian::validate() const {
    auto declared = [&](SymId s) {
        const std::string& n = symbols::name(s);
        return std::any_of(params.begin(), params.end(),
                           [&](const ParamDecl& p) { return p.name == n; });
    };
    for (int i = 1; i <= 3; ++i) {
        const Expr& gi = G(i);
        for (const Term& t : gi.terms()) {
            if (t.phi_pow != 0 || t.trig.kind != TrigKind::None) {
                throw ExprError("G" + std::to_string(i) + " must not depend on phi: " + gi.str());
            }
            if (t.jet[JET_UP] < 0 || t.jet[JET_UPP] < 0 || t.jet[JET_UPPP] != 0 ||
                t.jet[JET_UPPPP] != 0) {
                throw ExprError("G" + std::to_string(i) +
                                " must be polynomial in u', u'' and free of higher jets: " +
                                gi.str());
            }
            for (const auto& [s, e] : t.syms) {
                if (s == symbols::eps()) {
                    throw ExprError("G" + std::to_string(i) +
                                    " must not contain the reserved symbol eps");
                }
                if (symbols::kind(s) != SymKind::Param || !declared(s)) {
                    throw ExprError("undeclared parameter '" + symbols::name(s) + "' in G" +
                                    std::to_string(i));
                }
            }
        }
    }
}

} // namespace apsym
