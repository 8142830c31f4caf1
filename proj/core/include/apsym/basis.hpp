#pragma once

#include <optional>
#include <string>
#include <vector>

#include "apsym/expr.hpp"

namespace apsym {

/// One basis function phi^p * {1 | sin(m phi) | cos(m phi)}.
struct BasisFn {
    int phi_pow = 0;
    TrigAtom trig;

    bool operator==(const BasisFn& o) const { return phi_pow == o.phi_pow && trig == o.trig; }
};

/// The finite phi-function family used for separation and for the generator /
/// gauge ansatz: phi^p * {1, sin(m phi), cos(m phi)} with p <= p_cap and
/// m <= m_cap. Includes the constants 1 and phi.
class PhiBasis {
public:
    static PhiBasis standard(int p_cap = 1, int m_cap = 2);

    int p_cap() const { return p_cap_; }
    int m_cap() const { return m_cap_; }
    int size() const { return static_cast<int>(fns_.size()); }
    const std::vector<BasisFn>& functions() const { return fns_; }

    /// Slot index for an exact (phi_pow, trig) shape; nullopt when the shape
    /// falls outside the family (caps exceeded or nonzero trig offset).
    std::optional<int> index_of(int phi_pow, const TrigAtom& trig) const;

    Expr to_expr(int index) const;
    std::string name(int index) const;

    /// Exact full-rank check of the sample-point matrix (2 * size points,
    /// rational trig values from a tan-half-angle parametrization).
    bool full_rank_audit() const;

private:
    int p_cap_ = 1;
    int m_cap_ = 2;
    std::vector<BasisFn> fns_;
};

} // namespace apsym
