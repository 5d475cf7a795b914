#pragma once

#include "oddjac/chart.hpp"
#include "oddjac/graded_poly.hpp"

namespace oddjac {

namespace detail {

inline GradedPoly poisson_homogeneous(const GradedPoly& F, Parity pf, const GradedPoly& G, const CotangentChart& cc) {
    GradedPoly r = GradedPoly::zero(cc.universe());
    for (std::size_t a = 0; a < cc.dimension(); ++a) {
        Parity pa = cc.parity(a);
        GradedPoly dF_dp = F.derivative(cc.momentum(a));
        if (!dF_dp.is_zero()) {
            GradedPoly dG_dx = G.derivative(cc.coordinate(a));
            if (!dG_dx.is_zero()) {
                int s = sign_pow(bit(pa) * bit(pf) + bit(pa));
                r += (dF_dp * dG_dx).scaled(Rational(s));
            }
        }
        GradedPoly dF_dx = F.derivative(cc.coordinate(a));
        if (!dF_dx.is_zero()) {
            GradedPoly dG_dp = G.derivative(cc.momentum(a));
            if (!dG_dp.is_zero()) {
                int s = -sign_pow(bit(pa) * bit(pf));
                r += (dF_dx * dG_dp).scaled(Rational(s));
            }
        }
    }
    return r;
}

}  // namespace detail

/// Canonical Poisson bracket on T*M with left derivatives:
///   {F,G} = (-1)^{A F + A} dF/dp_A dG/dx^A - (-1)^{A F} dF/dx^A dG/dp_A.
/// Inhomogeneous F is split by parity; the bracket is bilinear.
inline GradedPoly poisson_bracket(const GradedPoly& F, const GradedPoly& G, const CotangentChart& cc) {
    cc.require_function(F, "first Poisson argument");
    cc.require_function(G, "second Poisson argument");
    if (F.is_zero() || G.is_zero()) return GradedPoly::zero(cc.universe());
    if (auto pf = F.parity()) return detail::poisson_homogeneous(F.on(cc.universe()), *pf, G.on(cc.universe()), cc);
    auto [even, odd] = F.split_by_parity();
    return detail::poisson_homogeneous(even.on(cc.universe()), Parity::even, G.on(cc.universe()), cc) +
           detail::poisson_homogeneous(odd.on(cc.universe()), Parity::odd, G.on(cc.universe()), cc);
}

}  // namespace oddjac
