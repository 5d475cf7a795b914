#pragma once

#include "oddjac/chart.hpp"
#include "oddjac/errors.hpp"
#include "oddjac/graded_poly.hpp"
#include "oddjac/vector_field.hpp"

#include <vector>

namespace oddjac {

/// Pullback of a form along the fibre-wise map phi_S : T*M -> Pi TM of an odd S of
/// fibre degree at most two: d_z goes to (-1)^{z} dS/dp_z, base coordinates are fixed.
inline GradedPoly phi_S_pullback(const GradedPoly& S, const GradedPoly& form, const CotangentChart& cc,
                                 const AntitangentChart& ac) {
    require_same_chart(cc.base(), ac.base());
    cc.require_function(S, "S");
    if (!ac.owns(form)) throw ValidationError("form must live on the antitangent chart of '" + ac.base().name() + "'");
    if (!S.is_zero() && S.parity() != Parity::odd) throw ValidationError("phi_S needs an odd S");
    for (const auto& [m, c] : S.terms())
        if (cc.fiber_degree(m) > 2) throw ValidationError("phi_S needs S of fibre degree at most two");

    const std::size_t n = cc.dimension();
    std::vector<GradedPoly> image;
    image.reserve(n);
    for (std::size_t a = 0; a < n; ++a)
        image.push_back(S.derivative(cc.momentum(a)).scaled(Rational(sign_pow(bit(cc.parity(a))))).on(cc.universe()));

    GradedPoly r = GradedPoly::zero(cc.universe());
    for (const auto& [m, c] : form.terms()) {
        GradedPoly t = GradedPoly::constant(c, cc.universe());
        for (const auto& f : m.factors()) {
            const GradedPoly& base =
                ac.is_fiber(f.var) ? image[f.var.index - n] : cc.x(f.var.index);
            for (std::uint32_t e = 0; e < f.exponent; ++e) t = t * base;
            if (t.is_zero()) break;
        }
        r += t;
    }
    return r;
}

/// Interior product with X, acting on forms as (-1)^{X} X^z d/d(d_z). For even X this is
/// the usual odd derivation with i_X(dz) = X^z; the sign for odd X makes i_Q alpha = 1
/// on the odd contact form with Q = -d/dtau.
inline GradedPoly interior_product(const SuperVectorField& X, const GradedPoly& form, const AntitangentChart& ac) {
    require_same_chart(X.chart(), ac.base());
    if (!ac.owns(form)) throw ValidationError("form must live on the antitangent chart of '" + ac.base().name() + "'");
    GradedPoly r = GradedPoly::zero(ac.universe());
    for (std::size_t a = 0; a < ac.dimension(); ++a) {
        if (X.component(a).is_zero()) continue;
        GradedPoly d = form.derivative(ac.fiber(a));
        if (!d.is_zero()) r += X.component(a) * d;
    }
    return r.scaled(Rational(sign_pow(bit(X.parity()))));
}

}  // namespace oddjac
