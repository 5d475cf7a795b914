#pragma once

#include "oddjac/chart.hpp"
#include "oddjac/errors.hpp"
#include "oddjac/graded_poly.hpp"
#include "oddjac/poisson.hpp"
#include "oddjac/report.hpp"
#include "oddjac/vector_field.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace oddjac {

/// Odd function on T*M, homogeneous of degree two in the momenta:
/// S = 1/2 S^{AB}(x) p_B p_A.
class AlmostSchouten {
public:
    static AlmostSchouten create(const CotangentChart& cc, GradedPoly S) {
        cc.require_function(S, "S");
        if (!S.is_zero()) {
            auto p = S.parity();
            if (p != Parity::odd) throw ValidationError("S must be odd");
            for (const auto& [m, c] : S.terms())
                if (cc.fiber_degree(m) != 2) throw ValidationError("S must have degree two in the momenta");
        }
        return AlmostSchouten(cc, std::move(S).on(cc.universe()));
    }

    const GradedPoly& value() const noexcept { return value_; }
    const CotangentChart& chart() const noexcept { return cc_; }

private:
    AlmostSchouten(CotangentChart cc, GradedPoly S) : cc_(std::move(cc)), value_(std::move(S)) {}

    CotangentChart cc_;
    GradedPoly value_;
};

/// Pair (S, Q) of an almost Schouten structure and an odd vector field on the same
/// chart. Construction validates parities and degrees only; whether the pair satisfies
/// the three structure conditions is reported by verify_structure.
class OddJacobiStructure {
public:
    OddJacobiStructure(const AlmostSchouten& S, const SuperVectorField& Q)
        : cc_(S.chart()), S_(S.value()), Q_(Q) {
        require_same_chart(Q.chart(), cc_.base());
        if (Q.parity() != Parity::odd) throw ValidationError("Q must be an odd vector field");
        Q_symbol_ = symbol(Q_, cc_);
        const std::size_t n = cc_.dimension();
        upper_.reserve(n * n);
        // S^{AB} = d/dp_A d/dp_B S
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b)
                upper_.push_back(S_.derivative(cc_.momentum(b)).derivative(cc_.momentum(a)));
        }
    }

    static OddJacobiStructure create(const Chart& chart, const GradedPoly& S, const SuperVectorField& Q) {
        CotangentChart cc(chart);
        return OddJacobiStructure(AlmostSchouten::create(cc, S), Q);
    }

    const Chart& chart() const noexcept { return cc_.base(); }
    const CotangentChart& cotangent() const noexcept { return cc_; }
    const GradedPoly& S() const noexcept { return S_; }
    const SuperVectorField& Q() const noexcept { return Q_; }
    const GradedPoly& Q_symbol() const noexcept { return Q_symbol_; }

    /// S^{AB}, graded symmetric: S^{AB} = (-1)^{AB} S^{BA}.
    const GradedPoly& schouten_component(std::size_t a, std::size_t b) const {
        return upper_.at(a * cc_.dimension() + b);
    }

    GradedPoly apply_Q(const GradedPoly& f) const { return apply(Q_, f); }

private:
    CotangentChart cc_;
    GradedPoly S_;
    SuperVectorField Q_;
    GradedPoly Q_symbol_;
    std::vector<GradedPoly> upper_;
};

namespace detail {

inline GradedPoly pb(const GradedPoly& a, const GradedPoly& b, const OddJacobiStructure& J) {
    return poisson_bracket(a, b, J.cotangent());
}

inline GradedPoly homological_coordinate(const OddJacobiStructure& J) {
    const auto& cc = J.cotangent();
    GradedPoly r = GradedPoly::zero(cc.universe());
    for (std::size_t a = 0; a < cc.dimension(); ++a)
        for (std::size_t b = 0; b < cc.dimension(); ++b)
            r += J.Q().component(b) * J.Q().component(a).derivative(cc.coordinate(b)) * cc.p(a);
    return r.scaled(Rational(2));
}

inline GradedPoly invariance_coordinate(const OddJacobiStructure& J) {
    const auto& cc = J.cotangent();
    const std::size_t n = cc.dimension();
    GradedPoly r = GradedPoly::zero(cc.universe());
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            GradedPoly coeff = GradedPoly::zero(cc.universe());
            for (std::size_t c = 0; c < n; ++c) {
                coeff += (J.Q().component(c) * J.schouten_component(b, a).derivative(cc.coordinate(c)))
                             .scaled(Rational(1, 2));
                coeff += (J.schouten_component(b, c) * J.Q().component(a).derivative(cc.coordinate(c)))
                             .scaled(Rational(sign_pow(bit(cc.parity(b)))));
            }
            if (!coeff.is_zero()) r += coeff * cc.p(a) * cc.p(b);
        }
    }
    return r;
}

inline GradedPoly compatibility_coordinate(const OddJacobiStructure& J) {
    const auto& cc = J.cotangent();
    const std::size_t n = cc.dimension();
    GradedPoly r = GradedPoly::zero(cc.universe());
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const GradedPoly& sba = J.schouten_component(b, a);
            for (std::size_t c = 0; c < n; ++c) {
                GradedPoly coeff = J.Q().component(c) * sba;
                for (std::size_t d = 0; d < n; ++d)
                    coeff += J.schouten_component(c, d) * sba.derivative(cc.coordinate(d));
                if (!coeff.is_zero())
                    r += (coeff * cc.p(a) * cc.p(b) * cc.p(c)).scaled(Rational(sign_pow(bit(cc.parity(c)))));
            }
        }
    }
    return r;
}

}  // namespace detail

/// Residuals of the homological, invariance and compatibility conditions
///   {Q^,Q^} = 0,   {Q^,S} = 0,   {S,S} + 2 Q^ S = 0,
/// plus the same three residuals evaluated from their coordinate expansions in S^{AB}, Q^A.
inline VerificationReport verify_structure(const OddJacobiStructure& J) {
    const GradedPoly& Qh = J.Q_symbol();
    const GradedPoly& S = J.S();
    GradedPoly homological = detail::pb(Qh, Qh, J);
    GradedPoly invariance = detail::pb(Qh, S, J);
    GradedPoly compatibility = detail::pb(S, S, J) + (Qh * S).scaled(Rational(2));

    GradedPoly homological_c = detail::homological_coordinate(J);
    GradedPoly invariance_c = detail::invariance_coordinate(J);
    GradedPoly compatibility_c = detail::compatibility_coordinate(J);
    if (!(homological == homological_c) || !(invariance == invariance_c) || !(compatibility == compatibility_c))
        throw std::logic_error("coordinate expansion of the structure conditions disagrees with the Poisson form");

    VerificationReport r;
    r.add("homological", homological, "{Q,Q}");
    r.add("invariance", invariance, "{Q,S}");
    r.add("compatibility", compatibility, "{S,S} + 2 Q S");
    r.add("homological_coordinate", homological_c, "2 Q^B dQ^A/dx^B p_A");
    r.add("invariance_coordinate", invariance_c, "(1/2 Q^C dS^{BA}/dx^C + (-1)^B S^{BC} dQ^A/dx^C) p_A p_B");
    r.add("compatibility_coordinate", compatibility_c, "(-1)^C (S^{CD} dS^{BA}/dx^D + Q^C S^{BA}) p_A p_B p_C");
    return r;
}

inline VerificationReport verify_structure(const AlmostSchouten& S, const SuperVectorField& Q) {
    return verify_structure(OddJacobiStructure(S, Q));
}

/// Nested-bracket form: [f,g]_J = (-1)^{f+1} ( {{S,f},g} - {Q^, fg} ).
inline GradedPoly odd_jacobi_bracket_nested(const GradedPoly& f, const GradedPoly& g, const OddJacobiStructure& J) {
    J.chart().require_function(f, "bracket argument f");
    J.chart().require_function(g, "bracket argument g");
    auto one_parity = [&](const GradedPoly& fp, Parity pf) {
        if (fp.is_zero()) return GradedPoly::zero(J.cotangent().universe());
        GradedPoly inner = detail::pb(detail::pb(J.S(), fp, J), g, J) - detail::pb(J.Q_symbol(), fp * g, J);
        return inner.scaled(Rational(sign_pow(bit(pf) + 1)));
    };
    if (auto pf = f.parity()) return one_parity(f, *pf);
    auto [even, odd] = f.split_by_parity();
    return one_parity(even, Parity::even) + one_parity(odd, Parity::odd);
}

/// Coordinate form:
///   [f,g]_J = (-1)^{(B+1)f+1} S^{BA} df/dx^A dg/dx^B + (-1)^f Q(f) g + f Q(g).
inline GradedPoly odd_jacobi_bracket_coordinate(const GradedPoly& f, const GradedPoly& g,
                                                const OddJacobiStructure& J) {
    J.chart().require_function(f, "bracket argument f");
    J.chart().require_function(g, "bracket argument g");
    const auto& cc = J.cotangent();
    const std::size_t n = cc.dimension();
    auto one_parity = [&](const GradedPoly& fp, Parity pf) {
        GradedPoly r = GradedPoly::zero(cc.universe());
        if (fp.is_zero()) return r;
        std::vector<GradedPoly> dg;
        dg.reserve(n);
        for (std::size_t b = 0; b < n; ++b) dg.push_back(g.derivative(cc.coordinate(b)));
        for (std::size_t a = 0; a < n; ++a) {
            GradedPoly dfa = fp.derivative(cc.coordinate(a));
            if (dfa.is_zero()) continue;
            for (std::size_t b = 0; b < n; ++b) {
                const GradedPoly& sba = J.schouten_component(b, a);
                if (sba.is_zero() || dg[b].is_zero()) continue;
                int s = sign_pow((bit(cc.parity(b)) + 1) * bit(pf) + 1);
                r += (sba * dfa * dg[b]).scaled(Rational(s));
            }
        }
        r += (J.apply_Q(fp) * g).scaled(Rational(sign_pow(bit(pf))));
        r += fp * J.apply_Q(g);
        return r;
    };
    if (auto pf = f.parity()) return one_parity(f, *pf);
    auto [even, odd] = f.split_by_parity();
    return one_parity(even, Parity::even) + one_parity(odd, Parity::odd);
}

/// Odd Jacobi bracket on functions of M. Both the nested-Poisson definition and its
/// coordinate expansion are evaluated; disagreement is an internal error.
inline GradedPoly odd_jacobi_bracket(const GradedPoly& f, const GradedPoly& g, const OddJacobiStructure& J) {
    GradedPoly nested = odd_jacobi_bracket_nested(f, g, J);
    GradedPoly coordinate = odd_jacobi_bracket_coordinate(f, g, J);
    if (!(nested == coordinate))
        throw std::logic_error("odd Jacobi bracket: nested and coordinate forms disagree");
    return nested;
}

/// Hamiltonian vector field of a homogeneous f:
///   X_f = (-1)^{A f + 1} S^{AB} df/dx^B d/dx^A + (-1)^f f Q^A d/dx^A,
/// cross-checked against X_f(x^A) = (-1)^f [f, x^A]_J - Q(f) x^A.
inline SuperVectorField hamiltonian_vector_field(const GradedPoly& f, const OddJacobiStructure& J) {
    J.chart().require_function(f, "f");
    Parity pf = f.require_parity("f");
    const auto& cc = J.cotangent();
    const std::size_t n = cc.dimension();
    std::vector<GradedPoly> df;
    df.reserve(n);
    for (std::size_t b = 0; b < n; ++b) df.push_back(f.derivative(cc.coordinate(b)));
    GradedPoly Qf = J.apply_Q(f);

    std::vector<GradedPoly> comps;
    comps.reserve(n);
    for (std::size_t a = 0; a < n; ++a) {
        GradedPoly c = GradedPoly::zero(cc.universe());
        for (std::size_t b = 0; b < n; ++b)
            if (!df[b].is_zero() && !J.schouten_component(a, b).is_zero())
                c += J.schouten_component(a, b) * df[b];
        c = c.scaled(Rational(sign_pow(bit(cc.parity(a)) * bit(pf) + 1)));
        c += (f * J.Q().component(a)).scaled(Rational(sign_pow(bit(pf))));

        GradedPoly xa = cc.x(a);
        GradedPoly expected =
            odd_jacobi_bracket(f, xa, J).scaled(Rational(sign_pow(bit(pf)))) - Qf * xa;
        if (!(c == expected)) throw std::logic_error("Hamiltonian vector field: coordinate display disagrees");
        comps.push_back(std::move(c));
    }
    return SuperVectorField(J.chart(), std::move(comps), pf + Parity::odd);
}

/// X is a Jacobi vector field iff {X^, S} = 0 and {X^, Q^} = 0.
inline VerificationReport is_jacobi_vector_field(const SuperVectorField& X, const OddJacobiStructure& J) {
    require_same_chart(X.chart(), J.chart());
    GradedPoly Xh = symbol(X, J.cotangent());
    VerificationReport r;
    r.add("preserves_S", detail::pb(Xh, J.S(), J), "{X,S}");
    r.add("preserves_Q", detail::pb(Xh, J.Q_symbol(), J), "{X,Q}");
    return r;
}

}  // namespace oddjac
