#pragma once

#include "oddjac/errors.hpp"
#include "oddjac/jacobi.hpp"
#include "oddjac/report.hpp"
#include "oddjac/vector_field.hpp"

#include <utility>

namespace oddjac {

namespace detail {

inline void require_even_action(const GradedPoly& s, const OddJacobiStructure& J) {
    J.chart().require_function(s, "s");
    if (!s.is_zero() && s.parity() != Parity::even) throw ValidationError("s must be even");
}

}  // namespace detail

/// Odd Jacobi structure together with an even candidate action s on the base chart.
class GaugeSystemCandidate {
public:
    GaugeSystemCandidate(OddJacobiStructure J, GradedPoly s) : J_(std::move(J)), s_(std::move(s)) {
        detail::require_even_action(s_, J_);
    }

    const OddJacobiStructure& structure() const noexcept { return J_; }
    const GradedPoly& action() const noexcept { return s_; }

private:
    OddJacobiStructure J_;
    GradedPoly s_;
};

/// Classical master equation [s,s]_J = 0.
inline VerificationReport is_maurer_cartan(const GradedPoly& s, const OddJacobiStructure& J) {
    detail::require_even_action(s, J);
    VerificationReport r;
    r.add("maurer_cartan", odd_jacobi_bracket(s, s, J), "[s,s]");
    return r;
}

inline VerificationReport is_q_closed(const GradedPoly& s, const OddJacobiStructure& J) {
    J.chart().require_function(s, "s");
    VerificationReport r;
    r.add("q_closed", J.apply_Q(s), "Q(s)");
    return r;
}

/// delta_s = X_s. The report records the master equation and nilpotency; when s is not
/// Maurer-Cartan the operator is still built and the nilpotency witness is the symbol
/// of [X_s,X_s] = -X_{[s,s]}.
struct BRSTOperator {
    SuperVectorField field;
    GradedPoly source;
    VerificationReport report;
};

inline BRSTOperator brst_operator(const GradedPoly& s, const OddJacobiStructure& J) {
    VerificationReport report = is_maurer_cartan(s, J);
    SuperVectorField X = hamiltonian_vector_field(s, J);
    report.add("nilpotent", symbol(vf_lie_bracket(X, X), J.cotangent()), "[delta_s,delta_s]");
    return BRSTOperator{std::move(X), s, std::move(report)};
}

/// Checks, in order: structure, maurer_cartan, q_closed, brst_jacobi, brst_invariance,
/// brst_nilpotent. The structure and brst_jacobi residuals are sums of residuals of
/// different momentum degree, so they vanish iff every part does.
inline VerificationReport verify_gauge_system(const GaugeSystemCandidate& c) {
    const OddJacobiStructure& J = c.structure();
    const GradedPoly& s = c.action();

    VerificationReport structure = verify_structure(J);
    GradedPoly structure_residual =
        structure.at("homological").residual + structure.at("invariance").residual + structure.at("compatibility").residual;

    BRSTOperator delta = brst_operator(s, J);
    const GradedPoly& mc = delta.report.at("maurer_cartan").residual;
    GradedPoly qs = J.apply_Q(s);
    VerificationReport jac = is_jacobi_vector_field(delta.field, J);

    VerificationReport r;
    r.add("structure", structure_residual, "{Q,Q} + {Q,S} + {S,S} + 2 Q S");
    r.add("maurer_cartan", mc, "[s,s]");
    std::string note = "Q(s)";
    if (mc.is_zero() && !qs.is_zero()) note += "; s is Maurer-Cartan but not Q-closed";
    r.add("q_closed", qs, note);
    r.add("brst_jacobi", jac.at("preserves_S").residual + jac.at("preserves_Q").residual, "{X_s,S} + {X_s,Q}");
    r.add("brst_invariance", apply(delta.field, s), "delta_s(s)");
    r.add("brst_nilpotent", delta.report.at("nilpotent").residual, "[delta_s,delta_s]");
    return r;
}

}  // namespace oddjac
