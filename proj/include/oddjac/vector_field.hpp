#pragma once

#include "oddjac/chart.hpp"
#include "oddjac/errors.hpp"
#include "oddjac/graded_poly.hpp"
#include "oddjac/poisson.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oddjac {

/// Homogeneous vector field X = X^A d/dx^A with polynomial components over a chart.
/// Component A has parity (declared parity + parity of x^A).
class SuperVectorField {
public:
    SuperVectorField() = default;

    SuperVectorField(Chart chart, std::vector<GradedPoly> components, Parity declared)
        : chart_(std::move(chart)), components_(std::move(components)), parity_(declared) {
        if (components_.size() != chart_.dimension())
            throw ValidationError("vector field needs one component per coordinate of '" + chart_.name() + "'");
        for (std::size_t a = 0; a < components_.size(); ++a) {
            auto& c = components_[a];
            chart_.require_function(c, "component " + chart_.coordinate_name(a));
            if (c.is_zero()) {
                c = GradedPoly::zero(chart_.universe());
                continue;
            }
            auto pc = c.parity();
            if (!pc) throw ValidationError("component " + chart_.coordinate_name(a) + " is inhomogeneous");
            if (*pc + chart_.parity(a) != declared)
                throw ValidationError("component " + chart_.coordinate_name(a) + " makes the field " +
                                      std::string(to_string(*pc + chart_.parity(a))) + ", expected " +
                                      std::string(to_string(declared)));
        }
    }

    static SuperVectorField zero(const Chart& chart, Parity declared) {
        return SuperVectorField(chart, std::vector<GradedPoly>(chart.dimension(), GradedPoly::zero(chart.universe())),
                                declared);
    }

    /// Components given by coordinate name; unnamed components are zero. The parity is
    /// inferred from the first nonzero component (`fallback` for the zero field).
    static SuperVectorField from_components(const Chart& chart, const std::map<std::string, GradedPoly>& named,
                                            Parity fallback = Parity::odd) {
        std::vector<GradedPoly> comps(chart.dimension(), GradedPoly::zero(chart.universe()));
        std::optional<Parity> declared;
        for (const auto& [name, poly] : named) {
            auto i = chart.index_of(name);
            comps[i] = poly;
            if (!declared && !poly.is_zero()) {
                auto pc = poly.parity();
                if (!pc) throw ValidationError("component " + name + " is inhomogeneous");
                declared = *pc + chart.parity(i);
            }
        }
        return SuperVectorField(chart, std::move(comps), declared.value_or(fallback));
    }

    const Chart& chart() const noexcept { return chart_; }
    Parity parity() const noexcept { return parity_; }
    const std::vector<GradedPoly>& components() const noexcept { return components_; }
    const GradedPoly& component(std::size_t a) const { return components_.at(a); }

    bool is_zero() const {
        for (const auto& c : components_)
            if (!c.is_zero()) return false;
        return true;
    }

    SuperVectorField operator-() const {
        SuperVectorField r = *this;
        for (auto& c : r.components_) c = -c;
        return r;
    }

    /// Equal as derivations: same chart and components (the zero field equals itself at
    /// either parity).
    friend bool operator==(const SuperVectorField& a, const SuperVectorField& b) {
        if (!(a.chart_ == b.chart_)) return false;
        if (a.is_zero() && b.is_zero()) return true;
        return a.parity_ == b.parity_ && a.components_ == b.components_;
    }

private:
    Chart chart_;
    std::vector<GradedPoly> components_;
    Parity parity_ = Parity::even;
};

inline void require_same_chart(const Chart& a, const Chart& b) {
    if (!(a == b)) throw ChartMismatch("charts '" + a.name() + "' and '" + b.name() + "' differ");
}

/// Principal symbol X^ = X^A p_A on T*M.
inline GradedPoly symbol(const SuperVectorField& X, const CotangentChart& cc) {
    require_same_chart(X.chart(), cc.base());
    GradedPoly r = GradedPoly::zero(cc.universe());
    for (std::size_t a = 0; a < cc.dimension(); ++a)
        if (!X.component(a).is_zero()) r += X.component(a) * cc.p(a);
    return r;
}

/// X(f) = X^A df/dx^A.
inline GradedPoly apply(const SuperVectorField& X, const GradedPoly& f) {
    if (!compatible(f.universe(), X.chart().universe())) throw ChartMismatch("function and vector field charts differ");
    GradedPoly r = GradedPoly::zero(unify(f.universe(), X.chart().universe()));
    for (std::size_t a = 0; a < X.chart().dimension(); ++a) {
        if (X.component(a).is_zero()) continue;
        GradedPoly d = f.derivative(X.chart().coordinate(a));
        if (!d.is_zero()) r += X.component(a) * d;
    }
    return r;
}

/// L_X F = {X^, F} on functions of T*M.
inline GradedPoly lie_derivative(const SuperVectorField& X, const GradedPoly& F, const CotangentChart& cc) {
    return poisson_bracket(symbol(X, cc), F, cc);
}

/// Reads a vector field back from a symbol linear in the momenta. A nonlinear symbol is
/// an internal error.
inline SuperVectorField field_from_symbol(const GradedPoly& sym, const CotangentChart& cc, Parity declared) {
    std::vector<GradedPoly> comps;
    comps.reserve(cc.dimension());
    for (std::size_t a = 0; a < cc.dimension(); ++a) {
        // d(X^A p_A)/dp_A = (-1)^{A (X + A)} X^A
        int s = sign_pow(bit(cc.parity(a)) * (bit(declared) + bit(cc.parity(a))));
        GradedPoly c = sym.derivative(cc.momentum(a)).scaled(Rational(s));
        if (!cc.base().owns(c)) throw std::logic_error("symbol is not linear in the momenta");
        comps.push_back(c.on(cc.base().universe()));
    }
    SuperVectorField X(cc.base(), std::move(comps), declared);
    if (!(symbol(X, cc) == sym)) throw std::logic_error("symbol is not linear in the momenta");
    return X;
}

/// Graded commutator [X,Y] = XY - (-1)^{XY} YX, computed through symbols:
/// the field whose symbol is {X^, Y^}.
inline SuperVectorField vf_lie_bracket(const SuperVectorField& X, const SuperVectorField& Y) {
    require_same_chart(X.chart(), Y.chart());
    CotangentChart cc(X.chart());
    return field_from_symbol(poisson_bracket(symbol(X, cc), symbol(Y, cc), cc), cc, X.parity() + Y.parity());
}

}  // namespace oddjac
