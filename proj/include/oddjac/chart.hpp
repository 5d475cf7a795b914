#pragma once

#include "oddjac/errors.hpp"
#include "oddjac/graded_poly.hpp"
#include "oddjac/universe.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oddjac {

inline constexpr std::string_view momentum_prefix = "p_";
inline constexpr std::string_view fiber_prefix = "d_";

/// Local coordinates x^A on a supermanifold M. Coordinate i has VarId{i}.
class Chart {
public:
    Chart() : universe_(Universe::create({})) {}

    /// Validating constructor. Names starting with `p_` are reserved for momenta; a
    /// `d_<z>` name is accepted only when `<z>` precedes it with the opposite parity.
    static Chart create(std::string name, const std::vector<VariableSpec>& coords) {
        std::vector<VariableSpec> seen;
        for (const auto& [n, parity] : coords) {
            if (n.starts_with(momentum_prefix))
                throw ValidationError("coordinate name '" + n + "' uses the reserved prefix p_");
            if (n.starts_with(fiber_prefix)) {
                auto base = n.substr(fiber_prefix.size());
                bool ok = false;
                for (const auto& [bn, bp] : seen)
                    if (bn == base && bp != parity) ok = true;
                if (!ok)
                    throw ValidationError("coordinate name '" + n +
                                          "' uses the reserved prefix d_ without a matching base coordinate");
            }
            seen.emplace_back(n, parity);
        }
        return Chart(std::move(name), Universe::create(coords));
    }

    const std::string& name() const noexcept { return name_; }
    const UniversePtr& universe() const noexcept { return universe_; }
    std::size_t dimension() const noexcept { return universe_->size(); }
    VarId coordinate(std::size_t i) const { return VarId{static_cast<std::uint32_t>(i)}; }
    Parity parity(std::size_t i) const { return universe_->parity(coordinate(i)); }
    const std::string& coordinate_name(std::size_t i) const { return universe_->name(coordinate(i)); }

    std::size_t index_of(std::string_view coord) const {
        auto id = universe_->find(coord);
        if (!id || id->index >= dimension()) throw ValidationError("unknown coordinate '" + std::string(coord) + "'");
        return id->index;
    }

    GradedPoly x(std::size_t i) const { return GradedPoly::variable(universe_, coordinate(i)); }
    GradedPoly x(std::string_view name) const { return x(index_of(name)); }
    GradedPoly constant(const Rational& c) const { return GradedPoly::constant(c, universe_); }

    /// f only involves the coordinates of this chart.
    bool owns(const GradedPoly& f) const {
        return compatible(f.universe(), universe_) && f.uses_only_first(dimension());
    }

    void require_function(const GradedPoly& f, std::string_view what) const {
        if (!owns(f))
            throw ValidationError(std::string(what) + " must be a function of the coordinates of chart '" + name_ +
                                  "'");
    }

    /// Structural equality: same coordinate names and parities in the same order.
    friend bool operator==(const Chart& a, const Chart& b) {
        return a.dimension() == b.dimension() && a.universe_->extends(*b.universe_);
    }

private:
    friend class AntitangentChart;

    Chart(std::string name, UniversePtr u) : name_(std::move(name)), universe_(std::move(u)) {}

    std::string name_;
    UniversePtr universe_;
};

/// Natural coordinates (x^A, p_A) on T*M; p_A has the parity of x^A and follows all
/// base coordinates.
class CotangentChart {
public:
    explicit CotangentChart(Chart base) : base_(std::move(base)) {
        std::vector<VariableSpec> momenta;
        for (std::size_t i = 0; i < base_.dimension(); ++i) {
            auto n = std::string(momentum_prefix) + base_.coordinate_name(i);
            if (base_.universe()->find(n))
                throw ValidationError("momentum name '" + n + "' collides with an existing coordinate");
            momenta.emplace_back(std::move(n), base_.parity(i));
        }
        universe_ = Universe::extend(base_.universe(), momenta);
    }

    const Chart& base() const noexcept { return base_; }
    const UniversePtr& universe() const noexcept { return universe_; }
    std::size_t dimension() const noexcept { return base_.dimension(); }
    VarId coordinate(std::size_t i) const { return base_.coordinate(i); }
    VarId momentum(std::size_t i) const { return VarId{static_cast<std::uint32_t>(dimension() + i)}; }
    Parity parity(std::size_t i) const { return base_.parity(i); }
    bool is_momentum(VarId v) const noexcept { return v.index >= dimension() && v.index < 2 * dimension(); }

    GradedPoly x(std::size_t i) const { return GradedPoly::variable(universe_, coordinate(i)); }
    GradedPoly x(std::string_view name) const { return x(base_.index_of(name)); }
    GradedPoly p(std::size_t i) const { return GradedPoly::variable(universe_, momentum(i)); }
    GradedPoly p(std::string_view name) const { return p(base_.index_of(name)); }

    /// Number of momentum factors (with multiplicity) in a monomial.
    std::uint32_t fiber_degree(const Monomial& m) const noexcept {
        std::uint32_t d = 0;
        for (const auto& f : m.factors())
            if (is_momentum(f.var)) d += f.exponent;
        return d;
    }

    bool owns(const GradedPoly& F) const {
        return compatible(F.universe(), universe_) && F.uses_only_first(2 * dimension());
    }

    void require_function(const GradedPoly& F, std::string_view what) const {
        if (!owns(F))
            throw ValidationError(std::string(what) + " must be a function on the cotangent chart of '" +
                                  base_.name() + "'");
    }

private:
    Chart base_;
    UniversePtr universe_;
};

/// Natural coordinates (x^A, d_x^A) on the antitangent bundle (Pi TM); d_x^A has the
/// flipped parity of x^A. Functions on it are differential (pseudo)forms.
class AntitangentChart {
public:
    explicit AntitangentChart(Chart base) : base_(std::move(base)) {
        std::vector<VariableSpec> fibers;
        for (std::size_t i = 0; i < base_.dimension(); ++i) {
            auto n = std::string(fiber_prefix) + base_.coordinate_name(i);
            if (base_.universe()->find(n))
                throw ValidationError("fiber name '" + n + "' collides with an existing coordinate");
            fibers.emplace_back(std::move(n), base_.parity(i) + Parity::odd);
        }
        universe_ = Universe::extend(base_.universe(), fibers);
    }

    const Chart& base() const noexcept { return base_; }
    const UniversePtr& universe() const noexcept { return universe_; }
    std::size_t dimension() const noexcept { return base_.dimension(); }
    VarId coordinate(std::size_t i) const { return base_.coordinate(i); }
    VarId fiber(std::size_t i) const { return VarId{static_cast<std::uint32_t>(dimension() + i)}; }
    bool is_fiber(VarId v) const noexcept { return v.index >= dimension() && v.index < 2 * dimension(); }

    GradedPoly x(std::size_t i) const { return GradedPoly::variable(universe_, coordinate(i)); }
    GradedPoly x(std::string_view name) const { return x(base_.index_of(name)); }
    GradedPoly d(std::size_t i) const { return GradedPoly::variable(universe_, fiber(i)); }
    GradedPoly d(std::string_view name) const { return d(base_.index_of(name)); }

    /// Pi TM regarded as a manifold in its own right (coordinates x^A then d_x^A).
    Chart total_chart() const { return Chart("PiT_" + base_.name(), universe_); }

    bool owns(const GradedPoly& form) const {
        return compatible(form.universe(), universe_) && form.uses_only_first(2 * dimension());
    }

private:
    Chart base_;
    UniversePtr universe_;
};

inline CotangentChart cotangent_lift(const Chart& c) { return CotangentChart(c); }
inline AntitangentChart antitangent_lift(const Chart& c) { return AntitangentChart(c); }

}  // namespace oddjac
