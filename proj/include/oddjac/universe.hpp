#pragma once

#include "oddjac/errors.hpp"
#include "oddjac/parity.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace oddjac {

/// Position of a variable inside its universe. Lifts append variables, so ids of
/// base coordinates are stable across every universe that extends the base.
struct VarId {
    std::uint32_t index = 0;

    friend constexpr auto operator<=>(VarId, VarId) = default;
};

struct Variable {
    std::string name;
    Parity parity = Parity::even;
    std::uint32_t position = 0;
};

using VariableSpec = std::pair<std::string, Parity>;

inline bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(s.front())) return false;
    for (char c : s)
        if (!alpha(c) && !digit(c)) return false;
    return true;
}

class Universe;
using UniversePtr = std::shared_ptr<const Universe>;

/// Ordered, immutable set of named graded variables: the variable universe of a chart
/// or of one of its lifts.
class Universe {
public:
    static UniversePtr create(const std::vector<VariableSpec>& vars) {
        auto u = std::shared_ptr<Universe>(new Universe());
        for (const auto& [name, parity] : vars) u->append(name, parity);
        return u;
    }

    /// New universe whose first variables are exactly those of `parent`.
    static UniversePtr extend(const UniversePtr& parent, const std::vector<VariableSpec>& extra) {
        auto u = std::shared_ptr<Universe>(new Universe());
        if (parent)
            for (const auto& v : parent->vars_) u->append(v.name, v.parity);
        for (const auto& [name, parity] : extra) u->append(name, parity);
        return u;
    }

    std::size_t size() const noexcept { return vars_.size(); }
    const std::vector<Variable>& variables() const noexcept { return vars_; }
    const Variable& variable(VarId id) const { return vars_.at(id.index); }
    Parity parity(VarId id) const { return vars_.at(id.index).parity; }
    const std::string& name(VarId id) const { return vars_.at(id.index).name; }
    bool contains(VarId id) const noexcept { return id.index < vars_.size(); }

    std::optional<VarId> find(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end()) return std::nullopt;
        return VarId{it->second};
    }

    VarId at(std::string_view name) const {
        if (auto id = find(name)) return *id;
        throw ValidationError("unknown variable '" + std::string(name) + "'");
    }

    /// True when `other` is a prefix of this universe (same names and parities).
    bool extends(const Universe& other) const {
        if (this == &other) return true;
        if (other.size() > size()) return false;
        for (std::size_t i = 0; i < other.size(); ++i)
            if (vars_[i].name != other.vars_[i].name || vars_[i].parity != other.vars_[i].parity)
                return false;
        return true;
    }

private:
    Universe() = default;

    void append(const std::string& name, Parity parity) {
        if (!is_identifier(name)) throw ValidationError("invalid variable name '" + name + "'");
        auto pos = static_cast<std::uint32_t>(vars_.size());
        if (!index_.emplace(name, pos).second)
            throw ValidationError("duplicate variable name '" + name + "'");
        vars_.push_back(Variable{name, parity, pos});
    }

    std::vector<Variable> vars_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

/// The larger of two compatible universes; null stands for "constants only".
inline UniversePtr unify(const UniversePtr& a, const UniversePtr& b) {
    if (!a) return b;
    if (!b || a == b) return a;
    if (b->extends(*a)) return b;
    if (a->extends(*b)) return a;
    throw ChartMismatch("polynomials live on incompatible charts");
}

inline bool compatible(const UniversePtr& a, const UniversePtr& b) {
    if (!a || !b || a == b) return true;
    return a->extends(*b) || b->extends(*a);
}

}  // namespace oddjac
