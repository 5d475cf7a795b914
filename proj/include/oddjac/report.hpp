#pragma once

#include "oddjac/graded_poly.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oddjac {

/// One named condition. It passes exactly when its residual is the zero polynomial;
/// a failing check always carries the nonzero residual as its witness.
struct Check {
    std::string name;
    GradedPoly residual;
    std::string note;

    bool passed() const { return residual.is_zero(); }
};

class VerificationReport {
public:
    void add(std::string name, GradedPoly residual, std::string note = {}) {
        checks_.push_back(Check{std::move(name), std::move(residual), std::move(note)});
    }

    void append(const VerificationReport& other, std::string_view prefix = {}) {
        for (const auto& c : other.checks_) checks_.push_back(Check{std::string(prefix) + c.name, c.residual, c.note});
    }

    bool passed() const {
        return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.passed(); });
    }

    const std::vector<Check>& checks() const noexcept { return checks_; }

    const Check* find(std::string_view name) const {
        for (const auto& c : checks_)
            if (c.name == name) return &c;
        return nullptr;
    }

    const Check& at(std::string_view name) const {
        if (const auto* c = find(name)) return *c;
        throw std::out_of_range("no check named '" + std::string(name) + "'");
    }

    bool passed(std::string_view name) const { return at(name).passed(); }

    std::vector<std::string> failed_names() const {
        std::vector<std::string> out;
        for (const auto& c : checks_)
            if (!c.passed()) out.push_back(c.name);
        return out;
    }

private:
    std::vector<Check> checks_;
};

}  // namespace oddjac
