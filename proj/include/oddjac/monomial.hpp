#pragma once

#include "oddjac/parity.hpp"
#include "oddjac/universe.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace oddjac {

struct Factor {
    VarId var;
    std::uint32_t exponent = 1;
    bool odd = false;

    friend bool operator==(const Factor&, const Factor&) = default;
};

/// Ordered word of distinct variables with positive exponents, sorted by chart
/// position. Odd variables always carry exponent one.
class Monomial {
public:
    Monomial() = default;

    /// Takes factors already in canonical order; used by the normal-form routines.
    explicit Monomial(std::vector<Factor> factors) : factors_(std::move(factors)) {
        for (const auto& f : factors_) {
            degree_ += f.exponent;
            if (f.odd) odd_count_ += 1;
        }
    }

    std::span<const Factor> factors() const noexcept { return factors_; }
    std::size_t size() const noexcept { return factors_.size(); }
    bool is_unit() const noexcept { return factors_.empty(); }
    std::uint32_t degree() const noexcept { return degree_; }
    std::uint32_t odd_count() const noexcept { return odd_count_; }
    Parity parity() const noexcept { return parity_from_bit(static_cast<int>(odd_count_)); }

    std::uint32_t exponent_of(VarId v) const noexcept {
        for (const auto& f : factors_)
            if (f.var == v) return f.exponent;
        return 0;
    }

    /// Largest variable index used, or nullopt for the unit monomial.
    std::optional<VarId> max_var() const noexcept {
        if (factors_.empty()) return std::nullopt;
        return factors_.back().var;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }

private:
    std::vector<Factor> factors_;
    std::uint32_t degree_ = 0;
    std::uint32_t odd_count_ = 0;
};

/// Graded-lexicographic order: lower total degree first, then the monomial with the
/// larger exponent on the earliest differing variable first.
struct GrlexOrder {
    bool operator()(const Monomial& a, const Monomial& b) const noexcept {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        auto fa = a.factors();
        auto fb = b.factors();
        std::size_t n = std::min(fa.size(), fb.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (fa[i].var != fb[i].var) return fa[i].var < fb[i].var;
            if (fa[i].exponent != fb[i].exponent) return fa[i].exponent > fb[i].exponent;
        }
        return fa.size() > fb.size();
    }
};

/// Signed product of two canonical monomials, or nullopt when an odd variable repeats.
inline std::optional<std::pair<Monomial, int>> multiply(const Monomial& a, const Monomial& b) {
    auto fa = a.factors();
    auto fb = b.factors();
    std::vector<Factor> out;
    out.reserve(fa.size() + fb.size());
    std::uint32_t odd_left_in_a = a.odd_count();
    bool negative = false;
    std::size_t i = 0, j = 0;
    while (i < fa.size() && j < fb.size()) {
        if (fa[i].var < fb[j].var) {
            if (fa[i].odd) --odd_left_in_a;
            out.push_back(fa[i++]);
        } else if (fb[j].var < fa[i].var) {
            // fb[j] moves left past every factor of a not yet emitted
            if (fb[j].odd && (odd_left_in_a & 1u)) negative = !negative;
            out.push_back(fb[j++]);
        } else {
            if (fa[i].odd) return std::nullopt;
            out.push_back(Factor{fa[i].var, fa[i].exponent + fb[j].exponent, false});
            ++i;
            ++j;
        }
    }
    for (; i < fa.size(); ++i) out.push_back(fa[i]);
    for (; j < fb.size(); ++j) out.push_back(fb[j]);
    return std::pair{Monomial(std::move(out)), negative ? -1 : 1};
}

/// Left derivative d/dv of a monomial: the result word and its integer multiplier
/// (Koszul sign for odd v, exponent for even v). nullopt when v does not occur.
inline std::optional<std::pair<Monomial, long>> derivative(const Monomial& m, VarId v) {
    auto f = m.factors();
    int odd_before = 0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (f[k].var == v) {
            std::vector<Factor> out(f.begin(), f.end());
            if (f[k].odd) {
                out.erase(out.begin() + static_cast<std::ptrdiff_t>(k));
                return std::pair{Monomial(std::move(out)), static_cast<long>(sign_pow(odd_before))};
            }
            long mult = f[k].exponent;
            if (--out[k].exponent == 0) out.erase(out.begin() + static_cast<std::ptrdiff_t>(k));
            return std::pair{Monomial(std::move(out)), mult};
        }
        if (f[k].var > v) break;
        if (f[k].odd) ++odd_before;
    }
    return std::nullopt;
}

/// Sort a raw word of variables into canonical order, tracking the Koszul sign of each
/// odd-odd transposition. nullopt when an odd variable occurs twice.
inline std::optional<std::pair<Monomial, int>> normalize_word(const Universe& u, std::span<const VarId> word) {
    std::vector<Factor> w;
    w.reserve(word.size());
    for (VarId v : word) {
        if (!u.contains(v)) throw ValidationError("unknown variable id " + std::to_string(v.index));
        w.push_back(Factor{v, 1, is_odd(u.parity(v))});
    }
    bool negative = false;
    for (std::size_t i = 1; i < w.size(); ++i) {
        for (std::size_t j = i; j > 0 && w[j - 1].var > w[j].var; --j) {
            if (w[j - 1].odd && w[j].odd) negative = !negative;
            std::swap(w[j - 1], w[j]);
        }
    }
    std::vector<Factor> merged;
    merged.reserve(w.size());
    for (const auto& f : w) {
        if (!merged.empty() && merged.back().var == f.var) {
            if (f.odd) return std::nullopt;
            merged.back().exponent += 1;
        } else {
            merged.push_back(f);
        }
    }
    return std::pair{Monomial(std::move(merged)), negative ? -1 : 1};
}

}  // namespace oddjac
