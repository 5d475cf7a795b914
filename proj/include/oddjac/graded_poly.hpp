#pragma once

#include "oddjac/errors.hpp"
#include "oddjac/monomial.hpp"
#include "oddjac/parity.hpp"
#include "oddjac/rational.hpp"
#include "oddjac/universe.hpp"

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace oddjac {

/// A word of variables with a coefficient, before sign normalization.
struct RawTerm {
    Rational coefficient;
    std::vector<VarId> word;
};

/// Same as RawTerm but naming the variables.
struct NamedRawTerm {
    Rational coefficient;
    std::vector<std::string> word;
};

/// Z2-graded polynomial with exact rational coefficients in canonical normal form.
///
/// Equal polynomials have identical term maps, so `==` is an exact identity test.
/// Values are immutable once built; all operations return new polynomials.
class GradedPoly {
public:
    using TermMap = std::map<Monomial, Rational, GrlexOrder>;

    GradedPoly() = default;

    static GradedPoly constant(const Rational& c, UniversePtr u = nullptr) {
        GradedPoly p;
        p.universe_ = std::move(u);
        if (!c.is_zero()) p.terms_.emplace(Monomial(), c);
        return p;
    }

    static GradedPoly zero(UniversePtr u = nullptr) { return constant(Rational(0), std::move(u)); }

    static GradedPoly variable(UniversePtr u, VarId v) {
        if (!u || !u->contains(v)) throw ValidationError("unknown variable id " + std::to_string(v.index));
        GradedPoly p;
        p.terms_.emplace(Monomial({Factor{v, 1, is_odd(u->parity(v))}}), Rational(1));
        p.universe_ = std::move(u);
        return p;
    }

    static GradedPoly variable(UniversePtr u, std::string_view name) {
        if (!u) throw ValidationError("unknown variable '" + std::string(name) + "'");
        VarId v = u->at(name);
        return variable(std::move(u), v);
    }

    /// Build directly from canonical monomials (zero coefficients are dropped).
    static GradedPoly from_terms(UniversePtr u, TermMap terms) {
        GradedPoly p;
        p.universe_ = std::move(u);
        for (auto it = terms.begin(); it != terms.end();)
            it = it->second.is_zero() ? terms.erase(it) : std::next(it);
        p.terms_ = std::move(terms);
        return p;
    }

    const TermMap& terms() const noexcept { return terms_; }
    const UniversePtr& universe() const noexcept { return universe_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    /// Common parity of all terms; nullopt when inhomogeneous. Zero is even.
    std::optional<Parity> parity() const {
        std::optional<Parity> p;
        for (const auto& [m, c] : terms_) {
            if (!p) p = m.parity();
            else if (*p != m.parity()) return std::nullopt;
        }
        return p.value_or(Parity::even);
    }

    bool is_homogeneous() const { return parity().has_value(); }

    /// Parity of a polynomial that must be homogeneous.
    Parity require_parity(std::string_view what = "polynomial") const {
        auto p = parity();
        if (!p) throw ValidationError(std::string(what) + " is not homogeneous in parity");
        return *p;
    }

    /// (even part, odd part)
    std::pair<GradedPoly, GradedPoly> split_by_parity() const {
        GradedPoly e, o;
        e.universe_ = o.universe_ = universe_;
        for (const auto& [m, c] : terms_) (is_odd(m.parity()) ? o : e).terms_.emplace(m, c);
        return {std::move(e), std::move(o)};
    }

    std::uint32_t degree() const noexcept {
        std::uint32_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    /// Same polynomial viewed on a compatible (usually larger) universe.
    GradedPoly on(const UniversePtr& u) const {
        GradedPoly p = *this;
        p.universe_ = unify(universe_, u);
        return p;
    }

    /// True when every variable occurring has index below `n`.
    bool uses_only_first(std::size_t n) const noexcept {
        for (const auto& [m, c] : terms_)
            if (auto v = m.max_var(); v && v->index >= n) return false;
        return true;
    }

    /// Left partial derivative with respect to `v`.
    GradedPoly derivative(VarId v) const {
        if (universe_ && !universe_->contains(v))
            throw ValidationError("unknown variable id " + std::to_string(v.index));
        GradedPoly r;
        r.universe_ = universe_;
        for (const auto& [m, c] : terms_) {
            if (auto d = oddjac::derivative(m, v)) r.accumulate(d->first, c * d->second);
        }
        return r;
    }

    GradedPoly operator-() const {
        GradedPoly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    GradedPoly scaled(const Rational& k) const {
        if (k.is_zero()) return zero(universe_);
        GradedPoly r = *this;
        for (auto& [m, c] : r.terms_) c *= k;
        return r;
    }

    friend GradedPoly operator+(const GradedPoly& a, const GradedPoly& b) {
        GradedPoly r = a;
        r.universe_ = unify(a.universe_, b.universe_);
        for (const auto& [m, c] : b.terms_) r.accumulate(m, c);
        return r;
    }

    friend GradedPoly operator-(const GradedPoly& a, const GradedPoly& b) {
        GradedPoly r = a;
        r.universe_ = unify(a.universe_, b.universe_);
        for (const auto& [m, c] : b.terms_) r.accumulate(m, -c);
        return r;
    }

    friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
        GradedPoly r;
        r.universe_ = unify(a.universe_, b.universe_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                if (auto prod = multiply(ma, mb)) {
                    Rational c = ca * cb;
                    if (prod->second < 0) c = -c;
                    r.accumulate(prod->first, c);
                }
        return r;
    }

    friend GradedPoly operator*(const Rational& k, const GradedPoly& p) { return p.scaled(k); }
    friend GradedPoly operator*(const GradedPoly& p, const Rational& k) { return p.scaled(k); }
    friend GradedPoly operator*(long k, const GradedPoly& p) { return p.scaled(Rational(k)); }

    GradedPoly& operator+=(const GradedPoly& b) {
        universe_ = unify(universe_, b.universe_);
        for (const auto& [m, c] : b.terms_) accumulate(m, c);
        return *this;
    }

    GradedPoly& operator-=(const GradedPoly& b) {
        universe_ = unify(universe_, b.universe_);
        for (const auto& [m, c] : b.terms_) accumulate(m, -c);
        return *this;
    }

    /// Exact equality. Polynomials on incompatible charts are never equal unless both
    /// are constants.
    friend bool operator==(const GradedPoly& a, const GradedPoly& b) {
        if (a.terms_ != b.terms_) return false;
        return compatible(a.universe_, b.universe_) || a.degree() == 0;
    }

private:
    void accumulate(const Monomial& m, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    UniversePtr universe_;
    TermMap terms_;
};

/// Canonical form of a list of raw signed words over one universe.
inline GradedPoly normalize(const UniversePtr& u, std::span<const RawTerm> raw) {
    if (!u) throw ValidationError("normalize requires a variable universe");
    GradedPoly::TermMap acc;
    for (const auto& t : raw) {
        auto w = normalize_word(*u, t.word);
        if (!w) continue;
        Rational c = w->second < 0 ? Rational(-t.coefficient) : t.coefficient;
        auto [it, inserted] = acc.try_emplace(w->first, c);
        if (!inserted) it->second += c;
    }
    return GradedPoly::from_terms(u, std::move(acc));
}

inline GradedPoly normalize(const UniversePtr& u, std::span<const NamedRawTerm> raw) {
    if (!u) throw ValidationError("normalize requires a variable universe");
    std::vector<RawTerm> ids;
    ids.reserve(raw.size());
    for (const auto& t : raw) {
        RawTerm r{t.coefficient, {}};
        for (const auto& name : t.word) r.word.push_back(u->at(name));
        ids.push_back(std::move(r));
    }
    return normalize(u, std::span<const RawTerm>(ids));
}

inline GradedPoly add(const GradedPoly& a, const GradedPoly& b) { return a + b; }
inline GradedPoly mul(const GradedPoly& a, const GradedPoly& b) { return a * b; }
inline std::optional<Parity> parity_of(const GradedPoly& p) { return p.parity(); }
inline GradedPoly left_derivative(const GradedPoly& p, VarId v) { return p.derivative(v); }

inline GradedPoly left_derivative(const GradedPoly& p, std::string_view name) {
    if (!p.universe()) return GradedPoly::zero();
    return p.derivative(p.universe()->at(name));
}

}  // namespace oddjac
