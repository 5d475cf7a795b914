#pragma once

#include "oddjac/graded_poly.hpp"

#include <ostream>
#include <sstream>
#include <string>

namespace oddjac {

inline std::string render_monomial(const Monomial& m, const Universe& u) {
    std::string out;
    for (const auto& f : m.factors()) {
        if (!out.empty()) out += '*';
        out += u.name(f.var);
        if (f.exponent > 1) out += '^' + std::to_string(f.exponent);
    }
    return out;
}

/// Canonical text: terms in graded-lexicographic order, factors in chart order,
/// coefficients as reduced rationals. Unit coefficients are omitted on non-constant
/// terms; a leading negative term is written "- ...". The zero polynomial is "0".
inline std::string render_canonical(const GradedPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        const bool negative = c < 0;
        if (first) {
            if (negative) out += "- ";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        Rational a = negative ? Rational(-c) : c;
        if (m.is_unit()) {
            out += to_string(a);
            continue;
        }
        if (a != 1) out += to_string(a) + '*';
        out += render_monomial(m, *p.universe());
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const GradedPoly& p) { return os << render_canonical(p); }

}  // namespace oddjac
