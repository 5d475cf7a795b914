#pragma once

#include "oddjac/chart.hpp"
#include "oddjac/constructors.hpp"
#include "oddjac/errors.hpp"
#include "oddjac/jacobi.hpp"
#include "oddjac/parser.hpp"
#include "oddjac/render.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oddjac {

/// A loaded `.sj` file. Functions and S live on T*M (so momenta `p_<coord>` may be
/// used); Q components on M; forms on Pi TM (fibres `d_<coord>`), which is only
/// built when a [forms] section is present.
class StructureFile {
public:
    using Named = std::vector<std::pair<std::string, GradedPoly>>;

    StructureFile(Chart chart) : chart_(std::move(chart)), cc_(chart_) {}

    const Chart& chart() const noexcept { return chart_; }
    const CotangentChart& cotangent() const noexcept { return cc_; }

    const AntitangentChart& antitangent() const {
        if (!ac_) ac_.emplace(chart_);
        return *ac_;
    }

    bool has_structure() const noexcept { return structure_.has_value(); }

    const OddJacobiStructure& structure() const {
        if (!structure_) throw ValidationError("structure required");
        return *structure_;
    }

    const Named& functions() const noexcept { return functions_; }
    const Named& forms() const noexcept { return forms_; }

    const GradedPoly& function(std::string_view name) const { return lookup(functions_, name, "function"); }
    const GradedPoly& form(std::string_view name) const { return lookup(forms_, name, "form"); }

    void set_structure(OddJacobiStructure J) {
        require_same_chart(J.chart(), chart_);
        structure_.emplace(std::move(J));
    }

    void add_function(std::string name, GradedPoly f) {
        cc_.require_function(f, "function '" + name + "'");
        add(functions_, std::move(name), std::move(f), "function");
    }

    void add_form(std::string name, GradedPoly w) {
        if (!antitangent().owns(w)) throw ValidationError("form '" + name + "' must live on Pi T of the chart");
        add(forms_, std::move(name), std::move(w), "form");
    }

private:
    static const GradedPoly& lookup(const Named& v, std::string_view name, const char* what) {
        for (const auto& [n, p] : v)
            if (n == name) return p;
        throw ValidationError(std::string("unknown ") + what + " '" + std::string(name) + "'");
    }

    static void add(Named& v, std::string name, GradedPoly p, const char* what) {
        for (const auto& [n, q] : v)
            if (n == name) throw ValidationError(std::string("duplicate ") + what + " '" + name + "'");
        v.emplace_back(std::move(name), std::move(p));
    }

    Chart chart_;
    CotangentChart cc_;
    mutable std::optional<AntitangentChart> ac_;
    std::optional<OddJacobiStructure> structure_;
    Named functions_;
    Named forms_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

inline std::vector<std::pair<std::string, std::size_t>> words(std::string_view s) {
    std::vector<std::pair<std::string, std::size_t>> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t b = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        if (i > b) out.emplace_back(std::string(s.substr(b, i - b)), b);
    }
    return out;
}

struct SourceLine {
    std::size_t number;
    std::string_view text;  // comment stripped, right-trimmed, untrimmed on the left
};

inline std::vector<SourceLine> source_lines(std::string_view text) {
    std::vector<SourceLine> out;
    std::size_t number = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        ++number;
        if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
            line.remove_suffix(1);
        out.push_back({number, line});
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return out;
}

/// Splits `lhs = rhs`; returns the lhs and the 1-based column where rhs starts.
inline std::pair<std::string_view, std::size_t> split_assignment(const SourceLine& l) {
    auto eq = l.text.find('=');
    if (eq == std::string_view::npos) {
        auto first = l.text.find_first_not_of(" \t");
        throw ParseError("expected '<name> = <expression>'", l.number, first + 1);
    }
    return {trim(l.text.substr(0, eq)), eq + 2};
}

inline void require_identifier(std::string_view name, const SourceLine& l) {
    if (!is_identifier(name)) {
        auto col = l.text.find_first_not_of(" \t");
        throw ParseError("invalid name '" + std::string(name) + "'", l.number, col + 1);
    }
}

}  // namespace detail

/// Line-oriented format with sections [chart], [structure], [functions], [forms].
///   [chart]      `name <id>`, `even <names...>`, `odd <names...>`
///   [structure]  `S = <expr>`, `Q.<coord> = <expr>`
///   [functions]  `<name> = <expr>`
///   [forms]      `<name> = <expr>`
/// `#` starts a comment. The chart section must come first.
inline StructureFile parse_structure_file(std::string_view text) {
    enum class Section { none, chart, structure, functions, forms };
    Section section = Section::none;
    std::string chart_name = "M";
    std::vector<VariableSpec> coords;
    std::optional<StructureFile> file;
    bool seen[5] = {};
    bool structure_section = false;
    std::optional<GradedPoly> S;
    std::map<std::string, GradedPoly> Q;

    auto ensure_chart = [&](const detail::SourceLine& l) {
        if (file) return;
        if (coords.empty()) throw ParseError("[chart] section with at least one coordinate must come first", l.number, 1);
        file.emplace(Chart::create(chart_name, coords));
    };

    for (const auto& l : detail::source_lines(text)) {
        std::string_view t = detail::trim(l.text);
        if (t.empty()) continue;
        const std::size_t indent = l.text.find_first_not_of(" \t") + 1;
        if (t.front() == '[') {
            if (t.back() != ']') throw ParseError("malformed section header", l.number, indent);
            std::string_view name = detail::trim(t.substr(1, t.size() - 2));
            Section next;
            if (name == "chart") next = Section::chart;
            else if (name == "structure") next = Section::structure;
            else if (name == "functions") next = Section::functions;
            else if (name == "forms") next = Section::forms;
            else throw ParseError("unknown section [" + std::string(name) + "]", l.number, indent);
            if (seen[static_cast<int>(next)])
                throw ParseError("duplicate section [" + std::string(name) + "]", l.number, indent);
            seen[static_cast<int>(next)] = true;
            if (next != Section::chart) ensure_chart(l);
            else if (file) throw ParseError("[chart] must come first", l.number, indent);
            if (next == Section::structure) structure_section = true;
            section = next;
            continue;
        }
        switch (section) {
            case Section::none:
                throw ParseError("content before the first section header", l.number, indent);
            case Section::chart: {
                auto w = detail::words(l.text);
                const std::string& kw = w.front().first;
                if (kw == "name") {
                    if (w.size() != 2 || !is_identifier(w[1].first))
                        throw ParseError("expected 'name <identifier>'", l.number, indent);
                    chart_name = w[1].first;
                    break;
                }
                Parity p;
                if (kw == "even") p = Parity::even;
                else if (kw == "odd") p = Parity::odd;
                else throw ParseError("expected 'even', 'odd' or 'name'", l.number, indent);
                if (w.size() < 2) throw ParseError("expected coordinate names", l.number, indent);
                for (std::size_t i = 1; i < w.size(); ++i) {
                    const auto& [n, col] = w[i];
                    if (!is_identifier(n)) throw ParseError("invalid coordinate name '" + n + "'", l.number, col + 1);
                    for (const auto& [m, mp] : coords)
                        if (m == n) throw ParseError("duplicate coordinate '" + n + "'", l.number, col + 1);
                    coords.emplace_back(n, p);
                }
                break;
            }
            case Section::structure: {
                auto [lhs, col] = detail::split_assignment(l);
                std::string_view rhs = l.text.substr(col - 1);
                if (lhs == "S") {
                    if (S) throw ParseError("duplicate S", l.number, indent);
                    S = parse_polynomial(rhs, file->cotangent().universe(), l.number, col);
                } else if (lhs.starts_with("Q.")) {
                    std::string coord(lhs.substr(2));
                    auto id = file->chart().universe()->find(coord);
                    if (!id) throw ParseError("unknown coordinate '" + coord + "'", l.number, indent + 2);
                    if (Q.count(coord)) throw ParseError("duplicate component Q." + coord, l.number, indent);
                    Q.emplace(coord, parse_polynomial(rhs, file->chart().universe(), l.number, col));
                } else {
                    throw ParseError("expected 'S = ...' or 'Q.<coord> = ...'", l.number, indent);
                }
                break;
            }
            case Section::functions:
            case Section::forms: {
                auto [lhs, col] = detail::split_assignment(l);
                detail::require_identifier(lhs, l);
                std::string_view rhs = l.text.substr(col - 1);
                if (section == Section::functions) {
                    if (file->functions().end() !=
                        std::find_if(file->functions().begin(), file->functions().end(),
                                     [&](const auto& e) { return e.first == lhs; }))
                        throw ParseError("duplicate function '" + std::string(lhs) + "'", l.number, indent);
                    file->add_function(std::string(lhs),
                                       parse_polynomial(rhs, file->cotangent().universe(), l.number, col));
                } else {
                    if (file->forms().end() != std::find_if(file->forms().begin(), file->forms().end(),
                                                            [&](const auto& e) { return e.first == lhs; }))
                        throw ParseError("duplicate form '" + std::string(lhs) + "'", l.number, indent);
                    file->add_form(std::string(lhs),
                                   parse_polynomial(rhs, file->antitangent().universe(), l.number, col));
                }
                break;
            }
        }
    }
    if (!file) {
        if (coords.empty()) throw ValidationError("missing [chart] section");
        file.emplace(Chart::create(chart_name, coords));
    }
    if (structure_section && (S || !Q.empty())) {
        const Chart& chart = file->chart();
        SuperVectorField field = SuperVectorField::from_components(chart, Q, Parity::odd);
        if (field.parity() != Parity::odd) throw ValidationError("Q must be an odd vector field");
        file->set_structure(
            OddJacobiStructure::create(chart, S.value_or(GradedPoly::zero(file->cotangent().universe())), field));
    }
    return std::move(*file);
}

inline StructureFile load_structure_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_structure_file(ss.str());
}

/// Canonical `.sj` text; parse_structure_file(serialize(f)) reproduces f.
inline std::string serialize(const StructureFile& f, std::string_view header_comment = {}) {
    std::ostringstream out;
    if (!header_comment.empty()) out << "# " << header_comment << "\n";
    const Chart& c = f.chart();
    out << "[chart]\nname " << c.name() << "\n";
    for (std::size_t i = 0; i < c.dimension();) {
        Parity p = c.parity(i);
        out << (is_odd(p) ? "odd" : "even");
        while (i < c.dimension() && c.parity(i) == p) out << ' ' << c.coordinate_name(i++);
        out << "\n";
    }
    if (f.has_structure()) {
        const auto& J = f.structure();
        out << "\n[structure]\nS = " << render_canonical(J.S()) << "\n";
        for (std::size_t a = 0; a < c.dimension(); ++a)
            if (!J.Q().component(a).is_zero())
                out << "Q." << c.coordinate_name(a) << " = " << render_canonical(J.Q().component(a)) << "\n";
    }
    if (!f.functions().empty()) {
        out << "\n[functions]\n";
        for (const auto& [n, p] : f.functions()) out << n << " = " << render_canonical(p) << "\n";
    }
    if (!f.forms().empty()) {
        out << "\n[forms]\n";
        for (const auto& [n, p] : f.forms()) out << n << " = " << render_canonical(p) << "\n";
    }
    return out.str();
}

/// Structure constants file:
///   [basis]     `even <names...>`, `odd <names...>`
///   [brackets]  `<a> <b> = <linear combination of basis names>`
/// Unlisted brackets are zero; the graded antisymmetric partner of a listed bracket is
/// filled in unless it is listed too, in which case the two must agree.
struct NamedStructureConstants {
    std::vector<std::string> names;
    StructureConstants constants;
};

inline NamedStructureConstants parse_structure_constants(std::string_view text) {
    enum class Section { none, basis, brackets };
    Section section = Section::none;
    std::vector<VariableSpec> basis;
    UniversePtr u;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Rational>> explicit_;
    bool seen_basis = false, seen_brackets = false;

    for (const auto& l : detail::source_lines(text)) {
        std::string_view t = detail::trim(l.text);
        if (t.empty()) continue;
        const std::size_t indent = l.text.find_first_not_of(" \t") + 1;
        if (t.front() == '[') {
            if (t == "[basis]") {
                if (seen_basis) throw ParseError("duplicate section [basis]", l.number, indent);
                seen_basis = true;
                section = Section::basis;
            } else if (t == "[brackets]") {
                if (seen_brackets) throw ParseError("duplicate section [brackets]", l.number, indent);
                if (basis.empty()) throw ParseError("[basis] must come first", l.number, indent);
                seen_brackets = true;
                section = Section::brackets;
                u = Universe::create(basis);
            } else {
                throw ParseError("unknown section " + std::string(t), l.number, indent);
            }
            continue;
        }
        if (section == Section::none) throw ParseError("content before the first section header", l.number, indent);
        if (section == Section::basis) {
            auto w = detail::words(l.text);
            Parity p;
            if (w.front().first == "even") p = Parity::even;
            else if (w.front().first == "odd") p = Parity::odd;
            else throw ParseError("expected 'even' or 'odd'", l.number, indent);
            for (std::size_t i = 1; i < w.size(); ++i) {
                const auto& [n, col] = w[i];
                if (!is_identifier(n)) throw ParseError("invalid basis name '" + n + "'", l.number, col + 1);
                for (const auto& [m, mp] : basis)
                    if (m == n) throw ParseError("duplicate basis element '" + n + "'", l.number, col + 1);
                basis.emplace_back(n, p);
            }
            continue;
        }
        auto [lhs, col] = detail::split_assignment(l);
        auto w = detail::words(lhs);
        if (w.size() != 2) throw ParseError("expected '<a> <b> = ...'", l.number, indent);
        auto a = u->find(w[0].first), b = u->find(w[1].first);
        if (!a) throw ParseError("unknown basis element '" + w[0].first + "'", l.number, indent + w[0].second);
        if (!b) throw ParseError("unknown basis element '" + w[1].first + "'", l.number, indent + w[1].second);
        GradedPoly rhs = parse_polynomial(l.text.substr(col - 1), u, l.number, col);
        std::vector<Rational> coeffs(basis.size());
        for (const auto& [m, c] : rhs.terms()) {
            if (m.degree() != 1) throw ParseError("bracket must be a linear combination of basis elements", l.number, col);
            coeffs[m.factors().front().var.index] = c;
        }
        auto key = std::make_pair(a->index, b->index);
        if (explicit_.count(key)) throw ParseError("duplicate bracket", l.number, indent);
        explicit_.emplace(key, std::move(coeffs));
    }
    if (basis.empty()) throw ValidationError("missing [basis] section");

    const std::size_t n = basis.size();
    std::vector<Parity> parities;
    std::vector<std::string> names;
    for (const auto& [name, p] : basis) {
        names.push_back(name);
        parities.push_back(p);
    }
    std::vector<Rational> table(n * n * n);
    auto at = [&](std::size_t g, std::size_t a, std::size_t b) -> Rational& { return table[(g * n + a) * n + b]; };
    for (const auto& [key, coeffs] : explicit_) {
        auto [a, b] = key;
        int s = sign_pow(bit(parities[a]) * bit(parities[b]));
        for (std::size_t g = 0; g < n; ++g) {
            at(g, a, b) = coeffs[g];
            if (!explicit_.count({b, a})) at(g, b, a) = -coeffs[g] * s;
        }
    }
    return NamedStructureConstants{std::move(names), StructureConstants(std::move(parities), std::move(table))};
}

}  // namespace oddjac
