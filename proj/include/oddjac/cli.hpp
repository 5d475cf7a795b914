#pragma once

#include "oddjac/bv.hpp"
#include "oddjac/constructors.hpp"
#include "oddjac/forms.hpp"
#include "oddjac/jacobi.hpp"
#include "oddjac/parser.hpp"
#include "oddjac/poisson.hpp"
#include "oddjac/property_suite.hpp"
#include "oddjac/render.hpp"
#include "oddjac/report.hpp"
#include "oddjac/structure_file.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace oddjac::cli {

enum ExitCode : int { ok = 0, check_failed = 1, usage_error = 2 };

/// Everything a command prints. `value` is the computed object for value-producing
/// commands (bracket, poisson) and `components` the field for hvf/brst.
struct Outcome {
    std::string command;
    VerificationReport report;
    std::optional<std::string> value;
    std::optional<std::string> parity;
    std::vector<std::pair<std::string, std::string>> components;
    std::vector<std::string> info;
};

inline void print_human(const Outcome& o, std::ostream& out) {
    out << o.command << "\n";
    for (const auto& line : o.info) out << "  " << line << "\n";
    std::size_t width = 0;
    for (const auto& c : o.report.checks()) width = std::max(width, c.name.size());
    for (const auto& c : o.report.checks()) {
        out << "  " << std::left << std::setw(static_cast<int>(width)) << c.name << "  "
            << (c.passed() ? "pass" : "FAIL");
        if (!c.passed()) out << "  residual: " << render_canonical(c.residual);
        if (!c.note.empty()) out << "  [" << c.note << "]";
        out << "\n";
    }
    if (o.parity) out << "  parity: " << *o.parity << "\n";
    for (const auto& [coord, expr] : o.components) out << "  d/d" << coord << ": " << expr << "\n";
    if (o.value) out << "  = " << *o.value << "\n";
    out << "status: " << (o.report.passed() ? "pass" : "FAIL") << "\n";
}

inline void print_json(const Outcome& o, std::ostream& out) {
    nlohmann::ordered_json j;
    j["command"] = o.command;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : o.report.checks())
        j["checks"].push_back({{"name", c.name},
                               {"status", c.passed() ? "pass" : "fail"},
                               {"residual", render_canonical(c.residual)}});
    if (o.value) j["result"] = *o.value;
    if (o.parity || !o.components.empty()) {
        nlohmann::ordered_json field;
        if (o.parity) field["parity"] = *o.parity;
        nlohmann::ordered_json comps = nlohmann::ordered_json::object();
        for (const auto& [coord, expr] : o.components) comps[coord] = expr;
        field["components"] = comps;
        j["result"] = field;
    }
    j["status"] = o.report.passed() ? "pass" : "fail";
    out << j.dump(2) << "\n";
}

namespace detail {

inline void field_into(Outcome& o, const SuperVectorField& X) {
    o.parity = std::string(to_string(X.parity()));
    for (std::size_t a = 0; a < X.chart().dimension(); ++a)
        o.components.emplace_back(X.chart().coordinate_name(a), render_canonical(X.component(a)));
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot write '" + path + "'");
    f << text;
    if (!f) throw ValidationError("cannot write '" + path + "'");
}

/// One even formal variable per nonzero Jacobiator entry, so the witness names the
/// offending (a, b, g; e) together with its value.
inline GradedPoly jacobiator_witness(const NamedStructureConstants& sc) {
    auto jac = sc.constants.jacobiator();
    std::vector<VariableSpec> vars;
    for (const auto& [k, v] : jac)
        vars.emplace_back("J_" + sc.names[k[0]] + "_" + sc.names[k[1]] + "_" + sc.names[k[2]] + "_" + sc.names[k[3]],
                          Parity::even);
    UniversePtr u = Universe::create(vars);
    GradedPoly r = GradedPoly::zero(u);
    std::uint32_t i = 0;
    for (const auto& [k, v] : jac) r += GradedPoly::variable(u, VarId{i++}).scaled(v);
    return r;
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Outcome odd_contact_example(std::size_t n, const std::string& emit) {
    auto [J, fixture] = odd_contact(n);
    const Chart& chart = J.chart();
    const auto& cc = J.cotangent();
    const auto& ac = fixture.antitangent();

    Outcome o;
    o.command = "example odd-contact";
    o.info.push_back("n = " + std::to_string(n));
    o.info.push_back("S = " + render_canonical(J.S()));
    o.report = verify_structure(J);
    GradedPoly p_tau = cc.p(fixture.tau());
    o.report.add("ss_equals_2_p_tau_S", poisson_bracket(J.S(), J.S(), cc) - (p_tau * J.S()).scaled(Rational(2)),
                 "{S,S} - 2 p_tau S");
    o.report.add("phi_alpha", phi_S_pullback(J.S(), fixture.alpha(), cc, ac), "phi_S^* alpha");
    o.report.add("phi_dalpha", phi_S_pullback(J.S(), fixture.dalpha(), cc, ac) - J.S(), "phi_S^* d alpha - S");
    o.report.add("iQ_alpha", interior_product(J.Q(), fixture.alpha(), ac) - GradedPoly::constant(Rational(1), ac.universe()),
                 "i_Q alpha - 1");
    o.report.add("iQ_dalpha", interior_product(J.Q(), fixture.dalpha(), ac), "i_Q d alpha");

    if (!emit.empty()) {
        StructureFile file(chart);
        file.set_structure(J);
        file.add_function("one", GradedPoly::constant(Rational(1), cc.universe()));
        file.add_function("f1", cc.x(fixture.x(0)) * cc.x(fixture.tau()));
        file.add_function("s_gauge", cc.x(fixture.x(0)) * cc.x(fixture.x(0)));
        file.add_function("s_open", cc.x(fixture.xs(0)) * cc.x(fixture.tau()));
        file.add_form("alpha", fixture.alpha());
        file.add_form("dalpha", fixture.dalpha());
        write_file(emit, serialize(file, "odd contact structure, n = " + std::to_string(n)));
        o.info.push_back("wrote " + emit);
    }
    return o;
}

inline Outcome de_rham_example(std::size_t dim, const std::string& emit) {
    OddJacobiStructure J = de_rham(dim);
    Outcome o;
    o.command = "example de-rham";
    o.info.push_back("dim = " + std::to_string(dim));
    o.report = verify_structure(J);
    if (!emit.empty()) {
        StructureFile file(J.chart());
        file.set_structure(J);
        const auto& cc = J.cotangent();
        file.add_function("one", GradedPoly::constant(Rational(1), cc.universe()));
        file.add_function("f1", cc.x(0));
        file.add_function("w1", cc.x(0) * cc.x(dim));
        write_file(emit, serialize(file, "de Rham differential on Pi T R^" + std::to_string(dim)));
        o.info.push_back("wrote " + emit);
    }
    return o;
}

inline Outcome lie_schouten_example(const std::string& path, const std::string& emit, const std::string& emit_q) {
    NamedStructureConstants sc = parse_structure_constants(read_text(path));
    LieSchouten L = lie_schouten(sc.constants);
    Outcome o;
    o.command = "example lie-schouten";
    o.info.push_back("Q = " + render_canonical(L.q_manifold.Q_symbol()));
    o.info.push_back("S = " + render_canonical(L.schouten.S()));
    o.report.append(verify_structure(L.q_manifold), "q_manifold.");
    o.report.append(verify_structure(L.schouten), "schouten.");
    o.report.add("jacobiator", jacobiator_witness(sc), "graded Jacobiator of the structure constants");
    if (!emit.empty()) {
        StructureFile file(L.schouten.chart());
        file.set_structure(L.schouten);
        write_file(emit, serialize(file, "Schouten structure on Pi g*"));
        o.info.push_back("wrote " + emit);
    }
    if (!emit_q.empty()) {
        StructureFile file(L.q_manifold.chart());
        file.set_structure(L.q_manifold);
        write_file(emit_q, serialize(file, "homological vector field on Pi g"));
        o.info.push_back("wrote " + emit_q);
    }
    return o;
}

inline Outcome odd_symplectic_example(const std::string& path, const std::string& emit) {
    StructureFile in = load_structure_file(path);
    const GradedPoly& omega = in.form("omega");
    TwoForm w = TwoForm::from_form(omega, in.antitangent());
    OddJacobiStructure J = odd_symplectic(w);
    Outcome o;
    o.command = "example odd-symplectic";
    o.info.push_back("S = " + render_canonical(J.S()));
    o.report = verify_structure(J);
    o.report.add("phi_omega", phi_S_pullback(J.S(), omega, J.cotangent(), in.antitangent()) - J.S(),
                 "phi_S^* omega - S");
    if (!emit.empty()) {
        StructureFile file(in.chart());
        file.set_structure(J);
        file.add_form("omega", omega);
        write_file(emit, serialize(file, "odd symplectic structure"));
        o.info.push_back("wrote " + emit);
    }
    return o;
}

}  // namespace detail

/// Runs the command line `args` (without the program name). Returns the exit code:
/// 0 all checks pass, 1 a check failed, 2 usage, parse or validation error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Odd Jacobi structures: verification, brackets, BV gauge systems.", "oddjac"};
    app.set_help_all_flag("--help-all", "Show help for all subcommands");
    app.require_subcommand(1);
    app.fallthrough();
    bool json = false;
    app.add_flag("--json", json, "Emit a machine-readable JSON report");

    std::string file, f_name, g_name, F_expr, G_expr, s_name, emit, emit_q, sc_file, omega_file;
    SampleSpec spec;
    std::size_t contact_n = 1, rham_dim = 1;

    auto* verify = app.add_subcommand("verify", "Check the three structure conditions");
    verify->add_option("file", file, "Structure file")->required();

    auto* bracket = app.add_subcommand("bracket", "Odd Jacobi bracket of two named functions");
    bracket->add_option("file", file, "Structure file")->required();
    bracket->add_option("--f", f_name, "First function name")->required();
    bracket->add_option("--g", g_name, "Second function name")->required();

    auto* poisson = app.add_subcommand("poisson", "Canonical Poisson bracket on the cotangent chart");
    poisson->add_option("file", file, "Structure file")->required();
    poisson->add_option("--F", F_expr, "First expression")->required();
    poisson->add_option("--G", G_expr, "Second expression")->required();

    auto* hvf = app.add_subcommand("hvf", "Hamiltonian vector field of a named function");
    hvf->add_option("file", file, "Structure file")->required();
    hvf->add_option("--f", f_name, "Function name")->required();

    auto* brst = app.add_subcommand("brst", "Classical BRST operator of a named action");
    brst->add_option("file", file, "Structure file")->required();
    brst->add_option("--s", s_name, "Action name")->required();

    auto* gauge = app.add_subcommand("gauge", "Verify a BV gauge system");
    gauge->add_option("file", file, "Structure file")->required();
    gauge->add_option("--s", s_name, "Action name")->required();

    auto* props = app.add_subcommand("props", "Seeded randomized check of the bracket identities");
    props->add_option("file", file, "Structure file")->required();
    props->add_option("--seed", spec.seed, "Random seed")->capture_default_str();
    props->add_option("--samples", spec.samples, "Number of samples")->capture_default_str();
    props->add_option("--max-degree", spec.max_degree, "Maximal monomial degree")->capture_default_str();
    props->add_option("--max-terms", spec.max_terms, "Maximal number of terms")->capture_default_str();
    props->add_flag("--even-diagonal", spec.even_diagonal, "Check the Jacobi identity as [f,[f,f]] on even f");
    props->add_option("--threads", spec.threads, "Worker threads (0: hardware concurrency)")->capture_default_str();

    auto* example = app.add_subcommand("example", "Build, verify and optionally emit a standard structure");
    example->require_subcommand(1);
    auto* ex_lie = example->add_subcommand("lie-schouten", "Lie algebra Q-manifold and Schouten structure");
    ex_lie->add_option("sc-file", sc_file, "Structure constants file")->required();
    ex_lie->add_option("--emit", emit, "Write the Schouten structure file");
    ex_lie->add_option("--emit-q", emit_q, "Write the Q-manifold structure file");
    auto* ex_symp = example->add_subcommand("odd-symplectic", "Schouten structure of a constant odd two-form");
    ex_symp->add_option("omega-file", omega_file, "Structure file with form 'omega'")->required();
    ex_symp->add_option("--emit", emit, "Write the structure file");
    auto* ex_contact = example->add_subcommand("odd-contact", "Odd contact structure");
    ex_contact->add_option("--n", contact_n, "Number of even coordinates")->check(CLI::PositiveNumber)->capture_default_str();
    ex_contact->add_option("--emit", emit, "Write the structure file");
    auto* ex_rham = example->add_subcommand("de-rham", "de Rham differential");
    ex_rham->add_option("--dim", rham_dim, "Dimension")->check(CLI::PositiveNumber)->capture_default_str();
    ex_rham->add_option("--emit", emit, "Write the structure file");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return usage_error;
    }

    Outcome o;
    try {
        if (app.got_subcommand(example)) {
            if (example->got_subcommand(ex_contact)) o = detail::odd_contact_example(contact_n, emit);
            else if (example->got_subcommand(ex_rham)) o = detail::de_rham_example(rham_dim, emit);
            else if (example->got_subcommand(ex_lie)) o = detail::lie_schouten_example(sc_file, emit, emit_q);
            else o = detail::odd_symplectic_example(omega_file, emit);
        } else {
            StructureFile sf = load_structure_file(file);
            if (app.got_subcommand(verify)) {
                o.command = "verify";
                o.report = verify_structure(sf.structure());
            } else if (app.got_subcommand(bracket)) {
                o.command = "bracket";
                o.info.push_back("[" + f_name + ", " + g_name + "]");
                o.value = render_canonical(odd_jacobi_bracket(sf.function(f_name), sf.function(g_name), sf.structure()));
            } else if (app.got_subcommand(poisson)) {
                o.command = "poisson";
                const auto& u = sf.cotangent().universe();
                GradedPoly F = parse_polynomial(F_expr, u);
                GradedPoly G = parse_polynomial(G_expr, u);
                o.info.push_back("{" + render_canonical(F) + ", " + render_canonical(G) + "}");
                o.value = render_canonical(poisson_bracket(F, G, sf.cotangent()));
            } else if (app.got_subcommand(hvf)) {
                o.command = "hvf";
                o.info.push_back("X_" + f_name);
                detail::field_into(o, hamiltonian_vector_field(sf.function(f_name), sf.structure()));
            } else if (app.got_subcommand(brst)) {
                o.command = "brst";
                BRSTOperator d = brst_operator(sf.function(s_name), sf.structure());
                o.info.push_back("delta_" + s_name);
                o.report = d.report;
                detail::field_into(o, d.field);
            } else if (app.got_subcommand(gauge)) {
                o.command = "gauge";
                o.info.push_back("s = " + s_name);
                o.report = verify_gauge_system(GaugeSystemCandidate(sf.structure(), sf.function(s_name)));
            } else {
                o.command = "props";
                o.info.push_back("seed = " + std::to_string(spec.seed) + ", samples = " + std::to_string(spec.samples) +
                                 ", max degree = " + std::to_string(spec.max_degree));
                o.report = run_property_suite(sf.structure(), spec);
            }
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const std::logic_error& e) {
        err << "internal consistency check failed: " << e.what() << "\n";
        return check_failed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    }

    if (json) print_json(o, out);
    else print_human(o, out);
    return o.report.passed() ? ok : check_failed;
}

}  // namespace oddjac::cli
