#pragma once

#include "oddjac/jacobi.hpp"
#include "oddjac/report.hpp"
#include "oddjac/vector_field.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace oddjac {

struct SampleSpec {
    std::uint64_t seed = 1;
    std::size_t samples = 50;
    std::size_t max_degree = 3;
    std::size_t max_terms = 3;
    /// Check the Jacobi identity only as [f,[f,f]] = 0 on even f (polarization).
    bool even_diagonal = false;
    /// 0 picks std::thread::hardware_concurrency().
    std::size_t threads = 0;
};

/// Seeded generator of homogeneous base-chart polynomials with coefficients in
/// {-2, -1, 1, 2, 1/2, -1/2}.
class PolySampler {
public:
    PolySampler(const Chart& chart, std::uint64_t seed, std::size_t max_degree, std::size_t max_terms)
        : chart_(chart), rng_(seed), max_degree_(max_degree), max_terms_(std::max<std::size_t>(max_terms, 1)) {}

    std::size_t uniform(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng_() % n); }

    Parity parity() { return uniform(2) ? Parity::odd : Parity::even; }

    Rational coefficient() {
        static const std::array<Rational, 6> pool{Rational(-2), Rational(-1), Rational(1),
                                                  Rational(2),  Rational(1, 2), Rational(-1, 2)};
        return pool[uniform(pool.size())];
    }

    /// Random polynomial of the requested parity; never zero unless the chart has no
    /// monomial of that parity within the degree bound.
    GradedPoly homogeneous(Parity want) {
        const auto& u = chart_.universe();
        GradedPoly r = GradedPoly::zero(u);
        const std::size_t terms = 1 + uniform(max_terms_);
        for (std::size_t attempt = 0; attempt < 64 && r.size() < terms; ++attempt) {
            std::size_t degree = uniform(max_degree_ + 1);
            std::vector<VarId> word;
            for (std::size_t k = 0; k < degree && chart_.dimension() > 0; ++k)
                word.push_back(chart_.coordinate(uniform(chart_.dimension())));
            RawTerm t{coefficient(), std::move(word)};
            GradedPoly m = normalize(u, std::span<const RawTerm>(&t, 1));
            if (m.is_zero() || m.parity() != want) continue;
            r += m;
        }
        if (r.is_zero()) r = fallback(want);
        return r;
    }

    GradedPoly any() { return homogeneous(parity()); }

private:
    GradedPoly fallback(Parity want) {
        if (want == Parity::even) return chart_.constant(coefficient());
        for (std::size_t a = 0; a < chart_.dimension(); ++a)
            if (is_odd(chart_.parity(a))) return chart_.x(a).scaled(coefficient());
        return chart_.constant(coefficient());
    }

    const Chart& chart_;
    std::mt19937_64 rng_;
    std::size_t max_degree_;
    std::size_t max_terms_;
};

namespace detail {

struct PropertySample {
    GradedPoly f, g, h;
    GradedPoly closed;      // Q-closed, possibly zero
    GradedPoly not_closed;  // Q(not_closed) != 0, or zero if none was found
};

/// Check names in report order.
inline const std::vector<std::string>& property_names() {
    static const std::vector<std::string> names{
        "coordinate_form",        "graded_symmetry",          "jacobi_identity",
        "generalised_leibniz",    "anomaly_formula",          "bracket_parity",
        "odd_self_bracket",       "q_derivation",             "q_hamiltonian_bracket",
        "hamiltonian_definition", "hamiltonian_antimorphism", "jacobi_field_derivation",
        "jacobi_field_hamiltonian", "jacobi_if_q_closed",       "q_closed_if_jacobi"};
    return names;
}

inline const std::vector<std::string>& property_notes() {
    static const std::vector<std::string> notes{
        "nested bracket - coordinate display",
        "[f,g] + (-1)^{(f+1)(g+1)} [g,f]",
        "cyclic sum (-1)^{(f+1)(h+1)} [f,[g,h]]",
        "[f,gh] - [f,g]h - (-1)^{(f+1)g} g[f,h] + [f,1]gh",
        "[f,1] - (-1)^f Q(f)",
        "[f,g] when its parity is not f+g+1",
        "[f,f] for odd f",
        "Q[f,g] - [Qf,g] - (-1)^{f+1} [f,Qg]",
        "[Q,X_f] + X_{Q(f)}",
        "X_f(g) - (-1)^f [f,g] + Q(f) g",
        "[X_f,X_g] + X_{[f,g]}",
        "X[f,g] - [Xf,g] - (-1)^{X(f+1)} [f,Xg] for Jacobi fields X",
        "[X,X_f] - (-1)^X X_{X(f)} for Jacobi fields X",
        "{X_f,S} + {X_f,Q} for Q-closed f",
        "Q(f) for f with Q(f) != 0 whose X_f is nevertheless Jacobi"};
    return notes;
}

using SampleResult = std::vector<std::optional<GradedPoly>>;  // nullopt: not applicable

inline SampleResult evaluate_sample(const PropertySample& s, const OddJacobiStructure& J, bool even_diagonal) {
    const auto& cc = J.cotangent();
    const auto& u = cc.universe();
    const GradedPoly one = GradedPoly::constant(Rational(1), u);
    auto br = [&](const GradedPoly& a, const GradedPoly& b) { return odd_jacobi_bracket_nested(a, b, J); };
    auto Q = [&](const GradedPoly& a) { return J.apply_Q(a); };
    auto sg = [](int e) { return Rational(sign_pow(e)); };
    auto X = [&](const GradedPoly& a) { return hamiltonian_vector_field(a, J); };
    auto sym = [&](const SuperVectorField& v) { return symbol(v, cc); };

    const GradedPoly &f = s.f, &g = s.g, &h = s.h;
    const int pf = bit(f.parity().value_or(Parity::even));
    const int pg = bit(g.parity().value_or(Parity::even));
    const int ph = bit(h.parity().value_or(Parity::even));

    SampleResult out(property_names().size());
    std::size_t k = 0;

    GradedPoly fg = br(f, g);
    out[k++] = fg - odd_jacobi_bracket_coordinate(f, g, J);
    out[k++] = fg + br(g, f).scaled(sg((pf + 1) * (pg + 1)));
    if (even_diagonal) {
        if (pf == 0) out[k] = br(f, br(f, f));
        ++k;
    } else {
        out[k++] = br(f, br(g, h)).scaled(sg((pf + 1) * (ph + 1))) + br(g, br(h, f)).scaled(sg((pg + 1) * (pf + 1))) +
                   br(h, fg).scaled(sg((ph + 1) * (pg + 1)));
    }
    GradedPoly f1 = br(f, one);
    out[k++] = br(f, g * h) - fg * h - (g * br(f, h)).scaled(sg((pf + 1) * pg)) + f1 * g * h;
    out[k++] = f1 - Q(f).scaled(sg(pf));
    {
        auto p = fg.parity();
        bool ok = fg.is_zero() || (p && bit(*p) == (pf + pg + 1) % 2);
        out[k++] = ok ? GradedPoly::zero(u) : fg;
    }
    if (pf == 1) out[k] = br(f, f);
    ++k;
    out[k++] = Q(fg) - br(Q(f), g) - br(f, Q(g)).scaled(sg(pf + 1));

    SuperVectorField Xf = X(f);
    GradedPoly Xf_hat = sym(Xf);
    out[k++] = poisson_bracket(J.Q_symbol(), Xf_hat, cc) + sym(X(Q(f)));
    out[k++] = apply(Xf, g) - fg.scaled(sg(pf)) + Q(f) * g;
    out[k++] = poisson_bracket(Xf_hat, sym(X(g)), cc) + sym(X(fg));

    // Jacobi vector fields: Q itself and X_k for Q-closed k.
    std::vector<SuperVectorField> fields{J.Q()};
    if (!s.closed.is_zero()) fields.push_back(X(s.closed));
    GradedPoly derivation = GradedPoly::zero(u);
    GradedPoly hamiltonian = GradedPoly::zero(u);
    for (const auto& Y : fields) {
        const int py = bit(Y.parity());
        if (derivation.is_zero())
            derivation = apply(Y, fg) - br(apply(Y, f), g) - br(f, apply(Y, g)).scaled(sg(py * (pf + 1)));
        if (hamiltonian.is_zero())
            hamiltonian = poisson_bracket(sym(Y), Xf_hat, cc) - sym(X(apply(Y, f))).scaled(sg(py));
    }
    out[k++] = derivation;
    out[k++] = hamiltonian;

    if (!s.closed.is_zero()) {
        auto r = is_jacobi_vector_field(X(s.closed), J);
        out[k] = r.at("preserves_S").residual + r.at("preserves_Q").residual;
    }
    ++k;
    if (!s.not_closed.is_zero())
        out[k] = is_jacobi_vector_field(X(s.not_closed), J).passed() ? Q(s.not_closed) : GradedPoly::zero(u);
    ++k;
    return out;
}

inline std::vector<PropertySample> draw_samples(const OddJacobiStructure& J, const SampleSpec& spec) {
    PolySampler sampler(J.chart(), spec.seed, spec.max_degree, spec.max_terms);
    std::vector<PropertySample> samples;
    samples.reserve(spec.samples);
    for (std::size_t i = 0; i < spec.samples; ++i) {
        PropertySample s;
        s.f = spec.even_diagonal ? sampler.homogeneous(Parity::even) : sampler.any();
        s.g = sampler.any();
        s.h = sampler.any();
        GradedPoly c = sampler.any();
        GradedPoly qc = J.apply_Q(c);
        s.closed = qc.is_zero() ? c : qc;
        s.not_closed = GradedPoly::zero(J.chart().universe());
        for (int attempt = 0; attempt < 8; ++attempt) {
            GradedPoly m = sampler.any();
            if (!J.apply_Q(m).is_zero()) {
                s.not_closed = m;
                break;
            }
        }
        samples.push_back(std::move(s));
    }
    return samples;
}

}  // namespace detail

/// Seeded randomized check of the bracket identities. Samples are drawn sequentially
/// from the seed, evaluated possibly in parallel, and merged in sample order, so the
/// report depends only on (J, spec minus threads). Each check carries the residual of
/// its first failing sample as witness.
inline VerificationReport run_property_suite(const OddJacobiStructure& J, const SampleSpec& spec) {
    const std::vector<detail::PropertySample> samples = detail::draw_samples(J, spec);

    std::vector<detail::SampleResult> results(samples.size());
    std::size_t threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(samples.size(), 1));
    if (threads <= 1) {
        for (std::size_t i = 0; i < samples.size(); ++i)
            results[i] = detail::evaluate_sample(samples[i], J, spec.even_diagonal);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < samples.size(); i += threads)
                    results[i] = detail::evaluate_sample(samples[i], J, spec.even_diagonal);
            });
    }

    const auto& names = detail::property_names();
    const auto& notes = detail::property_notes();
    VerificationReport report;
    for (std::size_t c = 0; c < names.size(); ++c) {
        std::size_t applicable = 0, failed = 0;
        std::optional<std::size_t> first;
        GradedPoly witness = GradedPoly::zero(J.cotangent().universe());
        for (std::size_t i = 0; i < results.size(); ++i) {
            const auto& r = results[i][c];
            if (!r) continue;
            ++applicable;
            if (r->is_zero()) continue;
            ++failed;
            if (!first) {
                first = i;
                witness = *r;
            }
        }
        std::string note = notes[c] + "; " + std::to_string(applicable) + " samples";
        if (first) note += ", " + std::to_string(failed) + " failed, witness from sample " + std::to_string(*first);
        report.add(names[c], witness, note);
    }
    return report;
}

/// Counts of Q-closed and non-closed Hamiltonians the suite tests for a spec.
inline std::pair<std::size_t, std::size_t> q_closure_counts(const OddJacobiStructure& J, const SampleSpec& spec) {
    std::size_t closed = 0, open = 0;
    for (const auto& s : detail::draw_samples(J, spec)) {
        if (!s.closed.is_zero()) ++closed;
        if (!s.not_closed.is_zero()) ++open;
    }
    return {closed, open};
}

}  // namespace oddjac
