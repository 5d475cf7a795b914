#pragma once

#include "oddjac/chart.hpp"
#include "oddjac/errors.hpp"
#include "oddjac/forms.hpp"
#include "oddjac/graded_poly.hpp"
#include "oddjac/jacobi.hpp"
#include "oddjac/vector_field.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace oddjac {

/// Structure constants [e_a, e_b] = c^g_{ab} e_g of a Lie superalgebra, stored as
/// c(g, a, b). Graded antisymmetry c^g_{ab} = -(-1)^{ab} c^g_{ba} and parity
/// compatibility (c^g_{ab} = 0 unless g = a + b) are checked on construction.
class StructureConstants {
public:
    StructureConstants(std::vector<Parity> parities, std::vector<Rational> table)
        : parities_(std::move(parities)), c_(std::move(table)) {
        const std::size_t n = parities_.size();
        if (c_.size() != n * n * n) throw ValidationError("structure constant table must have dimension^3 entries");
        for (std::size_t g = 0; g < n; ++g) {
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = 0; b < n; ++b) {
                    const Rational& v = (*this)(g, a, b);
                    if (v.is_zero()) continue;
                    if (parities_[g] != parities_[a] + parities_[b])
                        throw ValidationError("structure constant c^" + std::to_string(g + 1) + "_" +
                                              std::to_string(a + 1) + std::to_string(b + 1) +
                                              " violates the grading");
                    Rational partner = (*this)(g, b, a) * sign_pow(bit(parities_[a]) * bit(parities_[b]));
                    if (v != -partner)
                        throw ValidationError("structure constants are not graded antisymmetric in (" +
                                              std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
                }
            }
        }
    }

    /// Zero table of the given parities; fill with `with`.
    static StructureConstants zero(std::vector<Parity> parities) {
        const std::size_t n = parities.size();
        return StructureConstants(std::move(parities), std::vector<Rational>(n * n * n));
    }

    /// Sets [e_a, e_b] = value e_g together with the graded antisymmetric partner.
    StructureConstants with(std::size_t g, std::size_t a, std::size_t b, const Rational& value) const {
        std::vector<Rational> t = c_;
        const std::size_t n = dimension();
        t.at((g * n + a) * n + b) = value;
        t.at((g * n + b) * n + a) = -value * sign_pow(bit(parities_.at(a)) * bit(parities_.at(b)));
        if (a == b && !is_odd(parities_[a]) && !value.is_zero())
            throw ValidationError("[e,e] must vanish for even e");
        return StructureConstants(parities_, std::move(t));
    }

    std::size_t dimension() const noexcept { return parities_.size(); }
    const std::vector<Parity>& parities() const noexcept { return parities_; }
    Parity parity(std::size_t a) const { return parities_.at(a); }

    const Rational& operator()(std::size_t g, std::size_t a, std::size_t b) const {
        const std::size_t n = dimension();
        return c_.at((g * n + a) * n + b);
    }

    /// Graded Jacobiator
    ///   J^e_{abg} = sum_d (-1)^{ag} c^d_{bg} c^e_{ad} + (-1)^{ba} c^d_{ga} c^e_{bd} + (-1)^{gb} c^d_{ab} c^e_{gd}.
    /// Keys are (a, b, g, e); only nonzero entries are stored.
    std::map<std::vector<std::size_t>, Rational> jacobiator() const {
        const std::size_t n = dimension();
        auto p = [&](std::size_t i) { return bit(parities_[i]); };
        std::map<std::vector<std::size_t>, Rational> out;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t g = 0; g < n; ++g)
                    for (std::size_t e = 0; e < n; ++e) {
                        Rational s = 0;
                        for (std::size_t d = 0; d < n; ++d) {
                            s += sign_pow(p(a) * p(g)) * (*this)(d, b, g) * (*this)(e, a, d);
                            s += sign_pow(p(b) * p(a)) * (*this)(d, g, a) * (*this)(e, b, d);
                            s += sign_pow(p(g) * p(b)) * (*this)(d, a, b) * (*this)(e, g, d);
                        }
                        if (!s.is_zero()) out.emplace(std::vector<std::size_t>{a, b, g, e}, s);
                    }
        return out;
    }

    bool satisfies_jacobi() const { return jacobiator().empty(); }

private:
    std::vector<Parity> parities_;
    std::vector<Rational> c_;
};

struct LieSchouten {
    OddJacobiStructure q_manifold;  // on Pi g, S = 0
    OddJacobiStructure schouten;    // on Pi g*, Q = 0
    int weight = -1;                // both structures are linear; recorded, not enforced
};

/// Q_g = 1/2 (-1)^a xi^a xi^b c^g_{ba} d/dxi^g on Pi g and
/// S = 1/2 (-1)^b p_a p_b c^g_{ab} eta_g on Pi g*. Coordinates have parity (basis + 1).
inline LieSchouten lie_schouten(const StructureConstants& sc) {
    const std::size_t n = sc.dimension();
    std::vector<VariableSpec> xs, etas;
    for (std::size_t a = 0; a < n; ++a) {
        xs.emplace_back("xi" + std::to_string(a + 1), sc.parity(a) + Parity::odd);
        etas.emplace_back("eta" + std::to_string(a + 1), sc.parity(a) + Parity::odd);
    }
    Chart pg = Chart::create("Pi_g", xs);
    Chart pgs = Chart::create("Pi_g_dual", etas);

    std::vector<GradedPoly> q(n, GradedPoly::zero(pg.universe()));
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                const Rational& c = sc(g, b, a);
                if (c.is_zero()) continue;
                q[g] += (pg.x(a) * pg.x(b)).scaled(c * sign_pow(bit(sc.parity(a))) / 2);
            }
    SuperVectorField Q(pg, std::move(q), Parity::odd);

    CotangentChart cs(pgs);
    GradedPoly S = GradedPoly::zero(cs.universe());
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t g = 0; g < n; ++g) {
                const Rational& c = sc(g, a, b);
                if (c.is_zero()) continue;
                S += (cs.p(a) * cs.p(b) * cs.x(g)).scaled(c * sign_pow(bit(sc.parity(b))) / 2);
            }

    return LieSchouten{
        OddJacobiStructure::create(pg, GradedPoly::zero(pg.universe()), Q),
        OddJacobiStructure(AlmostSchouten::create(cs, S), SuperVectorField::zero(pgs, Parity::odd)),
        -1};
}

namespace detail {

/// Inverse of a square rational matrix by Gauss-Jordan elimination; nullopt if singular.
inline std::optional<std::vector<std::vector<Rational>>> invert(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col].is_zero()) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(m[pivot], m[col]);
        std::swap(inv[pivot], inv[col]);
        Rational k = m[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] /= k;
            inv[col][j] /= k;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col].is_zero()) continue;
            Rational f = m[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[r][j] -= f * m[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

}  // namespace detail

/// Constant odd two-form with matrix w_{AB} = d/d(d_A) d/d(d_B) omega, so that
/// omega = 1/2 w_{AB} d_B d_A. Graded symmetric: w_{AB} = (-1)^{(A+1)(B+1)} w_{BA},
/// zero unless x^A and x^B have opposite parity, and invertible.
class TwoForm {
public:
    TwoForm(Chart chart, std::vector<std::vector<Rational>> w) : chart_(std::move(chart)), w_(std::move(w)) {
        const std::size_t n = chart_.dimension();
        if (w_.size() != n) throw ValidationError("two-form matrix must be square of the chart dimension");
        for (const auto& row : w_)
            if (row.size() != n) throw ValidationError("two-form matrix must be square of the chart dimension");
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (w_[a][b].is_zero()) continue;
                if (chart_.parity(a) == chart_.parity(b))
                    throw ValidationError("odd two-form pairs " + chart_.coordinate_name(a) + " with " +
                                          chart_.coordinate_name(b) + " of the same parity");
                int s = sign_pow((bit(chart_.parity(a)) + 1) * (bit(chart_.parity(b)) + 1));
                if (w_[a][b] != w_[b][a] * s) throw ValidationError("two-form matrix is not graded symmetric");
            }
        auto inv = detail::invert(w_);
        if (!inv) throw ValidationError("two-form is degenerate");
        inverse_ = std::move(*inv);
    }

    /// From a form on the antitangent chart. Only constant coefficients are supported.
    static TwoForm from_form(const GradedPoly& omega, const AntitangentChart& ac) {
        if (!ac.owns(omega)) throw ValidationError("omega must be a form on the chart '" + ac.base().name() + "'");
        for (const auto& [m, c] : omega.terms()) {
            std::size_t fibres = 0;
            for (const auto& f : m.factors()) {
                if (!ac.is_fiber(f.var)) throw ValidationError("only constant two-forms are supported");
                fibres += f.exponent;
            }
            if (fibres != 2) throw ValidationError("omega must be a two-form");
        }
        const std::size_t n = ac.dimension();
        std::vector<std::vector<Rational>> w(n, std::vector<Rational>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                GradedPoly e = omega.derivative(ac.fiber(b)).derivative(ac.fiber(a));
                if (!e.is_zero()) w[a][b] = e.terms().begin()->second;
            }
        return TwoForm(ac.base(), std::move(w));
    }

    const Chart& chart() const noexcept { return chart_; }
    const Rational& operator()(std::size_t a, std::size_t b) const { return w_.at(a).at(b); }
    const Rational& inverse(std::size_t a, std::size_t b) const { return inverse_.at(a).at(b); }

    GradedPoly to_form(const AntitangentChart& ac) const {
        require_same_chart(ac.base(), chart_);
        GradedPoly r = GradedPoly::zero(ac.universe());
        for (std::size_t a = 0; a < w_.size(); ++a)
            for (std::size_t b = 0; b < w_.size(); ++b)
                if (!w_[a][b].is_zero()) r += (ac.d(b) * ac.d(a)).scaled(w_[a][b] / 2);
        return r;
    }

private:
    Chart chart_;
    std::vector<std::vector<Rational>> w_;
    std::vector<std::vector<Rational>> inverse_;
};

/// S = -1/2 w^{AB} p_B p_A with w^{AB} the inverse matrix, Q = 0. This is the
/// normalization with phi_S^*(omega) = S.
inline OddJacobiStructure odd_symplectic(const TwoForm& w) {
    CotangentChart cc(w.chart());
    const std::size_t n = cc.dimension();
    GradedPoly S = GradedPoly::zero(cc.universe());
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (!w.inverse(a, b).is_zero()) S += (cc.p(b) * cc.p(a)).scaled(-w.inverse(a, b) / 2);
    return OddJacobiStructure(AlmostSchouten::create(cc, S), SuperVectorField::zero(w.chart(), Parity::odd));
}

/// Canonical constant form -sum_a d_xs_a d_x_a on the chart (x1..xn even, xs1..xsn odd).
inline TwoForm canonical_odd_symplectic(std::size_t n) {
    if (n == 0) throw ValidationError("dimension must be at least 1");
    std::vector<VariableSpec> coords;
    for (std::size_t a = 0; a < n; ++a) coords.emplace_back("x" + std::to_string(a + 1), Parity::even);
    for (std::size_t a = 0; a < n; ++a) coords.emplace_back("xs" + std::to_string(a + 1), Parity::odd);
    Chart chart = Chart::create("PiTstar_R" + std::to_string(n), coords);
    AntitangentChart ac(chart);
    GradedPoly omega = GradedPoly::zero(ac.universe());
    for (std::size_t a = 0; a < n; ++a) omega -= ac.d(n + a) * ac.d(a);
    return TwoForm::from_form(omega, ac);
}

/// (S = 0, Q); Q must be homological.
inline OddJacobiStructure q_manifold(const SuperVectorField& Q) {
    OddJacobiStructure J = OddJacobiStructure::create(Q.chart(), GradedPoly::zero(Q.chart().universe()), Q);
    if (!verify_structure(J).passed("homological")) throw ValidationError("Q is not homological");
    return J;
}

/// de Rham differential d = d_x^i d/dx^i on Pi T R^dim.
inline OddJacobiStructure de_rham(std::size_t dim) {
    if (dim == 0) throw ValidationError("dimension must be at least 1");
    std::vector<VariableSpec> coords;
    for (std::size_t i = 0; i < dim; ++i) coords.emplace_back("x" + std::to_string(i + 1), Parity::even);
    AntitangentChart ac(Chart::create("R" + std::to_string(dim), coords));
    Chart total = ac.total_chart();
    std::vector<GradedPoly> comps(total.dimension(), GradedPoly::zero(total.universe()));
    for (std::size_t i = 0; i < dim; ++i) comps[i] = total.x(dim + i);
    return q_manifold(SuperVectorField(total, std::move(comps), Parity::odd));
}

/// Forms and the explicit coordinate bracket belonging to the odd contact structure.
class ContactFixture {
public:
    ContactFixture(Chart chart, std::size_t n)
        : chart_(std::move(chart)), ac_(chart_), n_(n), alpha_(GradedPoly::zero(ac_.universe())),
          dalpha_(GradedPoly::zero(ac_.universe())) {
        alpha_ = ac_.d(tau());
        for (std::size_t a = 0; a < n_; ++a) {
            alpha_ -= ac_.x(xs(a)) * ac_.d(x(a));
            dalpha_ -= ac_.d(xs(a)) * ac_.d(x(a));
        }
    }

    const AntitangentChart& antitangent() const noexcept { return ac_; }
    /// alpha = d_tau - xs_a d_x_a
    const GradedPoly& alpha() const noexcept { return alpha_; }
    /// d alpha = -d_xs_a d_x_a
    const GradedPoly& dalpha() const noexcept { return dalpha_; }

    /// [f,g] = (-1)^{f+1} df/dxs_a dg/dx_a - df/dx_a dg/dxs_a
    ///       + xs_a df/dxs_a dg/dtau - (-1)^{f+1} df/dtau xs_a dg/dxs_a
    ///       - f dg/dtau + (-1)^{f+1} df/dtau g
    /// `literal_last_line` flips the sign of the last line.
    GradedPoly explicit_bracket(const GradedPoly& f, const GradedPoly& g, bool literal_last_line = false) const {
        chart_.require_function(f, "f");
        chart_.require_function(g, "g");
        auto one = [&](const GradedPoly& fp, Parity pf) {
            GradedPoly r = GradedPoly::zero(chart_.universe());
            if (fp.is_zero()) return r;
            Rational s(sign_pow(bit(pf) + 1));
            GradedPoly ft = fp.derivative(chart_.coordinate(tau()));
            GradedPoly gt = g.derivative(chart_.coordinate(tau()));
            for (std::size_t a = 0; a < n_; ++a) {
                GradedPoly fx = fp.derivative(chart_.coordinate(x(a)));
                GradedPoly fs = fp.derivative(chart_.coordinate(xs(a)));
                GradedPoly gx = g.derivative(chart_.coordinate(x(a)));
                GradedPoly gs = g.derivative(chart_.coordinate(xs(a)));
                GradedPoly va = chart_.x(xs(a));
                r += (fs * gx).scaled(s);
                r -= fx * gs;
                r += va * fs * gt;
                r -= (ft * va * gs).scaled(s);
            }
            GradedPoly last = (ft * g).scaled(s) - fp * gt;
            r += literal_last_line ? -last : last;
            return r;
        };
        if (auto pf = f.parity()) return one(f, *pf);
        auto [even, odd] = f.split_by_parity();
        return one(even, Parity::even) + one(odd, Parity::odd);
    }

    std::size_t x(std::size_t a) const { return a; }
    std::size_t xs(std::size_t a) const { return n_ + a; }
    std::size_t tau() const { return 2 * n_; }

private:
    Chart chart_;
    AntitangentChart ac_;
    std::size_t n_;
    GradedPoly alpha_;
    GradedPoly dalpha_;
};

struct OddContact {
    OddJacobiStructure structure;
    ContactFixture fixture;
};

/// Chart (x1..xn even; xs1..xsn, tau odd), S = p_xs_a (p_x_a + xs_a p_tau), Q = -d/dtau.
inline OddContact odd_contact(std::size_t n) {
    if (n == 0) throw ValidationError("n must be at least 1");
    std::vector<VariableSpec> coords;
    for (std::size_t a = 0; a < n; ++a) coords.emplace_back("x" + std::to_string(a + 1), Parity::even);
    for (std::size_t a = 0; a < n; ++a) coords.emplace_back("xs" + std::to_string(a + 1), Parity::odd);
    coords.emplace_back("tau", Parity::odd);
    Chart chart = Chart::create("contact" + std::to_string(n), coords);
    CotangentChart cc(chart);
    GradedPoly S = GradedPoly::zero(cc.universe());
    for (std::size_t a = 0; a < n; ++a) S += cc.p(n + a) * (cc.p(a) + cc.x(n + a) * cc.p(2 * n));
    std::vector<GradedPoly> q(chart.dimension(), GradedPoly::zero(chart.universe()));
    q[2 * n] = chart.constant(-1);
    SuperVectorField Q(chart, std::move(q), Parity::odd);
    return OddContact{OddJacobiStructure(AlmostSchouten::create(cc, S), Q), ContactFixture(chart, n)};
}

}  // namespace oddjac
