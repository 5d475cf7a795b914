#include "test_support.hpp"

#include <random>

using namespace oddjac;
using namespace oddjac::test;

namespace {

struct Bracket {
    std::size_t a, b, g;
    long value;
};

StructureConstants table(std::vector<int> parities, const std::vector<Bracket>& brackets) {
    std::vector<Parity> p;
    for (int b : parities) p.push_back(parity_from_bit(b));
    auto sc = StructureConstants::zero(p);
    for (const auto& [a, b, g, v] : brackets) sc = sc.with(g, a, b, Rational(v));
    return sc;
}

struct NamedTable {
    const char* name;
    StructureConstants sc;
};

std::vector<NamedTable> tables() {
    return {
        {"affine2", table({0, 0}, {{0, 1, 0, 1}})},
        {"abelian3", table({0, 0, 0}, {})},
        {"sl2", table({0, 0, 0}, {{0, 1, 2, 1}, {2, 0, 0, 2}, {2, 1, 1, -2}})},
        {"violating", table({0, 0, 0}, {{0, 1, 1, 1}, {1, 2, 0, 1}, {0, 2, 2, 1}})},
        {"super11", table({0, 1}, {{1, 1, 0, 1}})},
        {"super_heisenberg", table({0, 1, 0}, {{1, 1, 0, 1}, {2, 1, 1, 1}, {2, 0, 0, 2}})},
        {"super_violating", table({0, 1, 0}, {{1, 1, 0, 1}, {2, 1, 1, 1}, {2, 0, 0, 1}})},
        {"osp12", table({0, 0, 0, 1, 1}, {{0, 1, 1, 2}, {0, 2, 2, -2}, {1, 2, 0, 1}, {0, 3, 3, 1}, {0, 4, 4, -1},
                                          {1, 4, 3, -1}, {2, 3, 4, -1}, {3, 3, 1, 2}, {4, 4, 2, -2}, {3, 4, 0, 1}})},
    };
}

TEST(StructureConstants, AntisymmetryAndGradingAreValidated) {
    std::vector<Rational> t(8);
    t[(0 * 2 + 0) * 2 + 1] = 1;  // c^1_12 without its partner
    EXPECT_THROW(StructureConstants({Parity::even, Parity::even}, t), ValidationError);
    EXPECT_THROW(StructureConstants({Parity::even}, {}), ValidationError);
    auto sc = StructureConstants::zero({Parity::even, Parity::odd});
    // [e1, e2] is odd, so it cannot land on e1
    EXPECT_THROW(sc.with(0, 0, 1, Rational(1)), ValidationError);
    EXPECT_THROW(sc.with(0, 0, 0, Rational(1)), ValidationError);
    // odd-odd brackets are symmetric
    auto s11 = sc.with(0, 1, 1, Rational(1));
    EXPECT_EQ(s11(0, 1, 1), Rational(1));
}

TEST(StructureConstants, Jacobiator) {
    for (const auto& [name, sc] : tables()) {
        bool violating = std::string(name).find("violating") != std::string::npos;
        EXPECT_EQ(sc.satisfies_jacobi(), !violating) << name;
        EXPECT_EQ(sc.jacobiator().empty(), !violating) << name;
    }
}

TEST(LieSchouten, TwoDimensionalAlgebra) {
    auto L = lie_schouten(tables()[0].sc);
    const auto& Q = L.q_manifold;
    const auto& S = L.schouten;
    EXPECT_EQ(Q.chart().name(), "Pi_g");
    EXPECT_EQ(S.chart().name(), "Pi_g_dual");
    EXPECT_EQ(Q.Q_symbol(), P(Q.cotangent().universe(), "-xi1*xi2*p_xi1"));
    EXPECT_EQ(S.S(), P(S.cotangent().universe(), "eta1*p_eta1*p_eta2"));
    EXPECT_TRUE(verify_structure(Q).passed());
    EXPECT_TRUE(verify_structure(S).passed());
    EXPECT_EQ(L.weight, -1);
}

TEST(LieSchouten, StatusesAgreeWithJacobi) {
    for (const auto& [name, sc] : tables()) {
        auto L = lie_schouten(sc);
        bool jac = sc.satisfies_jacobi();
        EXPECT_EQ(verify_structure(L.q_manifold).passed("homological"), jac) << name;
        EXPECT_EQ(verify_structure(L.schouten).passed("compatibility"), jac) << name;
        EXPECT_TRUE(verify_structure(L.schouten).passed("invariance")) << name;
    }
}

TEST(LieSchouten, CoordinateParityIsShifted) {
    auto L = lie_schouten(tables()[4].sc);
    EXPECT_EQ(L.q_manifold.chart().parity(0), Parity::odd);
    EXPECT_EQ(L.q_manifold.chart().parity(1), Parity::even);
}

TEST(OddSymplectic, Canonical) {
    auto w = canonical_odd_symplectic(1);
    auto J = odd_symplectic(w);
    EXPECT_EQ(J.S(), P(J.cotangent().universe(), "p_x1*p_xs1"));
    EXPECT_TRUE(J.Q().is_zero());
    EXPECT_TRUE(verify_structure(J).passed());
    AntitangentChart ac(w.chart());
    EXPECT_EQ(phi_S_pullback(J.S(), w.to_form(ac), J.cotangent(), ac), J.S());
    EXPECT_EQ(w.to_form(ac), P(ac.universe(), "-d_xs1*d_x1"));
}

TEST(OddSymplectic, RandomNondegenerateForms) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> entry(-3, 3);
    auto w = canonical_odd_symplectic(2);
    const Chart& c = w.chart();
    AntitangentChart ac(c);
    int built = 0;
    for (int trial = 0; trial < 40 && built < 10; ++trial) {
        std::vector<std::vector<Rational>> m(4, std::vector<Rational>(4));
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b) {
                Rational k = entry(rng);
                m[a][2 + b] = k;
                m[2 + b][a] = k;
            }
        Rational det = m[0][2] * m[1][3] - m[0][3] * m[1][2];
        if (det.is_zero()) {
            EXPECT_THROW(TwoForm(c, m), ValidationError);
            continue;
        }
        TwoForm form(c, m);
        auto J = odd_symplectic(form);
        EXPECT_TRUE(verify_structure(J).passed());
        EXPECT_EQ(phi_S_pullback(J.S(), form.to_form(ac), J.cotangent(), ac), J.S());
        EXPECT_EQ(TwoForm::from_form(form.to_form(ac), ac).to_form(ac), form.to_form(ac));
        ++built;
    }
    EXPECT_EQ(built, 10);
}

TEST(OddSymplectic, InvalidForms) {
    auto w = canonical_odd_symplectic(1);
    const Chart& c = w.chart();
    AntitangentChart ac(c);
    EXPECT_THROW(TwoForm::from_form(P(ac.universe(), "x1*d_xs1*d_x1"), ac), ValidationError);
    EXPECT_THROW(TwoForm::from_form(P(ac.universe(), "d_x1"), ac), ValidationError);
    EXPECT_THROW(TwoForm::from_form(GradedPoly::zero(ac.universe()), ac), ValidationError);
    Chart evens = Chart::create("evens", {{"a", Parity::even}, {"b", Parity::even}});
    EXPECT_THROW(TwoForm(evens, {{Rational(0), Rational(1)}, {Rational(-1), Rational(0)}}), ValidationError);
    EXPECT_THROW(TwoForm(c, {{Rational(0)}}), ValidationError);
}

TEST(QManifold, RejectsNonHomological) {
    Chart c = mixed_chart();
    auto Q = SuperVectorField::from_components(c, {{"x", c.x("xi")}, {"xi", c.x("x")}});
    EXPECT_THROW(q_manifold(Q), ValidationError);
    auto ok = SuperVectorField::from_components(c, {{"x", c.x("xi")}});
    EXPECT_NO_THROW(q_manifold(ok));
}

TEST(DeRham, Shape) {
    auto J = de_rham(2);
    EXPECT_EQ(J.chart().name(), "PiT_R2");
    EXPECT_EQ(J.chart().dimension(), 4u);
    EXPECT_TRUE(verify_structure(J).passed());
    const Chart& c = J.chart();
    EXPECT_EQ(J.apply_Q(c.x("x1") * c.x("x2")), c.x("d_x1") * c.x("x2") + c.x("x1") * c.x("d_x2"));
    EXPECT_THROW(de_rham(0), ValidationError);
}

std::vector<GradedPoly> contact_monomials(const Chart& c) {
    std::vector<std::string> words{"1",      "x1",      "xs1",       "tau",       "x1^2",          "x1*xs1",
                                   "x1*tau", "xs1*tau", "x1^3",      "x1^2*xs1", "x1^2*tau",      "x1*xs1*tau"};
    std::vector<GradedPoly> out;
    for (const auto& w : words) out.push_back(P(c.universe(), w));
    return out;
}

TEST(OddContact, AllMonomialPairsMatchExplicitDisplay) {
    auto oc = odd_contact(1);
    auto ms = contact_monomials(oc.structure.chart());
    ASSERT_EQ(ms.size(), 12u);
    std::size_t literal_mismatch = 0;
    for (const auto& f : ms)
        for (const auto& g : ms) {
            EXPECT_EQ(odd_jacobi_bracket(f, g, oc.structure), oc.fixture.explicit_bracket(f, g))
                << f << " , " << g;
            if (!(odd_jacobi_bracket(f, g, oc.structure) == oc.fixture.explicit_bracket(f, g, true)))
                ++literal_mismatch;
        }
    EXPECT_GT(literal_mismatch, 0u);
}

TEST(OddContact, FormIdentities) {
    for (std::size_t n : {1u, 2u, 3u}) {
        auto oc = odd_contact(n);
        const auto& J = oc.structure;
        const auto& ac = oc.fixture.antitangent();
        EXPECT_TRUE(verify_structure(J).passed()) << n;
        EXPECT_EQ(poisson_bracket(J.S(), J.S(), J.cotangent()), 2L * (J.cotangent().p(2 * n) * J.S()));
        EXPECT_TRUE(phi_S_pullback(J.S(), oc.fixture.alpha(), J.cotangent(), ac).is_zero()) << n;
        EXPECT_EQ(phi_S_pullback(J.S(), oc.fixture.dalpha(), J.cotangent(), ac), J.S()) << n;
        EXPECT_EQ(interior_product(J.Q(), oc.fixture.alpha(), ac), GradedPoly::constant(1)) << n;
        EXPECT_TRUE(interior_product(J.Q(), oc.fixture.dalpha(), ac).is_zero()) << n;
    }
    EXPECT_THROW(odd_contact(0), ValidationError);
}

}  // namespace
