#include "test_support.hpp"

using namespace oddjac;
using namespace oddjac::test;

namespace {

TEST(Charts, CotangentLiftKeepsParity) {
    CotangentChart cc(contact_chart());
    ASSERT_EQ(cc.universe()->size(), 6u);
    EXPECT_EQ(cc.universe()->name(cc.momentum(1)), "p_xs1");
    EXPECT_EQ(cc.universe()->parity(cc.momentum(0)), Parity::even);
    EXPECT_EQ(cc.universe()->parity(cc.momentum(2)), Parity::odd);
    EXPECT_TRUE(cc.is_momentum(cc.momentum(2)));
    EXPECT_FALSE(cc.is_momentum(cc.coordinate(2)));
}

TEST(Charts, AntitangentLiftFlipsParity) {
    AntitangentChart ac(contact_chart());
    EXPECT_EQ(ac.universe()->name(ac.fiber(0)), "d_x1");
    EXPECT_EQ(ac.universe()->parity(ac.fiber(0)), Parity::odd);
    EXPECT_EQ(ac.universe()->parity(ac.fiber(2)), Parity::even);
    Chart total = ac.total_chart();
    EXPECT_EQ(total.dimension(), 6u);
    EXPECT_EQ(total.name(), "PiT_contact");
}

TEST(Charts, ReservedPrefixes) {
    EXPECT_THROW(Chart::create("c", {{"p_x", Parity::even}}), ValidationError);
    EXPECT_THROW(Chart::create("c", {{"d_x", Parity::odd}}), ValidationError);
    EXPECT_THROW(Chart::create("c", {{"x", Parity::even}, {"d_x", Parity::even}}), ValidationError);
    EXPECT_NO_THROW(Chart::create("c", {{"x", Parity::even}, {"d_x", Parity::odd}}));
}

TEST(Charts, StructuralEquality) {
    EXPECT_EQ(contact_chart(), contact_chart());
    EXPECT_FALSE(contact_chart() == grassmann_chart());
    Chart a = Chart::create("a", {{"x", Parity::even}});
    Chart b = Chart::create("b", {{"x", Parity::odd}});
    EXPECT_FALSE(a == b);
}

TEST(Charts, OwnershipOfFunctions) {
    Chart c = contact_chart();
    CotangentChart cc(c);
    EXPECT_TRUE(c.owns(cc.x("x1")));
    EXPECT_FALSE(c.owns(cc.p("x1")));
    EXPECT_TRUE(cc.owns(cc.p("x1") * cc.x("tau")));
    EXPECT_FALSE(c.owns(grassmann_chart().x("xi1")));
}

TEST(Poisson, CanonicalPairs) {
    CotangentChart cc(contact_chart());
    EXPECT_EQ(poisson_bracket(cc.p("x1"), cc.x("x1"), cc), GradedPoly::constant(1));
    EXPECT_EQ(poisson_bracket(cc.x("x1"), cc.p("x1"), cc), GradedPoly::constant(-1));
    EXPECT_EQ(poisson_bracket(cc.p("tau"), cc.x("tau"), cc), GradedPoly::constant(1));
    EXPECT_EQ(poisson_bracket(cc.x("tau"), cc.p("tau"), cc), GradedPoly::constant(1));
    EXPECT_TRUE(poisson_bracket(cc.p("x1"), cc.x("tau"), cc).is_zero());
}

TEST(Poisson, ContactSSquared) {
    CotangentChart cc(contact_chart());
    GradedPoly S = P(cc.universe(), "p_xs1*(p_x1 + xs1*p_tau)");
    EXPECT_EQ(poisson_bracket(S, S, cc), P(cc.universe(), "-2*p_x1*p_xs1*p_tau"));
    EXPECT_EQ(poisson_bracket(S, S, cc), 2L * (cc.p("tau") * S));
}

TEST(Poisson, GradedAntisymmetryAndJacobi) {
    Chart c = mixed_chart();
    CotangentChart cc(c);
    auto u = cc.universe();
    // sample on T*M by treating the lifted universe as a chart of its own
    Chart lifted = Chart::create("Tstar", [&] {
        std::vector<VariableSpec> v;
        for (const auto& var : u->variables()) v.emplace_back("v_" + var.name, var.parity);
        return v;
    }());
    auto rename = [&](const GradedPoly& p) {
        GradedPoly::TermMap t = p.terms();
        return GradedPoly::from_terms(u, std::move(t));
    };
    auto s = samples(lifted, 21, 45, 3);
    for (std::size_t i = 0; i + 2 < s.size(); i += 3) {
        GradedPoly F = rename(s[i]), G = rename(s[i + 1]), H = rename(s[i + 2]);
        int f = pbit(F), g = pbit(G), h = pbit(H);
        auto pb = [&](const GradedPoly& a, const GradedPoly& b) { return poisson_bracket(a, b, cc); };
        EXPECT_EQ(pb(F, G), -pb(G, F).scaled(sign_pow(f * g)));
        GradedPoly jac = pb(F, pb(G, H)).scaled(sign_pow(f * h)) + pb(G, pb(H, F)).scaled(sign_pow(g * f)) +
                         pb(H, pb(F, G)).scaled(sign_pow(h * g));
        EXPECT_TRUE(jac.is_zero()) << jac;
        // derivation in the second slot
        EXPECT_EQ(pb(F, G * H), pb(F, G) * H + (G * pb(F, H)).scaled(sign_pow(f * g)));
    }
}

SuperVectorField random_field(const Chart& c, PolySampler& s, Parity want) {
    std::vector<GradedPoly> comps;
    for (std::size_t a = 0; a < c.dimension(); ++a)
        comps.push_back(s.uniform(3) ? s.homogeneous(want + c.parity(a)) : GradedPoly::zero(c.universe()));
    return SuperVectorField(c, std::move(comps), want);
}

TEST(VectorFields, SymbolActsAsDerivation) {
    Chart c = mixed_chart();
    CotangentChart cc(c);
    PolySampler s(c, 31, 2, 2);
    for (int i = 0; i < 20; ++i) {
        SuperVectorField X = random_field(c, s, s.parity());
        GradedPoly f = s.any();
        EXPECT_EQ(lie_derivative(X, f, cc), apply(X, f));
    }
}

TEST(VectorFields, CommutatorMatchesComposition) {
    Chart c = mixed_chart();
    PolySampler s(c, 32, 2, 2);
    for (int i = 0; i < 20; ++i) {
        SuperVectorField X = random_field(c, s, s.parity());
        SuperVectorField Y = random_field(c, s, s.parity());
        SuperVectorField Z = vf_lie_bracket(X, Y);
        EXPECT_EQ(Z.parity(), X.parity() + Y.parity());
        int sx = bit(X.parity()) * bit(Y.parity());
        for (int k = 0; k < 3; ++k) {
            GradedPoly f = s.any();
            EXPECT_EQ(apply(Z, f), apply(X, apply(Y, f)) - apply(Y, apply(X, f)).scaled(sign_pow(sx)));
        }
    }
}

TEST(VectorFields, NilpotentOddField) {
    Chart c = grassmann_chart();
    // Q = xi1 xi2 d/dxi3
    SuperVectorField Q(c, {GradedPoly::zero(c.universe()), GradedPoly::zero(c.universe()), c.x("xi1") * c.x("xi2")},
                       Parity::odd);
    EXPECT_TRUE(vf_lie_bracket(Q, Q).is_zero());
}

TEST(VectorFields, Validation) {
    Chart c = mixed_chart();
    auto z = GradedPoly::zero(c.universe());
    EXPECT_THROW(SuperVectorField(c, {z, z}, Parity::odd), ValidationError);
    // d/dx with an odd coefficient is odd, not even
    EXPECT_THROW(SuperVectorField(c, {c.x("xi"), z, z, z}, Parity::even), ValidationError);
    EXPECT_THROW(SuperVectorField(c, {c.x("x") + c.x("xi"), z, z, z}, Parity::odd), ValidationError);
    EXPECT_THROW(SuperVectorField(c, {grassmann_chart().x("xi1"), z, z, z}, Parity::odd), ValidationError);
    auto X = SuperVectorField::from_components(c, {{"th", c.x("x")}});
    EXPECT_EQ(X.parity(), Parity::odd);
    EXPECT_EQ(apply(X, c.x("xi") * c.x("th")), -(c.x("xi") * c.x("x")));
}

}  // namespace
