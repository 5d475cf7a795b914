#include "test_support.hpp"

using namespace oddjac;
using namespace oddjac::test;

namespace {

SampleSpec spec(std::uint64_t seed, std::size_t n = 30, std::size_t threads = 1) {
    SampleSpec s;
    s.seed = seed;
    s.samples = n;
    s.threads = threads;
    return s;
}

TEST(Sampler, HomogeneousAndNonzero) {
    Chart c = contact_chart();
    PolySampler s(c, 5, 3, 3);
    for (int i = 0; i < 200; ++i) {
        Parity want = s.parity();
        GradedPoly p = s.homogeneous(want);
        ASSERT_FALSE(p.is_zero());
        EXPECT_EQ(p.parity(), want);
        EXPECT_LE(p.degree(), 3u);
        EXPECT_LE(p.size(), 3u);
    }
}

TEST(Sampler, SameSeedSameStream) {
    auto a = samples(contact_chart(), 99, 40);
    auto b = samples(contact_chart(), 99, 40);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, samples(contact_chart(), 100, 40));
}

TEST(PropertySuite, ContactPassesEverything) {
    auto r = run_property_suite(odd_contact(1).structure, spec(1));
    EXPECT_TRUE(r.passed()) << ::testing::PrintToString(r.failed_names());
    EXPECT_EQ(r.checks().size(), 15u);
}

TEST(PropertySuite, PerturbedStructureFailsJacobiWithWitness) {
    Chart c = contact_chart();
    CotangentChart cc(c);
    auto Q = SuperVectorField::from_components(c, {{"tau", c.constant(-1)}});
    auto J = OddJacobiStructure::create(c, P(cc.universe(), "p_xs1*p_x1"), Q);
    auto r = run_property_suite(J, spec(1));
    EXPECT_FALSE(r.passed("jacobi_identity"));
    EXPECT_NE(r.at("jacobi_identity").note.find("witness from sample"), std::string::npos);
    // properties that do not depend on {S,S} + 2QS = 0 still hold
    EXPECT_TRUE(r.passed("coordinate_form"));
    EXPECT_TRUE(r.passed("graded_symmetry"));
    EXPECT_TRUE(r.passed("anomaly_formula"));
}

TEST(PropertySuite, DeterministicAcrossThreadCounts) {
    auto J = odd_contact(1).structure;
    auto render = [](const VerificationReport& r) {
        std::string s;
        for (const auto& c : r.checks()) s += c.name + "|" + render_canonical(c.residual) + "|" + c.note + "\n";
        return s;
    };
    Chart c = contact_chart();
    CotangentChart cc(c);
    auto Q = SuperVectorField::from_components(c, {{"tau", c.constant(-1)}});
    auto bad = OddJacobiStructure::create(c, P(cc.universe(), "p_xs1*p_x1"), Q);
    EXPECT_EQ(render(run_property_suite(J, spec(7, 20, 1))), render(run_property_suite(J, spec(7, 20, 4))));
    EXPECT_EQ(render(run_property_suite(bad, spec(7, 20, 1))), render(run_property_suite(bad, spec(7, 20, 3))));
}

TEST(PropertySuite, ContactExercisesBothClosureClasses) {
    auto [closed, open] = q_closure_counts(odd_contact(1).structure, spec(1, 50));
    EXPECT_GE(closed, 20u);
    EXPECT_GE(open, 20u);
}

TEST(PropertySuite, DeRhamFailsOnlyTheConverse) {
    auto r = run_property_suite(de_rham(1), spec(1));
    EXPECT_EQ(r.failed_names(), std::vector<std::string>{"q_closed_if_jacobi"});
}

TEST(PropertySuite, EvenDiagonalJacobi) {
    SampleSpec s = spec(3, 20);
    s.even_diagonal = true;
    EXPECT_TRUE(run_property_suite(odd_contact(1).structure, s).passed("jacobi_identity"));
}

TEST(PropertySuite, OddSymplecticAndSchoutenPass) {
    EXPECT_TRUE(run_property_suite(odd_symplectic(canonical_odd_symplectic(1)), spec(2)).passed());
    auto sc = StructureConstants::zero({Parity::even, Parity::even}).with(0, 0, 1, Rational(1));
    EXPECT_TRUE(run_property_suite(lie_schouten(sc).schouten, spec(2)).passed());
}

}  // namespace
