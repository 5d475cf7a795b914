#include "test_support.hpp"

using namespace oddjac;
using namespace oddjac::test;

namespace {

void expect_error(const std::string& text, std::size_t column, const std::string& fragment) {
    Chart c = mixed_chart();
    try {
        parse_polynomial(text, c.universe());
        ADD_FAILURE() << "no error for '" << text << "'";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 1u) << text;
        EXPECT_EQ(e.column(), column) << text << ": " << e.what();
        EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
}

TEST(Parser, Grammar) {
    Chart c = mixed_chart();
    auto u = c.universe();
    EXPECT_EQ(P(u, "x"), c.x("x"));
    EXPECT_EQ(P(u, "-x"), -c.x("x"));
    EXPECT_EQ(P(u, "+ x - y"), c.x("x") - c.x("y"));
    EXPECT_EQ(P(u, "3/6*x^2"), (c.x("x") * c.x("x")).scaled(Rational(1, 2)));
    EXPECT_EQ(P(u, "(x + y)*(x - y)"), c.x("x") * c.x("x") - c.x("y") * c.x("y"));
    EXPECT_EQ(P(u, "-(-x)"), c.x("x"));
    EXPECT_EQ(P(u, "x^0"), c.constant(1));
    EXPECT_EQ(P(u, "  0  "), GradedPoly::zero(u));
}

TEST(Parser, FactorOrderCarriesKoszulSigns) {
    Chart c = mixed_chart();
    auto u = c.universe();
    EXPECT_EQ(P(u, "th*xi"), -(c.x("xi") * c.x("th")));
    EXPECT_EQ(P(u, "th*x*xi"), -(c.x("x") * c.x("xi") * c.x("th")));
    EXPECT_TRUE(P(u, "xi*x*xi").is_zero());
    EXPECT_EQ(render_canonical(P(grassmann_chart().universe(), "xi2*xi1")), "- xi1*xi2");
}

TEST(Parser, AstShape) {
    Chart c = mixed_chart();
    auto ast = parse_expression("x*xi - 2", *c.universe());
    ASSERT_EQ(ast.kind, ExpressionAST::Kind::sum);
    ASSERT_EQ(ast.children.size(), 2u);
    EXPECT_EQ(ast.children[0].kind, ExpressionAST::Kind::product);
    EXPECT_EQ(ast.children[1].kind, ExpressionAST::Kind::negate);
    EXPECT_EQ(ast.children[1].children[0].value, Rational(2));
}

TEST(Parser, Errors) {
    expect_error("x + z", 5, "unknown identifier 'z'");
    expect_error("xi^2", 1, "power of odd variable");
    expect_error("x/0", 2, "unexpected '/'");
    expect_error("1/0", 3, "zero denominator");
    expect_error("(x + y", 7, "expected ')'");
    expect_error("x + y)", 6, "unexpected ')'");
    expect_error("x ** y", 4, "unexpected '*'");
    expect_error("", 1, "empty expression");
    expect_error("x +", 4, "unexpected end");
    expect_error("x^y", 3, "expected an integer");
}

TEST(Parser, ErrorPositionIsOffsetIntoFile) {
    Chart c = mixed_chart();
    try {
        parse_polynomial("x + q", c.universe(), 7, 10);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 7u);
        EXPECT_EQ(e.column(), 14u);
        EXPECT_EQ(std::string(e.what()).substr(0, 5), "7:14:");
    }
}

TEST(Render, CanonicalText) {
    Chart c = mixed_chart();
    auto u = c.universe();
    EXPECT_EQ(render_canonical(GradedPoly::zero(u)), "0");
    EXPECT_EQ(render_canonical(P(u, "-1")), "- 1");
    EXPECT_EQ(render_canonical(P(u, "y*x - 1/2 + x")), "- 1/2 + x + x*y");
    EXPECT_EQ(render_canonical(P(u, "x*x*x*th*xi")), "- x^3*xi*th");
    EXPECT_EQ(render_canonical(P(u, "-3*y^2")), "- 3*y^2");
}

TEST(Render, RoundTripOnSamples) {
    for (const Chart& c : {mixed_chart(), contact_chart(), grassmann_chart()}) {
        for (const auto& p : samples(c, 51, 100, 4)) {
            std::string text = render_canonical(p);
            GradedPoly back = P(c.universe(), text);
            EXPECT_EQ(back, p) << text;
            EXPECT_EQ(render_canonical(back), text);
        }
    }
}

}  // namespace
