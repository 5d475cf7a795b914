#pragma once

#include "oddjac/errors.hpp"
#include "oddjac/graded_poly.hpp"
#include "oddjac/universe.hpp"

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oddjac {

/// Expression tree: sums of products of rational literals, variables and powers of
/// even variables. Factor order inside a product is kept so that normalization can
/// apply the Koszul signs.
struct ExpressionAST {
    enum class Kind { number, variable, power, product, sum, negate };

    Kind kind = Kind::number;
    Rational value;                     // number
    VarId var{};                        // variable, power
    std::uint32_t exponent = 1;         // power
    std::vector<ExpressionAST> children;  // product, sum, negate
};

namespace detail {

class ExpressionParser {
public:
    ExpressionParser(std::string_view text, const Universe& u, std::size_t line, std::size_t column)
        : text_(text), u_(u), line_(line), column0_(column) {}

    ExpressionAST parse() {
        skip_space();
        if (at_end()) fail("empty expression");
        ExpressionAST e = expr();
        skip_space();
        if (!at_end()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    std::string_view text_;
    const Universe& u_;
    std::size_t line_;
    std::size_t column0_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
    [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) const {
        throw ParseError(msg, line_, column0_ + pos);
    }

    bool at_end() const { return pos_ >= text_.size(); }

    void skip_space() {
        while (!at_end() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (!at_end() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExpressionAST expr() {
        ExpressionAST sum;
        sum.kind = ExpressionAST::Kind::sum;
        skip_space();
        bool negative = false;
        if (accept('-')) negative = true;
        else accept('+');
        sum.children.push_back(signed_term(negative));
        for (;;) {
            if (accept('+')) sum.children.push_back(signed_term(false));
            else if (accept('-')) sum.children.push_back(signed_term(true));
            else break;
        }
        if (sum.children.size() == 1) return std::move(sum.children.front());
        return sum;
    }

    ExpressionAST signed_term(bool negative) {
        ExpressionAST t = term();
        if (!negative) return t;
        ExpressionAST n;
        n.kind = ExpressionAST::Kind::negate;
        n.children.push_back(std::move(t));
        return n;
    }

    ExpressionAST term() {
        ExpressionAST prod;
        prod.kind = ExpressionAST::Kind::product;
        prod.children.push_back(factor());
        while (accept('*')) prod.children.push_back(factor());
        if (prod.children.size() == 1) return std::move(prod.children.front());
        return prod;
    }

    std::string digits() {
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        return std::string(text_.substr(start, pos_ - start));
    }

    ExpressionAST factor() {
        skip_space();
        if (at_end()) fail("unexpected end of expression");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            ExpressionAST e = expr();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer num(digits());
            Integer den(1);
            if (accept('/')) {
                skip_space();
                std::size_t at = pos_;
                den = Integer(digits());
                if (den == 0) fail_at(at, "zero denominator");
            }
            ExpressionAST n;
            n.kind = ExpressionAST::Kind::number;
            n.value = Rational(num, den);
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            auto id = u_.find(name);
            if (!id) fail_at(start, "unknown identifier '" + name + "'");
            ExpressionAST v;
            v.kind = ExpressionAST::Kind::variable;
            v.var = *id;
            if (accept('^')) {
                if (is_odd(u_.parity(*id))) fail_at(start, "power of odd variable '" + name + "'");
                skip_space();
                std::size_t at = pos_;
                Integer e(digits());
                if (e > 1000000) fail_at(at, "exponent too large");
                v.kind = ExpressionAST::Kind::power;
                v.exponent = e.convert_to<std::uint32_t>();
            }
            return v;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

}  // namespace detail

/// Parses `expr := ['+'|'-'] term (('+'|'-') term)*`, `term := factor ('*' factor)*`,
/// `factor := rational | ident ('^' uint)? | '(' expr ')'`, `rational := int ('/' uint)?`.
/// `line` and `column` locate the text inside an enclosing file for error messages.
inline ExpressionAST parse_expression(std::string_view text, const Universe& u, std::size_t line = 1,
                                      std::size_t column = 1) {
    return detail::ExpressionParser(text, u, line, column).parse();
}

inline GradedPoly evaluate(const ExpressionAST& e, const UniversePtr& u) {
    using K = ExpressionAST::Kind;
    switch (e.kind) {
        case K::number:
            return GradedPoly::constant(e.value, u);
        case K::variable:
            return GradedPoly::variable(u, e.var);
        case K::power: {
            GradedPoly v = GradedPoly::variable(u, e.var);
            GradedPoly r = GradedPoly::constant(Rational(1), u);
            for (std::uint32_t i = 0; i < e.exponent; ++i) r = r * v;
            return r;
        }
        case K::product: {
            GradedPoly r = GradedPoly::constant(Rational(1), u);
            for (const auto& c : e.children) r = r * evaluate(c, u);
            return r;
        }
        case K::sum: {
            GradedPoly r = GradedPoly::zero(u);
            for (const auto& c : e.children) r += evaluate(c, u);
            return r;
        }
        case K::negate:
            return -evaluate(e.children.front(), u);
    }
    return GradedPoly::zero(u);
}

inline GradedPoly parse_polynomial(std::string_view text, const UniversePtr& u, std::size_t line = 1,
                                   std::size_t column = 1) {
    return evaluate(parse_expression(text, *u, line, column), u);
}

}  // namespace oddjac
