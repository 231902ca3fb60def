#include <doctest.h>

#include <random>

#include "edlab/expression.hpp"

using edlab::EvalError;
using edlab::Expression;
using edlab::ParseError;

TEST_CASE("literals and basic arithmetic") {
    CHECK(Expression::parse("0")(3.0, 4.0) == 0.0);
    CHECK(Expression::parse("0.5*x^2")(2.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(Expression::parse("x*t")(2.0, 3.0) == doctest::Approx(6.0));
    CHECK(Expression::parse(" 1 + 2 * x ")(3.0) == doctest::Approx(7.0));
    CHECK(Expression::parse("1/4")(0.0) == doctest::Approx(0.25));
}

TEST_CASE("precedence and associativity") {
    // unary minus binds looser than ^
    CHECK(Expression::parse("-x^2")(2.0) == doctest::Approx(-4.0));
    CHECK(Expression::parse("(-x)^2")(2.0) == doctest::Approx(4.0));
    // ^ is right-associative
    CHECK(Expression::parse("2^3^2")(0.0) == doctest::Approx(512.0));
    CHECK(Expression::parse("2^-1")(0.0) == doctest::Approx(0.5));
    CHECK(Expression::parse("1-2-3")(0.0) == doctest::Approx(-4.0));
    CHECK(Expression::parse("12/3/2")(0.0) == doctest::Approx(2.0));
}

TEST_CASE("functions") {
    CHECK(Expression::parse("sin(x)+cos(x)^2")(0.0) == doctest::Approx(1.0));
    CHECK(Expression::parse("exp(0)")(0.0) == doctest::Approx(1.0));
    CHECK(Expression::parse("sqrt(abs(0-9))")(0.0) == doctest::Approx(3.0));
    CHECK(Expression::parse("tanh(1000)")(0.0) == doctest::Approx(1.0));
    CHECK(Expression::parse("log(exp(2))")(0.0) == doctest::Approx(2.0));
}

TEST_CASE("domain errors do not propagate NaN") {
    CHECK_THROWS_AS(Expression::parse("log(x)")(0.0), EvalError);
    CHECK_THROWS_AS(Expression::parse("log(0-1)")(0.0), EvalError);
    CHECK_THROWS_AS(Expression::parse("sqrt(0-4)")(0.0), EvalError);
    CHECK_THROWS_AS(Expression::parse("1/x")(0.0), EvalError);
    CHECK_THROWS_AS(Expression::parse("exp(10000)")(0.0), EvalError);
}

TEST_CASE("parse errors carry a byte offset") {
    CHECK_THROWS_AS(Expression::parse("2+"), ParseError);
    CHECK_THROWS_AS(Expression::parse("sin(x"), ParseError);
    CHECK_THROWS_AS(Expression::parse("sin(x, t)"), ParseError);
    CHECK_THROWS_AS(Expression::parse("x y"), ParseError);
    CHECK_THROWS_AS(Expression::parse(""), ParseError);
    try {
        Expression::parse("1 + foo(2)");
        FAIL("expected ParseError");
    } catch (const ParseError &e) {
        CHECK(e.offset == 4);
    }
    try {
        Expression::parse("x @ 2");
        FAIL("expected ParseError");
    } catch (const ParseError &e) {
        CHECK(e.offset == 2);
    }
}

TEST_CASE("unknown identifiers are rejected") {
    CHECK_THROWS_AS(Expression::parse("y"), ParseError);
    CHECK_THROWS_AS(Expression::parse("x2"), ParseError);
    CHECK_THROWS_AS(Expression::parse("sinh(x)"), ParseError);
}

TEST_CASE("time dependence detection") {
    CHECK_FALSE(Expression::parse("0.5*x^2").depends_on_t());
    CHECK(Expression::parse("x*t").depends_on_t());
    CHECK(Expression::parse("sin(t)").depends_on_t());
}

namespace {

std::string random_expression(std::mt19937_64 &rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 7);
    std::uniform_real_distribution<double> num(0.0, 9.5);
    switch (pick(rng)) {
        case 0: return std::to_string(num(rng));
        case 1: return "x";
        case 2: return "t";
        case 3:
            return "(" + random_expression(rng, depth - 1) + "+" +
                   random_expression(rng, depth - 1) + ")";
        case 4:
            return "(" + random_expression(rng, depth - 1) + "*" +
                   random_expression(rng, depth - 1) + ")";
        case 5: return "-" + random_expression(rng, depth - 1);
        case 6: return "sin(" + random_expression(rng, depth - 1) + ")";
        default:
            return "(" + random_expression(rng, depth - 1) + "/" + "(2+abs(" +
                   random_expression(rng, depth - 1) + ")))";
    }
}

} // namespace

TEST_CASE("parse-print-parse is a fixpoint") {
    std::mt19937_64 rng(20240811);
    for (int i = 0; i < 200; ++i) {
        const std::string src = random_expression(rng, 4);
        const Expression e1 = Expression::parse(src);
        const std::string s1 = e1.str();
        const Expression e2 = Expression::parse(s1);
        CHECK(s1 == e2.str());
        const double x = 0.37, t = 1.42;
        CHECK(e1(x, t) == doctest::Approx(e2(x, t)).epsilon(1e-15));
    }
}
