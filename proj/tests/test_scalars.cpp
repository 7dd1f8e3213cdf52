#include <doctest.h>

#include "fusionq/matrix.hpp"
#include "fusionq/ratfunc.hpp"

using namespace fusionq;

namespace {
RatFunc rf(const char* s) { return parse_ratfunc(s); }
}  // namespace

TEST_CASE("rationals parse and print in lowest terms") {
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(parse_rational("-7")) == "-7");
    CHECK(is_integer(parse_rational("8/4")));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("polynomial gcd cancels common factors") {
    const RatFunc a = rf("(t^2 - 1)/(t^2 + 2*t + 1)");
    CHECK(a == rf("(t - 1)/(t + 1)"));
    const RatFunc b = rf("(L1*t - L1)/(L1*L2)");
    CHECK(b == rf("(t - 1)/L2"));
    CHECK(rf("1/t") * rf("t") == RatFunc(1));
    CHECK(rf("1/(t-1) - 1/t") == rf("1/(t^2 - t)"));
}

TEST_CASE("rational functions print and re-parse") {
    for (const char* s : {"2*t^2 - 2*t", "1/(2*t^2 - 2*t)", "(t + L1)/(L2 - 3)", "-5/7", "0"}) {
        const RatFunc x = rf(s);
        CHECK(parse_ratfunc(x.to_string()) == x);
    }
    CHECK(rf("3").to_string() == "3");
}

TEST_CASE("substitution and evaluation") {
    CHECK(rf("t^2 - t").substitute(0, Rational(3)) == RatFunc(6));
    CHECK_THROWS_AS(rf("1/t").substitute(0, Rational(0)), std::domain_error);
}

TEST_CASE("laurent expansion at zero") {
    // 1/(2 t (1 + t)) = 1/2 t^-1 - 1/2 + 1/2 t - ...
    const auto s = laurent_expand(rf("1/(2*t*(1+t))"), 2);
    CHECK(s.coefficient(-1) == Rational(1, 2));
    CHECK(s.coefficient(0) == Rational(-1, 2));
    CHECK(s.coefficient(1) == Rational(1, 2));
    CHECK(s.coefficient(2) == Rational(-1, 2));
    CHECK(pole_order_at_zero(rf("1/t^3 + 1")) == 3);
    CHECK(pole_order_at_zero(rf("t/(t+1)")) == 0);
}

TEST_CASE("matrix inverse, determinant and nullspace") {
    Matrix<Rational> m(3, 3);
    int v[3][3] = {{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = v[i][j];
    CHECK(determinant(m) == Rational(18));
    CHECK(m * inverse(m) == Matrix<Rational>::identity(3));

    Matrix<Rational> s(2, 3);
    s(0, 0) = 1; s(0, 1) = 2; s(0, 2) = 3;
    s(1, 0) = 2; s(1, 1) = 4; s(1, 2) = 6;
    CHECK(rank(s) == 1);
    const auto ns = nullspace(s);
    REQUIRE(ns.size() == 2);
    for (const auto& x : ns) CHECK(s(0, 0) * x[0] + s(0, 1) * x[1] + s(0, 2) * x[2] == 0);
    CHECK_THROWS_AS(inverse(Matrix<Rational>(2, 2)), std::domain_error);
}

TEST_CASE("symbolic determinant stays exact") {
    Matrix<RatFunc> m(2, 2);
    m(0, 0) = rf("t"); m(0, 1) = rf("1");
    m(1, 0) = rf("1"); m(1, 1) = rf("t");
    CHECK(determinant(m) == rf("t^2 - 1"));
    CHECK(inverse(m)(0, 0) == rf("t/(t^2-1)"));
}

TEST_CASE("factored display splits rational linear factors") {
    CHECK(factored_string(rf("6*t*(t-1)*(t-2)")) == "6*t*(t-1)*(t-2)");
    CHECK(factored_string(rf("-(2*t+1)^2*(t^2+1)")) == "-4*(t+1/2)^2*(t^2 + 1)");
    CHECK(factored_string(rf("1/(t^2-t)")) == "(1)/(t*(t-1))");
    CHECK(factored_string(rf("5")) == "5");
    CHECK(factored_string(rf("L1*t")) == rf("L1*t").to_string());
    for (const char* s : {"6*t*(t-1)*(t-2)", "(t-1/3)^3/(t+2)", "-4*(t+1/2)^2*(t^2 + 1)"})
        CHECK(rf(factored_string(rf(s)).c_str()) == rf(s));
}
