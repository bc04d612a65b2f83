#include <cmath>
#include <random>

#include "doctest.h"
#include "qre/symbolic.hpp"

using namespace qre;

TEST_CASE("rational arithmetic normalizes") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, -2) == Rational(-1, 2));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(7, 2).floor() == Rational(3));
    CHECK(Rational(7, 2).ceil() == Rational(4));
    CHECK(Rational(-7, 2).floor() == Rational(-4));
    CHECK(Rational(-7, 2).ceil() == Rational(-3));
    CHECK_THROWS_AS(Rational(1, 0), DomainError);
}

TEST_CASE("constant folding and like-term collection") {
    auto n = SymExpr::symbol("n");
    auto e = n * n + SymExpr::integer(3) * n + n * n;
    CHECK(e == SymExpr::integer(2) * n * n + SymExpr::integer(3) * n);
    CHECK(e.str() == "2*n^2 + 3*n");
    CHECK((n - n).is_zero());
    CHECK((n / n).is_one());
    CHECK((SymExpr::integer(0) * n).is_zero());
    CHECK((SymExpr::integer(1) * n) == n);
}

TEST_CASE("power collection merges symbolic exponents") {
    auto n = SymExpr::symbol("n");
    auto a = SymExpr::symbol("a");
    auto b = SymExpr::symbol("b");
    CHECK(SymExpr::pow(n, a) * SymExpr::pow(n, b) == SymExpr::pow(n, a + b));
    CHECK(SymExpr::pow(SymExpr::integer(2), SymExpr::integer(10)).as_integer() == 1024);
    CHECK(SymExpr::pow(SymExpr::rational(Rational(1, 2)), SymExpr::integer(-2)).as_integer() == 4);
}

TEST_CASE("exact evaluation over rationals") {
    auto n = SymExpr::symbol("n");
    auto e = SymExpr::integer(24) * n * n + SymExpr::integer(17) * n + SymExpr::integer(3);
    auto v = e.evaluate({{"n", SymValue::of(Rational(10))}});
    CHECK(v.exact);
    CHECK(v.rat == Rational(2573));
    SUBCASE("annihilator at n=0") {
        auto x = SymExpr::symbol("x");
        auto p = n * x;
        auto z = p.evaluate({{"n", SymValue::of(Rational(0))}, {"x", SymValue::of(3.7)}});
        CHECK(z.as_double() == 0.0);
    }
}

TEST_CASE("evaluation errors") {
    auto x = SymExpr::symbol("x");
    CHECK_THROWS_AS(x.evaluate({}), UnboundSymbol);
    CHECK_THROWS_AS(SymExpr::log2(x).evaluate({{"x", SymValue::of(Rational(0))}}), DomainError);
    CHECK_THROWS_AS(SymExpr::ln(x).evaluate({{"x", SymValue::of(-1.0)}}), DomainError);
    CHECK_THROWS_AS(SymExpr::log2(SymExpr::integer(0)), DomainError);
}

TEST_CASE("rotation synthesis cost folds to the expected integer") {
    auto eps = SymExpr::symbol("eps");
    auto cost = SymExpr::ceil(SymExpr::real(1.149) * SymExpr::log2(SymExpr::integer(1) / eps) +
                              SymExpr::real(9.2));
    CHECK(*cost.substitute({{"eps", SymExpr::real(1e-10)}}).as_integer() == 48);
    CHECK(*cost.substitute({{"eps", SymExpr::real(1e-3)}}).as_integer() == 21);
    // symbolic epsilon stays symbolic
    CHECK(cost.depends_on("eps"));
}

TEST_CASE("bitsize helper") {
    CHECK(*SymExpr::bitsize(SymExpr::integer(1000)).as_integer() == 10);
    CHECK(*SymExpr::bitsize(SymExpr::integer(1024)).as_integer() == 10);
    CHECK(*SymExpr::bitsize(SymExpr::integer(1025)).as_integer() == 11);
}

TEST_CASE("max/min/ceil/floor folding") {
    auto a = SymExpr::rational(Rational(7, 2));
    CHECK(*SymExpr::ceil(a).as_integer() == 4);
    CHECK(*SymExpr::floor(a).as_integer() == 3);
    CHECK(SymExpr::max(a, SymExpr::integer(5)).as_integer() == 5);
    CHECK(SymExpr::min(a, SymExpr::integer(5)) == a);
    auto x = SymExpr::symbol("x");
    CHECK(SymExpr::max(x, x) == x);
}

TEST_CASE("substitute-then-evaluate equals merged evaluation") {
    auto n = SymExpr::symbol("n");
    auto m = SymExpr::symbol("m");
    auto e = n * n + m * SymExpr::integer(7) + SymExpr::ceil(n / SymExpr::integer(3));
    auto sub = e.substitute({{"n", SymExpr::integer(11)}});
    auto v1 = sub.evaluate({{"m", SymValue::of(Rational(2))}});
    auto v2 = e.evaluate({{"n", SymValue::of(Rational(11))}, {"m", SymValue::of(Rational(2))}});
    CHECK(v1.rat == v2.rat);
}

namespace {

SymExpr random_tree(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 8);
    switch (pick(rng)) {
        case 0:
            return SymExpr::integer(std::uniform_int_distribution<int>(-9, 9)(rng));
        case 1:
            return SymExpr::rational(
                Rational(std::uniform_int_distribution<int>(-9, 9)(rng),
                         std::uniform_int_distribution<int>(1, 9)(rng)));
        case 2:
            return SymExpr::symbol(std::uniform_int_distribution<int>(0, 1)(rng) ? "x" : "y");
        case 3:
            return random_tree(rng, depth - 1) + random_tree(rng, depth - 1);
        case 4:
            return random_tree(rng, depth - 1) * random_tree(rng, depth - 1);
        case 5:
            return random_tree(rng, depth - 1) - random_tree(rng, depth - 1);
        case 6:
            return SymExpr::ceil(random_tree(rng, depth - 1));
        case 7:
            return SymExpr::floor(random_tree(rng, depth - 1));
        default:
            return SymExpr::max(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    }
}

}  // namespace

TEST_CASE("simplify preserves value and is idempotent on 1000 random trees") {
    std::mt19937 rng(20240817);
    for (int i = 0; i < 1000; ++i) {
        SymExpr e = random_tree(rng, 4);
        SymExpr s = e.simplify();
        CHECK(s.simplify() == s);
        Bindings b{{"x", SymValue::of(Rational(std::uniform_int_distribution<int>(-5, 5)(rng)))},
                   {"y", SymValue::of(Rational(std::uniform_int_distribution<int>(-5, 5)(rng),
                                               std::uniform_int_distribution<int>(1, 4)(rng)))}};
        auto ve = e.evaluate(b);
        auto vs = s.evaluate(b);
        REQUIRE(ve.exact);
        REQUIRE(vs.exact);
        CHECK(ve.rat == vs.rat);
    }
}

TEST_CASE("leading term extraction") {
    auto n = SymExpr::symbol("n");
    auto e = SymExpr::integer(24) * n * n + SymExpr::integer(17) * n + SymExpr::integer(3);
    auto [c, d] = leading_term(e, "n");
    CHECK(c == SymExpr::integer(24));
    CHECK(d == Rational(2));

    SUBCASE("bounds mode sees through ceilings") {
        auto f = SymExpr::integer(24) * SymExpr::ceil(n * n / SymExpr::integer(2));
        auto [c2, d2] = leading_term(f, "n");
        CHECK(d2 == Rational(2));
        CHECK(c2 == SymExpr::integer(12));
    }
    SUBCASE("strict mode rejects ceilings over the symbol") {
        auto f = SymExpr::ceil(n / SymExpr::integer(2));
        CHECK_THROWS_AS(leading_term(f, "n", /*bounds_mode=*/false), NotPolynomial);
    }
    SUBCASE("exponential expressions are rejected") {
        auto g = SymExpr::pow(SymExpr::integer(2), n);
        CHECK_THROWS_AS(leading_term(g, "n"), NotPolynomial);
    }
    SUBCASE("coefficients may involve other symbols") {
        auto L = SymExpr::symbol("L");
        auto h = L * n * n + n;
        auto [c3, d3] = leading_term(h, "n");
        CHECK(c3 == L);
        CHECK(d3 == Rational(2));
    }
}

TEST_CASE("rendering round trips basic shapes") {
    auto n = SymExpr::symbol("n");
    auto e = SymExpr::ceil(SymExpr::log2(n));
    CHECK(e.str() == "ceil(log2(n))");
    CHECK(e.latex() == "\\lceil \\log_2\\left(n\\right)\\rceil");
    CHECK((n + SymExpr::integer(1)).str() == "1 + n");
}

TEST_CASE("float constants mark trees approximate but evaluate close") {
    auto x = SymExpr::symbol("x");
    auto e = SymExpr::real(0.5) * x + SymExpr::real(0.25) * x;
    auto v = e.evaluate({{"x", SymValue::of(Rational(4))}});
    CHECK(v.as_double() == doctest::Approx(3.0).epsilon(1e-12));
}
