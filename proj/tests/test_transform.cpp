#include "error.hpp"
#include "sexpr.hpp"
#include "support/generators.hpp"

#include <doctest.h>

using namespace l2t;
using l2t::testing::Gen;

TEST_CASE("forward transform pairs") {
    CHECK(forward(GExpr::constant(1)) == SExpr::pole(Rational(1, 2), 0, 1));
    CHECK(forward(GExpr::term(1, 1, 0)) == SExpr::pole(Rational(1, 2), 0, 2));
    CHECK(forward(GExpr::term(1, 0, Rational(1, 2))) == SExpr::pole(Rational(1, 2), Rational(1, 2), 1));
    // n!/2 σ^-(n+1)
    for (unsigned n = 0; n <= 10; ++n) CHECK(forward(GExpr::term(1, n, 0)) == SExpr::pole(factorial(n) / 2, 0, n + 1));
    CHECK(forward(GExpr()).is_zero());
}

TEST_CASE("forward records the validity region") {
    const SExpr s = forward(GExpr::term(1, 0, Rational(1, 2)) + GExpr::term(1, 3, -2));
    REQUIRE(s.region().has_value());
    CHECK(*s.region() == Rational(1, 2));
    CHECK_FALSE(forward(GExpr()).region().has_value());
    CHECK(*(s + forward(GExpr::term(1, 0, 3))).region() == 3);
}

TEST_CASE("inverse transform pairs") {
    CHECK(inverse(SExpr::pole(Rational(1, 2), 0, 4)) == GExpr::term(Rational(1, 6), 3, 0));
    CHECK(inverse(SExpr::pole(Rational(1, 2), Rational(1, 2), 1)) == GExpr::term(1, 0, Rational(1, 2)));
    const GExpr g = inverse(SExpr::pole(1, Rational(1, 2), 2));
    CHECK(g == GExpr::term(2, 1, Rational(1, 2)));
    CHECK(forward(g) == SExpr::pole(1, Rational(1, 2), 2));
}

TEST_CASE("inverse rejects impulse content") {
    const SExpr s = SExpr::constant(3) + SExpr::pole(1, 0, 1);
    CHECK(s.has_impulse_content());
    CHECK(s.constant_part() == 3);
    try {
        inverse(s);
        FAIL("expected ImpulseContent");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ImpulseContent);
    }
}

TEST_CASE("round trip inverse(forward(e)) = e") {
    Gen gen(101);
    for (int trial = 0; trial < 100; ++trial) {
        const GExpr e = gen.gexpr(6, Rational(-2), Rational(2), 5);
        CHECK(inverse(forward(e)) == e);
    }
}

TEST_CASE("delta_s") {
    CHECK(delta_s(SExpr::pole(Rational(1, 2), 0, 1)) == SExpr::pole(-1, 0, 2));
    CHECK(scale(delta_s(forward(GExpr::constant(1))), Rational(-1, 2)) == forward(GExpr::term(1, 1, 0)));
    CHECK(delta_s(SExpr::constant(5)).is_zero());
}

TEST_CASE("mul_sigma") {
    CHECK(mul_sigma(SExpr::pole(Rational(1, 2), 0, 1)) == SExpr::constant(Rational(1, 2)));
    CHECK(mul_sigma(SExpr::pole(1, Rational(1, 2), 2)) ==
          SExpr::pole(1, Rational(1, 2), 1) + SExpr::pole(Rational(1, 2), Rational(1, 2), 2));
    CHECK_THROWS_AS(mul_sigma(SExpr::constant(1)), Error);
    // (σ−a)^-1 · σ = 1 + a(σ−a)^-1 : constant content lands on a = 0
    const SExpr s = mul_sigma(SExpr::pole(1, 3, 1));
    CHECK(s == SExpr({{1, 0, 0}, {3, 3, 1}}));
}

TEST_CASE("toperator: forward(δx f) = 2σ forward(f) − f(0⁺)") {
    const GExpr x2 = GExpr::term(1, 1, 0);
    CHECK(forward(delta_x(x2)) == SExpr::pole(1, 0, 1));
    CHECK(scale(mul_sigma(forward(x2)), 2) == SExpr::pole(1, 0, 1));

    Gen gen(7);
    for (int trial = 0; trial < 60; ++trial) {
        const GExpr e = gen.gexpr(5, Rational(-2), Rational(2), 4);
        const SExpr rhs = scale(mul_sigma(forward(e)), 2) - SExpr::constant(limit_at_zero(e));
        CHECK(forward(delta_x(e)) == rhs);
    }
}

TEST_CASE("t2n: forward(x^(2n) f) = (−1)^n/2^n δs^n forward(f)") {
    Gen gen(8);
    for (int trial = 0; trial < 30; ++trial) {
        const GExpr e = gen.gexpr(5, Rational(-2), Rational(2), 4);
        SExpr ds = forward(e);
        for (unsigned n = 1; n <= 4; ++n) {
            ds = delta_s(ds);
            const SExpr lhs = forward(multiply(GExpr::term(1, n, 0), e));
            CHECK(lhs == scale(ds, pow(Rational(-1, 2), n)));
        }
    }
}

TEST_CASE("partial fractions examples") {
    CHECK(partial_fractions({{0, 1}, {1, 1}}) == SExpr::pole(1, 1, 1) - SExpr::pole(1, 0, 1));
    CHECK(partial_fractions({{0, 1}, {Rational(1, 2), 1}}) ==
          SExpr::pole(2, Rational(1, 2), 1) - SExpr::pole(2, 0, 1));
    CHECK(partial_fractions({{0, 2}, {1, 1}}) ==
          SExpr::pole(1, 1, 1) - SExpr::pole(1, 0, 1) - SExpr::pole(1, 0, 2));
    CHECK(partial_fractions({}) == SExpr::constant(1));
    CHECK(partial_fractions({{2, 1}, {2, 2}}) == SExpr::pole(1, 2, 3));
}

TEST_CASE("partial fractions recombine to the numerator 1") {
    Gen gen(55);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<PoleFactor> factors;
        const int count = gen.integer(1, 4);
        for (int i = 0; i < count; ++i)
            factors.push_back({gen.rational(-2, 2, 3), static_cast<unsigned>(gen.integer(1, 3))});
        const SExpr pf = partial_fractions(factors);
        const auto poles = l2t::testing::group_poles(factors);
        CHECK(l2t::testing::times_denominator(pf, poles) == l2t::testing::SigmaPoly::constant(1));
    }
}

TEST_CASE("multiply") {
    CHECK(multiply(SExpr::pole(Rational(1, 2), 0, 1), SExpr::pole(Rational(1, 2), 0, 1)) ==
          SExpr::pole(Rational(1, 4), 0, 2));
    CHECK(multiply(SExpr::pole(1, 0, 1), SExpr::pole(1, 1, 1)) == SExpr::pole(1, 1, 1) - SExpr::pole(1, 0, 1));
    CHECK(multiply(SExpr::constant(3), SExpr::pole(1, 1, 2)) == SExpr::pole(3, 1, 2));
}

TEST_CASE("random products recombine to the naive product of numerators") {
    using l2t::testing::SigmaPoly;
    Gen gen(77);
    for (int trial = 0; trial < 40; ++trial) {
        auto random_sexpr = [&] {
            std::vector<STerm> t;
            const int n = gen.integer(1, 3);
            for (int i = 0; i < n; ++i)
                t.push_back({gen.nonzero_rational(-3, 3), gen.rational(-1, 1, 2), static_cast<unsigned>(gen.integer(1, 3))});
            return SExpr(std::move(t));
        };
        const SExpr s1 = random_sexpr();
        const SExpr s2 = random_sexpr();
        std::map<Rational, unsigned> d1, d2, d12;
        for (const auto& t : s1.terms()) d1[t.a] = std::max(d1[t.a], t.m);
        for (const auto& t : s2.terms()) d2[t.a] = std::max(d2[t.a], t.m);
        d12 = d1;
        for (const auto& [a, m] : d2) d12[a] += m;
        // N1·N2 over D1·D2 must equal the product recombined over D1·D2
        const SigmaPoly naive = l2t::testing::times_denominator(s1, d1) * l2t::testing::times_denominator(s2, d2);
        CHECK(l2t::testing::times_denominator(multiply(s1, s2), d12) == naive);
    }
}

TEST_CASE("sexpr evaluation matches the closed form") {
    const SExpr s = forward(GExpr::term(1, 0, Rational(1, 2)));
    CHECK(evaluate(s, 1.0) == doctest::Approx(1.0));
    CHECK(evaluate(s, 3.0) == doctest::Approx(1.0 / 5.0));
}
