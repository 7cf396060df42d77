#include <gtest/gtest.h>

#include <random>

#include "hodge/hodge.hpp"

using namespace hodge;

namespace {

BivarPoly U() { return BivarPoly::u(); }
BivarPoly V() { return BivarPoly::v(); }
BivarPoly UV() { return uv_pow(1); }

BivarPoly random_poly(std::mt19937& rng, int deg, int terms) {
    std::uniform_int_distribution<int> e(0, deg), c(-5, 5);
    std::vector<BivarPoly::Term> ts;
    for (int k = 0; k < terms; ++k) ts.push_back({e(rng), e(rng), Int(c(rng))});
    return BivarPoly::from_terms(ts);
}

}  // namespace

TEST(Poly, SmallProducts) {
    EXPECT_EQ((1 + U()) * (1 + V()), 1 + U() + V() + UV());
    EXPECT_EQ((1 + UV()).pow(0), BivarPoly(1));
    EXPECT_EQ((1 - UV()) * (1 + UV()), 1 - uv_pow(2));
}

TEST(Poly, FromTermsCombinesAndDropsZeros) {
    auto p = BivarPoly::from_terms({{1, 0, 2}, {0, 0, 1}, {1, 0, -2}, {0, 1, 3}, {0, 1, 1}});
    EXPECT_EQ(p, 1 + BivarPoly::monomial(0, 1, 4));
    EXPECT_EQ(p.size(), 2u);
}

TEST(Poly, ToString) {
    EXPECT_EQ((1 + U()).pow(2).to_string(), "1 + 2*u + u^2");
    EXPECT_EQ((1 - BivarPoly::monomial(2, 1, 3)).to_string(), "1 - 3*u^2*v");
    EXPECT_EQ(BivarPoly().to_string(), "0");
}

TEST(Poly, DivExact) {
    EXPECT_EQ(BivarPoly::div_exact(1 - uv_pow(2), 1 - UV()), 1 + UV());
    EXPECT_EQ(BivarPoly::div_exact((1 + U()).pow(2), 1 + U()), 1 + U());
    EXPECT_THROW(BivarPoly::div_exact(1 + U() + V(), 1 + U()), NotDivisible);
    EXPECT_THROW(BivarPoly::div_exact(1 + U(), BivarPoly()), DivisionByZeroFunction);
}

TEST(Poly, RingAxiomsRandom) {
    std::mt19937 rng(7);
    for (int it = 0; it < 40; ++it) {
        auto a = random_poly(rng, 4, 5), b = random_poly(rng, 4, 5), c = random_poly(rng, 3, 4);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a - a, BivarPoly());
        EXPECT_EQ(a.pow(3), a * a * a);
        if (!b.is_zero()) {
            EXPECT_EQ(BivarPoly::div_exact(a * b, b), a);
        }
    }
}

TEST(RatFun, Ops) {
    RatFun2 g(1, 1 - UV());
    RatFun2 s = g + (-g);
    EXPECT_TRUE(s.is_zero());
    EXPECT_TRUE(rat_eq(s, RatFun2(0, (1 - UV()).pow(2))));
    EXPECT_TRUE(rat_eq(inv(RatFun2(UV())), RatFun2(1, UV())));
    EXPECT_TRUE(rat_eq(RatFun2(1 + U(), 1 - UV()) * RatFun2(1 + V()), RatFun2((1 + U()) * (1 + V()), 1 - UV())));
    EXPECT_TRUE(rat_eq(pow(RatFun2(1, 1 - UV()), -2), RatFun2((1 - UV()).pow(2))));
    EXPECT_THROW(inv(RatFun2(0)), DivisionByZeroFunction);
    EXPECT_THROW(RatFun2(1, BivarPoly()), DivisionByZeroFunction);
}

TEST(RatFun, Equality) {
    EXPECT_TRUE(rat_eq(RatFun2(1 - uv_pow(2), 1 - UV()), RatFun2(1 + UV())));
    EXPECT_FALSE(rat_eq(RatFun2(1, 1 - UV()), RatFun2(1, 1 - uv_pow(2))));
    EXPECT_TRUE(rat_eq(RatFun2(0, 1 + U()), RatFun2(0, 1 + V())));
}

TEST(Series, Expand) {
    auto s = expand_series(RatFun2(1, 1 - UV()), 3);
    EXPECT_EQ(s.to_poly(), 1 + UV());

    auto t = expand_series(RatFun2((1 + U()).pow(2) * (1 + V()).pow(2), 1 - UV()), 2);
    EXPECT_EQ(t.to_poly(), BivarPoly::from_terms({{0, 0, 1}, {1, 0, 2}, {0, 1, 2}, {2, 0, 1}, {1, 1, 5}, {0, 2, 1}}));

    EXPECT_EQ(expand_series(RatFun2(1, 1 + U()), 2).to_poly(), 1 - U() + U() * U());
}

TEST(Series, ExpandErrors) {
    EXPECT_THROW(expand_series(RatFun2(1, UV()), 4), NonUnitDenominator);
    EXPECT_THROW(expand_series(RatFun2(1, 2 - U()), 4), NonIntegralExpansion);
    // a non-unit constant term is fine when everything divides
    EXPECT_EQ(expand_series(RatFun2(2 + 2 * U(), BivarPoly(2)), 3).to_poly(), 1 + U());
}

TEST(Series, Ops) {
    auto a = TruncSeries2::from_poly(1 + UV(), 2);
    EXPECT_EQ((a * a).to_poly(), 1 + 2 * UV());
    auto b = TruncSeries2::from_poly(1 + UV() + uv_pow(2), 4);
    EXPECT_EQ(b.truncate(2).to_poly(), 1 + UV());
    auto c = TruncSeries2::from_poly(1 + U(), 3) + TruncSeries2::from_poly(-1 - U(), 3);
    EXPECT_TRUE(c.is_zero());
    // mixed orders give the smaller one
    EXPECT_EQ((TruncSeries2::from_poly(1 + U(), 5) + TruncSeries2::from_poly(V(), 2)).order(), 2);
}

TEST(Series, InPlaceFactorsMatchExpansion) {
    const int N = 12;
    TruncSeries2 s = TruncSeries2::one(N);
    s.mul_binomial(2, 1, 3);
    s.div_one_minus(1, 1);
    s.div_one_minus(2, 2, 2);
    s.shift(1, 0);
    RatFun2 r((1 + BivarPoly::monomial(2, 1, 3)) * U(), (1 - UV()) * (1 - BivarPoly::monomial(2, 2, 2)));
    EXPECT_EQ(s, expand_series(r, N));
}

TEST(Series, ExpandIsMultiplicative) {
    std::mt19937 rng(11);
    for (int it = 0; it < 20; ++it) {
        RatFun2 a(random_poly(rng, 3, 4), 1 - BivarPoly::monomial(1 + it % 2, 1));
        RatFun2 b(random_poly(rng, 3, 4), (1 + U()).pow(2));
        const int N = 10;
        EXPECT_EQ(expand_series(a * b, N), expand_series(a, N) * expand_series(b, N));
        EXPECT_EQ(expand_series(a + b, N), expand_series(a, N) + expand_series(b, N));
    }
}

TEST(CancelFactor, Examples) {
    auto [r1, m1] = cancel_factor(RatFun2((1 + U()).pow(2) * (1 + V()), 1 + U()), 1 + U());
    EXPECT_EQ(m1, 1);
    EXPECT_EQ(r1.num, (1 + U()) * (1 + V()));
    EXPECT_EQ(r1.den, BivarPoly(1));

    RatFun2 g(1, 1 - UV());
    auto [r2, m2] = cancel_factor(g, 1 + U());
    EXPECT_EQ(m2, 0);
    EXPECT_EQ(r2.num, g.num);
    EXPECT_EQ(r2.den, g.den);

    auto [r3, m3] = cancel_factor(RatFun2((1 + U()).pow(3), (1 + U()).pow(3)), 1 + U());
    EXPECT_EQ(m3, 3);
    EXPECT_EQ(r3.num, BivarPoly(1));
    EXPECT_EQ(r3.den, BivarPoly(1));
}

TEST(Substitute, Examples) {
    auto d = substitute(RatFun2(1, 1 - UV()), Assignment::diagonal());
    ASSERT_TRUE(std::holds_alternative<UniRatFun>(d));
    EXPECT_TRUE(uni_eq(std::get<UniRatFun>(d), UniRatFun{UniPoly(1), UniPoly(1) - UniPoly::t_pow(2)}));

    auto z = substitute(RatFun2((1 + U()) * (1 + V())), Assignment::u_fixed(-1));
    ASSERT_TRUE(std::holds_alternative<UniRatFun>(z));
    EXPECT_TRUE(std::get<UniRatFun>(z).num.is_zero());

    auto c = substitute(RatFun2(UV() * (1 + U()) * (1 + V())), Assignment::at(-1, 1));
    ASSERT_TRUE(std::holds_alternative<Rat>(c));
    EXPECT_EQ(std::get<Rat>(c), 0);

    EXPECT_THROW(substitute(RatFun2(1, 1 + U()), Assignment::at(-1, 0)), ZeroDenominatorAfterSubstitution);
}

TEST(Substitute, AgreesWithEvaluation) {
    std::mt19937 rng(3);
    for (int it = 0; it < 20; ++it) {
        auto p = random_poly(rng, 4, 6);
        const Rat t = ratio(it - 7, 3);
        EXPECT_EQ(substitute(p, Assignment::diagonal()).eval(t), p.eval(t, t));
        EXPECT_EQ(substitute(p, Assignment::u_fixed(-1)).eval(t), p.eval(-1, t));
    }
}
