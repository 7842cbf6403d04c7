#include <gtest/gtest.h>

#include <random>

#include "insep/ff/expr.hpp"
#include "insep/ff/groebner.hpp"
#include "insep/ff/poly_gcd.hpp"
#include "insep/ff/ratfunc.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace insep;
using namespace insep::ff;

namespace {

MultiPoly mp(const std::string& s, unsigned p, const std::vector<std::string>& vars) {
    return parse_multipoly(s, PrimeContext(p), vars);
}

const std::vector<std::string> kXY{"x", "y"};
const std::vector<std::string> kT{"t"};

}  // namespace

TEST(PrimeField, FrobeniusIsIdentity) {
    for (unsigned p : {2u, 3u, 5u, 101u}) {
        PrimeContext ctx(p);
        for (std::uint32_t v = 0; v < p; ++v) EXPECT_EQ(Fp(ctx, v).pow(p), Fp(ctx, v));
    }
    EXPECT_THROW(PrimeContext(4), InvalidField);
    EXPECT_THROW(PrimeContext(103), InvalidField);
}

TEST(PolyArith, CharacteristicTwoCancellation) {
    auto a = mp("t + 1", 2, kT);
    EXPECT_TRUE((a + a).is_zero());
}

TEST(PolyArith, FreshmansDream) {
    auto a = mp("x + y", 2, kXY);
    EXPECT_EQ(a * a, mp("x^2 + y^2", 2, kXY));
}

TEST(PolyArith, HandMultiplicationModThree) {
    EXPECT_EQ(mp("x + 1", 3, {"x"}) * mp("x + 2", 3, {"x"}), mp("x^2 + 2", 3, {"x"}));
}

TEST(PolyArith, ArityMismatch) {
    EXPECT_THROW(mp("x", 2, {"x"}) + mp("x", 2, kXY), ArityMismatch);
    EXPECT_THROW(mp("x", 2, {"x"}) * mp("x", 3, {"x"}), ArityMismatch);
}

TEST(PolyGcd, Examples) {
    EXPECT_EQ(gcd(mp("t^2", 2, kT), mp("t^3", 2, kT)), mp("t^2", 2, kT));
    EXPECT_EQ(gcd(mp("x^2 + y^2", 2, kXY), mp("x + y", 2, kXY)), mp("x + y", 2, kXY));
    EXPECT_EQ(gcd(mp("t^2 + 1", 2, kT), mp("t + 1", 2, kT)), mp("t + 1", 2, kT));
    EXPECT_THROW(gcd(mp("0", 2, kT), mp("0", 2, kT)), BothZero);
}

TEST(PolyGcd, MultivariateCommonFactor) {
    const std::vector<std::string> v{"a", "b", "c"};
    auto g = mp("a*b + c^2 + 1", 3, v);
    auto f1 = g * mp("a^2 + b", 3, v);
    auto f2 = g * mp("b*c + 2", 3, v);
    EXPECT_EQ(gcd(f1, f2), g.monic());
}

TEST(PolyGcd, RandomProductsShareFactor) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        unsigned p = std::array<unsigned, 3>{2, 3, 5}[trial % 3];
        auto g = testing_support::random_multipoly(rng, p, 2, 2, 3);
        auto a = testing_support::random_multipoly(rng, p, 2, 2, 3);
        auto b = testing_support::random_multipoly(rng, p, 2, 2, 3);
        if (g.is_zero() || a.is_zero() || b.is_zero()) continue;
        auto d = gcd(g * a, g * b);
        EXPECT_TRUE(divide(g * a, d).second.is_zero());
        EXPECT_TRUE(divide(g * b, d).second.is_zero());
        EXPECT_TRUE(divide(d, g.monic()).second.is_zero());
    }
}

TEST(PPower, Polynomials) {
    EXPECT_TRUE(is_p_power_poly(mp("t^2", 2, kT)));
    EXPECT_EQ(p_root_poly(mp("t^2", 2, kT)), mp("t", 2, kT));
    EXPECT_FALSE(is_p_power_poly(mp("t", 2, kT)));
    EXPECT_THROW(p_root_poly(mp("t", 2, kT)), NotAPower);
    const std::vector<std::string> tt{"t1", "t2"};
    auto f = mp("t1^2*t2^4 + t2^2", 2, tt);
    ASSERT_TRUE(is_p_power_poly(f));
    auto root = p_root_poly(f);
    EXPECT_EQ(root, mp("t1*t2^2 + t2", 2, tt));
    EXPECT_EQ(root.pow(2), f);
}

TEST(PPower, RationalFunctions) {
    RatFuncContext k(2, 1);
    EXPECT_FALSE(parse_ratfunc("t", k, kT).is_p_power());
    auto f = parse_ratfunc("t^2/(t+1)^2", k, kT);
    ASSERT_TRUE(f.is_p_power());
    EXPECT_EQ(f.p_root(), parse_ratfunc("t/(t+1)", k, kT));
    EXPECT_EQ(RatFunc::one(k).p_root(), RatFunc::one(k));
    EXPECT_THROW(parse_ratfunc("t", k, kT).p_root(), NotAPower);
}

TEST(PPower, FrobeniusRoundtripProperty) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        unsigned p = std::array<unsigned, 3>{2, 3, 5}[trial % 3];
        auto f = testing_support::random_multipoly(rng, p, 2, 3, 4);
        auto fp = f.pow(p);
        EXPECT_TRUE(is_p_power_poly(fp));
        EXPECT_EQ(p_root_poly(fp), f);
    }
}

TEST(RatFunc, NormalizationInvariants) {
    RatFuncContext k(3, 1);
    auto f = parse_ratfunc("(t^2 - 1)/(2*t + 2)", k, kT);
    EXPECT_EQ(f, parse_ratfunc("2*t + 1", k, kT));  // (t-1)/2 = 2t - 2 = 2t + 1 mod 3
    EXPECT_TRUE(f.den().is_one());
    auto g = parse_ratfunc("1/(2*t)", k, kT);
    EXPECT_TRUE(g.den().lc().is_one());
}

TEST(RatFunc, InverseProductProperty) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        unsigned p = std::array<unsigned, 3>{2, 3, 5}[trial % 3];
        std::size_t d = 1 + trial % 2;
        auto f = testing_support::random_ratfunc(rng, p, d, 2);
        auto g = testing_support::random_ratfunc(rng, p, d, 2);
        if (f.is_zero() || g.is_zero()) continue;
        EXPECT_TRUE(((f / g) * (g / f)).is_one());
        EXPECT_EQ((f + g) - g, f);
    }
}

TEST(RatFunc, PComponentsRecombine) {
    RatFuncContext k(3, 2);
    const std::vector<std::string> tt{"t1", "t2"};
    auto f = parse_ratfunc("(t1^2*t2 + t2^4 + 1)/(t1 + t2)", k, tt);
    auto comps = f.p_components();
    ASSERT_EQ(comps.size(), 9u);
    RatFunc sum = RatFunc::zero(k);
    for (std::size_t idx = 0; idx < comps.size(); ++idx) {
        EXPECT_TRUE(comps[idx].is_p_power());
        RatFunc mono = RatFunc::param(k, 0).pow(idx % 3) * RatFunc::param(k, 1).pow(idx / 3);
        sum += mono * comps[idx];
    }
    EXPECT_EQ(sum, f);
}

TEST(Groebner, Examples) {
    RatFuncContext k(2, 1);
    auto pp = [&](const std::string& s) { return parse_poly(s, k, kXY, kT); };

    auto g1 = groebner_basis(IdealPresentation<RatFunc>{{pp("x")}});
    ASSERT_EQ(g1.size(), 1u);
    EXPECT_EQ(g1.generators()[0], pp("x"));

    auto g2 = groebner_basis(IdealPresentation<RatFunc>{{pp("x^2 + t"), pp("x^2")}});
    EXPECT_TRUE(g2.is_unit());

    auto lex = [&](const std::string& s) { return parse_poly(s, k, kXY, kT, MonomialOrder::Lex); };
    auto g3 = groebner_basis(IdealPresentation<RatFunc>{{lex("y"), lex("x^2 + t")}});
    ASSERT_EQ(g3.size(), 2u);
    EXPECT_EQ(g3.generators()[0], lex("x^2 + t"));
    EXPECT_EQ(g3.generators()[1], lex("y"));
}

TEST(Groebner, IdempotentAndMembership) {
    RatFuncContext k(3, 1);
    auto pp = [&](const std::string& s) { return parse_poly(s, k, kXY, kT); };
    IdealPresentation<RatFunc> I{{pp("x^2*y - t"), pp("x*y^2 + x + 1")}};
    auto gb = groebner_basis(I);
    for (const auto& g : I.generators) EXPECT_TRUE(gb.contains(g));
    auto again = groebner_basis(IdealPresentation<RatFunc>{gb.generators()});
    EXPECT_EQ(again, gb);
    EXPECT_TRUE(gb.contains(pp("(x^2*y - t)*(x + t) + y^3*(x*y^2 + x + 1)")));
    EXPECT_FALSE(gb.reduce(pp("1")).is_zero());
    // Reducedness: no term of a generator is divisible by another leading monomial.
    for (std::size_t i = 0; i < gb.size(); ++i) {
        EXPECT_TRUE(gb.generators()[i].lc().is_one());
        for (std::size_t j = 0; j < gb.size(); ++j) {
            if (i == j) continue;
            for (const auto& t : gb.generators()[i].terms()) EXPECT_FALSE(gb.generators()[j].lm().divides(t.m));
        }
    }
}

TEST(QuotientDim, Examples) {
    RatFuncContext k(2, 1);
    auto pp = [&](const std::string& s) { return parse_poly(s, k, kXY, kT); };
    auto q1 = quotient_dim(IdealPresentation<RatFunc>{{pp("x"), pp("y")}});
    EXPECT_EQ(q1.krull_dim, 0);
    EXPECT_EQ(q1.vector_dim, std::optional<std::size_t>(1));

    auto q2 = quotient_dim(IdealPresentation<RatFunc>{{pp("y^2"), pp("x^2 + t")}});
    EXPECT_EQ(q2.krull_dim, 0);
    EXPECT_EQ(q2.vector_dim, std::optional<std::size_t>(4));
    std::vector<std::string> rendered;
    for (const auto& m : q2.standard_monomials) rendered.push_back(render_monomial(m, kXY));
    std::sort(rendered.begin(), rendered.end());
    EXPECT_EQ(rendered, (std::vector<std::string>{"1", "x", "x*y", "y"}));

    auto q3 = quotient_dim(IdealPresentation<RatFunc>{{pp("x^2 + y^3 + t")}});
    EXPECT_EQ(q3.krull_dim, 1);
    EXPECT_FALSE(q3.finite());
}

TEST(QuotientDim, AgreesWithClosureOracle) {
    std::mt19937_64 rng(5);
    int checked = 0;
    for (int trial = 0; checked < 25 && trial < 400; ++trial) {
        unsigned p = std::array<unsigned, 3>{2, 3, 5}[trial % 3];
        auto ideal = testing_support::random_zero_dim_ideal(rng, p, 1, 2);
        auto gb = groebner_basis(ideal);
        auto q = gb.quotient_dim();
        if (!q.finite()) continue;
        EXPECT_EQ(*q.vector_dim, testing_support::closure_dimension(gb, ideal.nvars()));
        ++checked;
    }
    EXPECT_GE(checked, 20);
}

TEST(Rendering, CanonicalTextRoundTrips) {
    RatFuncContext k(3, 1);
    auto f = parse_poly("x^2 + y^3 - t + (t+1)/(t^2+2)*x*y", k, kXY, kT);
    EXPECT_EQ(parse_poly(f.to_string(kXY, kT), k, kXY, kT), f);
    EXPECT_EQ(parse_poly("x^2 + y^3 + t", RatFuncContext(2, 1), kXY, kT).to_string(kXY, kT), "y^3 + x^2 + t");
    EXPECT_EQ(mp("x^2 - 1", 3, {"x"}).to_string({"x"}), "x^2 + 2");
}

TEST(ExprParser, ReportsColumn) {
    try {
        parse_multipoly("x + * y", PrimeContext(2), kXY);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 1u);
        EXPECT_EQ(e.column(), 5u);
    }
    EXPECT_THROW(parse_multipoly("x + z", PrimeContext(2), kXY), ParseError);
}
