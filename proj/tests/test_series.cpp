#include <gtest/gtest.h>

#include "prigid/symbol.hpp"

using namespace prigid;

namespace {

Laurent series_of(const FqField& F, long long val, std::vector<long long> c, long long prec = Laurent::kExact) {
    std::vector<FqElem> e;
    for (long long x : c) e.push_back(F.from_int(x));
    return Laurent(F, val, e, prec);
}

Laurent random_unit(FqRandom& rng, const FqField& F, int len, long long prec) {
    std::vector<FqElem> c;
    FqElem c0;
    do c0 = rng.elem(F);
    while (c0.is_zero());
    c.push_back(c0);
    for (int i = 1; i < len; ++i) c.push_back(rng.elem(F));
    return Laurent(F, 0, c, prec);
}

RatFunc random_ratfunc(FqRandom& rng, const FqField& F) {
    FqPoly n, d;
    do n = rng.poly(F, 4);
    while (n.is_zero());
    do d = rng.poly(F, 4);
    while (d.is_zero());
    return RatFunc(n, d);
}

}  // namespace

TEST(Laurent, ArithmeticAndPrecision) {
    const FqField& F = field_make(7, 1);
    Laurent a = series_of(F, -1, {1, 2, 3}, 5);
    Laurent b = series_of(F, 0, {4, 5});
    Laurent s = a + b;
    EXPECT_EQ(s.precision(), 5);
    EXPECT_EQ(s.coeff(-1), F.from_int(1));
    EXPECT_EQ(s.coeff(0), F.from_int(6));
    EXPECT_EQ(s.coeff(1), F.from_int(1));
    EXPECT_THROW(s.coeff(5), precision_error);
    Laurent m = a * b;
    EXPECT_EQ(m.valuation(), -1);
    EXPECT_EQ(m.precision(), 5);
    EXPECT_THROW(Laurent(F).valuation(), usage_error);
    EXPECT_THROW(Laurent::zero_to(F, 3).valuation(), precision_error);
}

TEST(Laurent, InverseProperty) {
    const FqField& F = field_make(7, 3);
    FqRandom rng(11);
    for (int i = 0; i < 50; ++i) {
        Laurent u = random_unit(rng, F, 6, Laurent::kExact).shifted(static_cast<long long>(rng.next() % 5) - 2);
        Laurent inv = u.inverse(12);
        Laurent prod = u * inv - Laurent::constant(F.one());
        EXPECT_TRUE(prod.is_zero());
        EXPECT_GE(prod.precision(), 12);
    }
}

TEST(Laurent, CubeRootOfOnePlusT) {
    const FqField& F = field_make(7, 1);
    auto r = laurent_pth_root(series_of(F, 0, {1, 1}), 3, 3);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->coeff(0), F.from_int(1));
    EXPECT_EQ(r->coeff(1), F.from_int(5));
    EXPECT_EQ(r->coeff(2), F.from_int(3));
    EXPECT_EQ(r->precision(), 3);
    EXPECT_FALSE(laurent_pth_root(series_of(F, 1, {1}), 3, 8));
    EXPECT_FALSE(laurent_pth_root(series_of(F, 0, {3}), 3, 8));
}

TEST(Laurent, PthRootRoundTrip) {
    for (auto [ell, f, p] : std::vector<std::tuple<u64, int, u64>>{{7, 1, 3}, {13, 1, 3}, {11, 1, 5}, {7, 3, 3}}) {
        const FqField& F = field_make(ell, f);
        FqRandom rng(31 + ell);
        for (int i = 0; i < 30; ++i) {
            Laurent y = random_unit(rng, F, 8, Laurent::kExact).shifted(static_cast<long long>(rng.next() % 3));
            Laurent a = y.pow(static_cast<long long>(p), 16).truncated(y.valuation() * static_cast<long long>(p) + 16);
            auto r = laurent_pth_root(a, p, 16);
            ASSERT_TRUE(r);
            Laurent back = r->pow(static_cast<long long>(p), 16) - a;
            EXPECT_TRUE(back.is_zero());
        }
    }
}

TEST(Laurent, RamifyAndTwist) {
    const FqField& F = field_make(7, 1);
    Laurent a = series_of(F, 1, {1, 2});
    Laurent r = a.ramified(3);
    EXPECT_EQ(r.valuation(), 3);
    EXPECT_EQ(r.coeff(6), F.from_int(2));
    EXPECT_EQ(r.coeff(4), F.zero());
    Laurent tw = a.twisted(F.from_int(3));
    EXPECT_EQ(tw.coeff(1), F.from_int(3));
    EXPECT_EQ(tw.coeff(2), F.from_int(2 * 9 % 7));
}

TEST(RatFunc, Normalisation) {
    const FqField& F = field_make(7, 1);
    RatFunc a(FqPoly::from_ints(F, {0, 2}), FqPoly::from_ints(F, {0, 0, 4}));
    EXPECT_TRUE(a.den().is_monic());
    EXPECT_EQ(a.den().degree(), 1);
    EXPECT_EQ(a.valuation_at(FqPoly::x(F)), -1);
    EXPECT_EQ(a.valuation_at_infinity(), 1);
    EXPECT_TRUE((a * a.inv()).is_one());
}

TEST(RatFunc, FieldAxiomsOnSamples) {
    const FqField& F = field_make(5, 1);
    FqRandom rng(77);
    for (int i = 0; i < 100; ++i) {
        RatFunc a = random_ratfunc(rng, F), b = random_ratfunc(rng, F), c = random_ratfunc(rng, F);
        EXPECT_EQ((a + b) * c, a * c + b * c);
        EXPECT_EQ((a * b) / b, a);
        EXPECT_EQ(a - a, RatFunc(F));
    }
}

TEST(RatFunc, ValuationsAreAdditive) {
    const FqField& F = field_make(7, 1);
    FqRandom rng(5);
    const FqPoly pi = FqPoly::from_ints(F, {1, 1});
    for (int i = 0; i < 100; ++i) {
        RatFunc a = random_ratfunc(rng, F), b = random_ratfunc(rng, F);
        EXPECT_EQ((a * b).valuation_at(pi), a.valuation_at(pi) + b.valuation_at(pi));
        EXPECT_EQ((a * b).valuation_at_infinity(), a.valuation_at_infinity() + b.valuation_at_infinity());
    }
}

TEST(RatFunc, ProductFormulaOverSupport) {
    for (auto [ell, f] : std::vector<std::pair<u64, int>>{{7, 1}, {3, 2}}) {
        const FqField& F = field_make(ell, f);
        FqRandom rng(123);
        for (int i = 0; i < 60; ++i) {
            RatFunc a = random_ratfunc(rng, F);
            long long total = a.valuation_at_infinity();
            for (auto& P : support(a)) {
                EXPECT_FALSE(P.infinite);
                total += a.valuation_at(P.pi) * P.pi.degree();
            }
            EXPECT_EQ(total, 0) << a.str();
        }
    }
}
