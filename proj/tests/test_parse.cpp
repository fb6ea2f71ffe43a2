#include <gtest/gtest.h>

#include "prigid/parse.hpp"

using namespace prigid;

TEST(ParseField, Descriptors) {
    auto a = parse_field("gf(7)", 3);
    EXPECT_EQ(a.kind, FieldDescriptor::Kind::Fin);
    EXPECT_EQ(a.str(), "gf(7)");
    auto b = parse_field("laurent(7^3, 32)", 3);
    EXPECT_EQ(b.kind, FieldDescriptor::Kind::Laurent);
    EXPECT_EQ(b.precision, 32);
    EXPECT_EQ(b.k, 2);
    EXPECT_EQ(b.str(), "laurent(7^3,32)");
    EXPECT_EQ(parse_field("laurent(7)", 3).precision, 64);
    EXPECT_EQ(parse_field("laurent(7,20)", 3, 40).precision, 40);
    EXPECT_EQ(parse_field("ratfunc(2^2)", 3).str(), "ratfunc(2^2)");
    for (const std::string s : {"gf(7", "field(7)", "gf(7,2)", "laurent()", "laurent(7,x)", "ratfunc(7,3)", "gf(a)"})
        EXPECT_THROW(parse_field(s, 3), usage_error) << s;
    EXPECT_THROW(parse_field("laurent(7,4)", 3), usage_error);
    EXPECT_THROW(parse_field("gf(5)", 3), usage_error);
    EXPECT_THROW(parse_field("gf(3)", 3), out_of_scope_error);
    EXPECT_THROW(parse_field("gf(7)", 4), usage_error);
}

TEST(ParseGroup, Descriptors) {
    EXPECT_EQ(parse_group("theta(3,1,1,3)")->order(), 729u);
    EXPECT_EQ(parse_group("theta(3, inf, 1, 2)")->order(), 81u);
    EXPECT_EQ(parse_group("ut(3,3,1)")->order(), 27u);
    for (const std::string s : {"theta(3,1,1)", "theta(3,1,1,x)", "ut(3,3)", "free(2)", "theta(3,1,1,3"})
        EXPECT_THROW(parse_group(s), usage_error) << s;
    EXPECT_THROW(parse_group("table:/nonexistent/file.json"), usage_error);
}

TEST(ParseExpr, FiniteFieldConstants) {
    const FqField& F = field_make(7, 3);
    EXPECT_EQ(parse_fq("3*5", F), F.from_int(1));
    EXPECT_EQ(parse_fq("2^-1", F), F.from_int(4));
    EXPECT_EQ(parse_fq("[0,1]^3", F), F.decode(7).pow(3));
    EXPECT_THROW(parse_fq("t", F), usage_error);
    EXPECT_THROW(parse_fq("1/0", F), usage_error);
    EXPECT_THROW(parse_fq("[1,2,3,4]", F), usage_error);
    EXPECT_THROW(parse_fq("", F), usage_error);
    EXPECT_THROW(parse_fq("1+", F), usage_error);
    EXPECT_THROW(parse_fq("(1", F), usage_error);
}

TEST(ParseExpr, LaurentSeries) {
    const FqField& F = field_make(7, 1);
    Laurent a = parse_laurent("t^2*[1,2,3]", F);
    EXPECT_EQ(a.valuation(), 2);
    EXPECT_EQ(a.coeff(4), F.from_int(3));
    Laurent b = parse_laurent("3t^(-1) + 1", F);
    EXPECT_EQ(b.valuation(), -1);
    EXPECT_EQ(b.leading(), F.from_int(3));
    Laurent c = parse_laurent("1/(1-t)", F, 10);
    EXPECT_EQ(c.precision(), 10);
    for (long long i = 0; i < 10; ++i) EXPECT_EQ(c.coeff(i), F.one());
    EXPECT_THROW(parse_laurent("x", F), usage_error);
    EXPECT_THROW(parse_laurent("1/(t-t)", F), usage_error);
}

TEST(ParseExpr, Polynomials) {
    const FqField& F = field_make(7, 1);
    auto f = parse_xpoly("x^3-(1+t)", F);
    ASSERT_EQ(f.size(), 4u);
    EXPECT_EQ(f[0], parse_laurent("-1-t", F));
    EXPECT_TRUE(f[1].is_exact_zero());
    EXPECT_EQ(f[3], Laurent::constant(F.one()));
    auto g = parse_xpoly("(x-1)*(x+1)/2", F);
    ASSERT_EQ(g.size(), 3u);
    EXPECT_EQ(g[2], Laurent::constant(F.from_int(4)));
    EXPECT_THROW(parse_xpoly("1/x", F), usage_error);
    EXPECT_THROW(parse_xpoly("x^-1", F), usage_error);
    RatFunc r = parse_ratfunc("(t^2-1)/(t-1)", F);
    EXPECT_EQ(r, parse_ratfunc("t+1", F));
}

TEST(Literals, RoundTrip) {
    FqRandom rng(17);
    for (auto [ell, f] : std::vector<std::pair<u64, int>>{{7, 1}, {7, 3}, {2, 2}}) {
        const FqField& F = field_make(ell, f);
        for (int i = 0; i < 50; ++i) {
            FqElem x = rng.elem(F);
            EXPECT_EQ(parse_fq(fq_literal(x), F), x);
            std::vector<FqElem> c{rng.elem(F), rng.elem(F), rng.elem(F)};
            Laurent a(F, static_cast<long long>(rng.next() % 7) - 3, c);
            EXPECT_EQ(parse_laurent(laurent_literal(a), F), a) << laurent_literal(a);
            FqPoly n = rng.poly(F, 4), d;
            do d = rng.poly(F, 3);
            while (d.is_zero());
            RatFunc r(n, d);
            EXPECT_EQ(parse_ratfunc(ratfunc_literal(r), F), r) << ratfunc_literal(r);
        }
    }
    const FqField& F = field_make(7, 1);
    EXPECT_EQ(laurent_literal(Laurent(F)), "0");
    EXPECT_THROW(laurent_literal(parse_laurent("1/(1-t)", F, 8)), usage_error);
}

TEST(Literals, ElementsByFieldKind) {
    auto D = parse_field("ratfunc(7)", 3);
    FieldElem e = parse_element(D, "t/(t+1)");
    ASSERT_TRUE(std::holds_alternative<RatFunc>(e));
    EXPECT_EQ(parse_element(D, element_literal(e)), e);
    auto L = parse_field("laurent(7,16)", 3);
    FieldElem l = parse_element(L, "1/(1+t)");
    ASSERT_TRUE(std::holds_alternative<Laurent>(l));
    EXPECT_EQ(std::get<Laurent>(l).precision(), 16);
}
