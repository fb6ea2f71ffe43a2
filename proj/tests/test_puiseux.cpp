#include <gtest/gtest.h>

#include <random>

#include "prigid/parse.hpp"
#include "prigid/puiseux.hpp"

using namespace prigid;

namespace {

PuiseuxResult solve(const std::string& field, const std::string& poly, long long prec = 6) {
    auto D = parse_field(field, 3);
    PuiseuxOptions opt;
    opt.precision = prec;
    return puiseux_roots(D, parse_xpoly(poly, *D.F, D.precision), opt);
}

// prod (X - r_i) in F_Q((z))[X], compared with f after t -> z^e
void expect_factorization(const FieldDescriptor& D, const LaurentPoly& f, const PuiseuxResult& res, const std::string& label) {
    ASSERT_FALSE(res.roots.empty()) << label;
    const FqField& FQ = *res.field;
    const u64 e = res.roots.front().e;
    const long long T = res.roots.front().precision * static_cast<long long>(e);
    Embedding phi = make_embedding(*D.F, FQ);
    LaurentPoly prod{Laurent::constant(FQ.one())};
    for (auto& r : res.roots) prod = detail::poly_mul(prod, LaurentPoly{-r.series, Laurent::constant(FQ.one())});
    const int n = poly_degree(f);
    ASSERT_EQ(static_cast<int>(prod.size()), n + 1) << label;
    for (int i = 0; i <= n; ++i) {
        Laurent want = f[i].mapped(phi).ramified(static_cast<long long>(e));
        Laurent d = prod[i] - want;
        EXPECT_TRUE(d.is_zero()) << label << " coefficient " << i << ": " << d.str();
        EXPECT_GE(d.precision(), T) << label;
    }
}

std::string random_factor(std::mt19937_64& rng) {
    const int kind = static_cast<int>(rng() % 3);
    const u64 a = rng() % 7, b = 1 + rng() % 6, c = rng() % 7;
    if (kind == 0) return "(x-" + std::to_string(a) + "-" + std::to_string(b) + "*t)";
    if (kind == 1) return "((x-" + std::to_string(a) + ")^3-" + std::to_string(b) + "*t^" + std::to_string(rng() % 3) + "*(1+" + std::to_string(c) + "*t))";
    const u64 cube = b * b * b % 7;
    return "(x^9-" + std::to_string(cube) + "*t)";
}

}  // namespace

TEST(NewtonPolygon, Examples) {
    const FqField& F = field_make(7, 1);
    auto segs = newton_polygon(parse_xpoly("x^3-t", F));
    ASSERT_EQ(segs.size(), 1u);
    EXPECT_EQ(segs[0].slope, Rational::make(1, 3));
    EXPECT_EQ(segs[0].length, 3);
    auto two = newton_polygon(parse_xpoly("(x-t)*(x-1)", F));
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two[0].slope, Rational::make(1, 1));
    EXPECT_EQ(two[1].slope, Rational::make(0, 1));
    auto neg = newton_polygon(parse_xpoly("t*x^2-1", F));
    ASSERT_EQ(neg.size(), 1u);
    EXPECT_EQ(neg[0].slope, Rational::make(-1, 2));
}

TEST(Puiseux, CubeRootOfOnePlusT) {
    auto res = solve("laurent(7)", "x^3-(1+t)", 3);
    ASSERT_EQ(res.roots.size(), 3u);
    EXPECT_EQ(res.r, 0);
    EXPECT_EQ(res.s, 0);
    const FqField& F = field_make(7, 1);
    bool found = false;
    for (auto& r : res.roots) {
        EXPECT_EQ(r.r, 0);
        EXPECT_EQ(r.s, 0);
        if (r.series.coeff(0) == F.one()) {
            found = true;
            EXPECT_EQ(r.series.coeff(1), F.from_int(5));
            EXPECT_EQ(r.series.coeff(2), F.from_int(3));
        }
    }
    EXPECT_TRUE(found);
}

TEST(Puiseux, SplittingLevels) {
    auto D = parse_field("laurent(7)", 3);
    struct Case {
        std::string poly;
        int r, s, level;
    };
    for (auto& c : std::vector<Case>{{"x-1", 0, 0, 1}, {"x^3-t", 0, 1, 2}, {"x^9-t", 1, 2, 3}, {"x^3-3", 1, 0, 2}}) {
        auto res = puiseux_roots(D, parse_xpoly(c.poly, *D.F));
        auto sd = splitting_descriptor(D, res);
        EXPECT_EQ(sd.r, c.r) << c.poly;
        EXPECT_EQ(sd.s, c.s) << c.poly;
        EXPECT_EQ(sd.level, c.level) << c.poly;
        EXPECT_TRUE(sd.contained) << c.poly;
        EXPECT_TRUE(galois_stable(D, res)) << c.poly;
    }
}

TEST(Puiseux, VerifyRoot) {
    auto D = parse_field("laurent(7)", 3);
    const FqField& F = *D.F;
    auto f = parse_xpoly("x^3-t", F);
    auto res = puiseux_roots(D, f);
    for (auto& r : res.roots) {
        auto chk = verify_root(f, r);
        EXPECT_TRUE(chk.ok);
        EXPECT_TRUE(chk.exact_zero);
    }
    auto g = parse_xpoly("x^3-(1+t)", F);
    PuiseuxRoot wrong{parse_laurent("1+t", F).truncated(8), 1, 0, 0, 8, false};
    auto bad = verify_root(g, wrong);
    EXPECT_FALSE(bad.ok);
    ASSERT_TRUE(bad.offending);
    EXPECT_EQ(*bad.offending, 1);
}

TEST(Puiseux, NonnestedRadicals) {
    auto D = parse_field("laurent(7)", 3);
    auto res = puiseux_roots(D, parse_xpoly("x^9-t", *D.F));
    ASSERT_EQ(res.roots.size(), 9u);
    int with_w = 0;
    for (auto& r : res.roots) {
        auto ex = as_nonnested_radicals(D, r);
        EXPECT_TRUE(ex.nonnested);
        EXPECT_TRUE(ex.minimal_polynomial_irreducible);
        EXPECT_EQ(r.s, 2);
        ASSERT_EQ(ex.generators.size(), r.r == 1 ? 2u : 1u);
        EXPECT_EQ(ex.generators.back().degree, 9u);
        EXPECT_FALSE(ex.generators.back().constant);
        if (r.r == 1) {
            ++with_w;
            EXPECT_EQ(ex.generators[0].degree, 3u);
            EXPECT_EQ(*ex.generators[0].constant, D.unit_generator());
            // w^3 = u* in the solving field
            EXPECT_EQ(ex.w.pow(3), make_embedding(*D.F, *res.field)(D.unit_generator()));
        }
    }
    // zeta_9^i t^(1/9): the coefficient leaves F_7 unless zeta_9^i is already in F_7, i.e. i in {0, 3, 6}
    EXPECT_EQ(with_w, 6);
}

TEST(Puiseux, ScopeAndUsageErrors) {
    auto D = parse_field("laurent(7)", 3);
    EXPECT_THROW(puiseux_roots(D, parse_xpoly("x^2-3", *D.F)), out_of_scope_error);
    EXPECT_THROW(puiseux_roots(D, parse_xpoly("x^2-t", *D.F)), out_of_scope_error);
    EXPECT_THROW(puiseux_roots(D, parse_xpoly("(x+1)^2", *D.F)), usage_error);
    EXPECT_THROW(puiseux_roots(D, parse_xpoly("5", *D.F)), usage_error);
    PuiseuxOptions tight;
    tight.tame_bound = 3;
    EXPECT_THROW(puiseux_roots(D, parse_xpoly("x^9-t", *D.F), tight), out_of_scope_error);
    EXPECT_THROW(puiseux_roots(parse_field("ratfunc(7)", 3), parse_xpoly("x-1", *D.F)), usage_error);
}

TEST(Puiseux, FactorizationOracleOnExamples) {
    auto D = parse_field("laurent(7)", 3);
    for (const std::string p : {"x^3-(1+t)", "x^9-t", "(x-t)*(x-1)", "x^2-x+t", "x^3-3*t^2", "x^3-t^(-1)"}) {
        auto f = parse_xpoly(p, *D.F);
        expect_factorization(D, f, puiseux_roots(D, f), p);
    }
}

TEST(Puiseux, FactorizationOracleOnRandomProducts) {
    auto D = parse_field("laurent(7)", 3);
    std::mt19937_64 rng(4242);
    int solved = 0, resampled = 0;
    while (solved < 100) {
        std::string poly = random_factor(rng);
        if (rng() % 2) poly += "*" + random_factor(rng);
        auto f = parse_xpoly(poly, *D.F);
        PuiseuxResult res;
        try {
            PuiseuxOptions opt;
            opt.precision = 4;
            res = puiseux_roots(D, f, opt);
        } catch (const usage_error&) {
            ++resampled;
            ASSERT_LT(resampled, 100);
            continue;
        }
        ++solved;
        EXPECT_EQ(static_cast<int>(res.roots.size()), poly_degree(f)) << poly;
        expect_factorization(D, f, res, poly);
        EXPECT_TRUE(galois_stable(D, res)) << poly;
        for (auto& r : res.roots) EXPECT_TRUE(as_nonnested_radicals(D, r).nonnested) << poly;
    }
}
