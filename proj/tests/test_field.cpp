#include <gtest/gtest.h>

#include <set>

#include "prigid/field.hpp"

using namespace prigid;

namespace {

std::vector<FqElem> all_elements(const FqField& F) {
    std::vector<FqElem> out;
    for (u128 c = 0; c < F.order(); ++c) out.push_back(F.decode(c));
    return out;
}

bool has_root_brute(const FqPoly& f) {
    for (auto& x : all_elements(f.field()))
        if (f.eval(x).is_zero()) return true;
    return false;
}

FqPoly monic_from_code(const FqField& F, int deg, u64 code) {
    std::vector<FqElem> c;
    for (int i = 0; i < deg; ++i) {
        c.push_back(F.from_int(static_cast<long long>(code % F.ell())));
        code /= F.ell();
    }
    c.push_back(F.one());
    return FqPoly(F, c);
}

}  // namespace

TEST(FiniteField, PrimeFieldBasics) {
    const FqField& F = field_make(7, 1);
    EXPECT_EQ(F.order(), 7u);
    EXPECT_TRUE(F.is_prime_field());
    EXPECT_EQ(F.from_int(3) * F.from_int(5), F.from_int(1));
    EXPECT_EQ(F.from_int(-1), F.from_int(6));
    EXPECT_EQ(F.from_int(3).inv(), F.from_int(5));
}

TEST(FiniteField, SmallestIrreducibleCubicModulus) {
    const FqField& F = field_make(7, 3);
    const FqField& B = field_make(7, 1);
    FqPoly m = modulus_poly(F);
    ASSERT_EQ(m.degree(), 3);
    // sieve: first monic cubic without a root, in lexicographic order of (c2, c1, c0)
    std::optional<FqPoly> first;
    for (u64 c2 = 0; c2 < 7 && !first; ++c2)
        for (u64 c1 = 0; c1 < 7 && !first; ++c1)
            for (u64 c0 = 0; c0 < 7 && !first; ++c0) {
                FqPoly f = FqPoly::from_ints(B, {static_cast<long long>(c0), static_cast<long long>(c1), static_cast<long long>(c2), 1});
                if (!has_root_brute(f)) first = f;
            }
    ASSERT_TRUE(first);
    EXPECT_EQ(m, *first);
}

TEST(FiniteField, AxiomsOnSamples) {
    for (auto [ell, f] : std::vector<std::pair<u64, int>>{{7, 3}, {3, 4}, {2, 5}, {13, 2}}) {
        const FqField& F = field_make(ell, f);
        FqRandom rng(99 + ell);
        for (int i = 0; i < 200; ++i) {
            FqElem a = rng.elem(F), b = rng.elem(F), c = rng.elem(F);
            EXPECT_EQ((a * b) * c, a * (b * c));
            EXPECT_EQ(a * (b + c), a * b + a * c);
            EXPECT_EQ(a + b, b + a);
            if (!a.is_zero()) EXPECT_TRUE((a * a.inv()).is_one());
        }
    }
}

TEST(FiniteField, FrobeniusFixesEverything) {
    const FqField& F = field_make(7, 2);
    for (auto& x : all_elements(F)) {
        EXPECT_EQ(x.pow(49), x);
        EXPECT_EQ(x.frobenius(2), x);
        EXPECT_EQ(x.frobenius(1), x.pow(7));
    }
}

TEST(FiniteField, EncodingRoundTrip) {
    const FqField& F = field_make(5, 3);
    for (u128 c = 0; c < F.order(); ++c) EXPECT_EQ(F.decode(c).encode(), c);
}

TEST(FiniteField, RootsOfUnityDepth) {
    EXPECT_EQ(roots_of_unity_depth(field_make(7, 1), 3), 1);
    EXPECT_EQ(roots_of_unity_depth(field_make(19, 1), 3), 2);
    EXPECT_EQ(roots_of_unity_depth(field_make(2, 2), 3), 1);
    EXPECT_EQ(roots_of_unity_depth(field_make(7, 3), 3), 2);
    EXPECT_THROW(roots_of_unity_depth(field_make(5, 1), 3), usage_error);
}

TEST(FiniteField, PowerResidueClassExamples) {
    const FqField& F = field_make(7, 1);
    const FqElem zeta = F.from_int(2);
    EXPECT_EQ(power_residue_class(F.from_int(1), 3, zeta), 0u);
    EXPECT_EQ(power_residue_class(F.from_int(3), 3, zeta), 1u);
    EXPECT_EQ(power_residue_class(F.from_int(6), 3, zeta), 0u);
    EXPECT_THROW(power_residue_class(F.zero(), 3, zeta), usage_error);
}

TEST(FiniteField, PowerResidueClassMatchesBruteForce) {
    for (auto [ell, f, p] : std::vector<std::tuple<u64, int, u64>>{{7, 1, 3}, {13, 1, 3}, {7, 2, 3}, {11, 1, 5}, {4, 1, 3}}) {
        const FqField& F = ell == 4 ? field_make(2, 2) : field_make(ell, f);
        std::set<u128> powers;
        for (auto& y : all_elements(F))
            if (!y.is_zero()) powers.insert(y.pow(p).encode());
        const FqElem zeta = primitive_root_of_unity(F, p);
        for (auto& x : all_elements(F)) {
            if (x.is_zero()) continue;
            const u64 c = power_residue_class(x, p, zeta);
            EXPECT_EQ(c == 0, powers.count(x.encode()) == 1) << x.str();
            for (auto& y : {F.from_int(2), F.from_int(3)}) {
                if (y.is_zero()) continue;
                EXPECT_EQ(power_residue_class(x * y, p, zeta), (c + power_residue_class(y, p, zeta)) % p);
            }
        }
    }
}

TEST(FiniteField, CanonicalNonresidue) {
    const FqField& F = field_make(7, 1);
    EXPECT_EQ(primitive_root_of_unity(F, 3), F.from_int(2));
    EXPECT_EQ(canonical_nonresidue(F, 3), F.from_int(3));
    for (auto [ell, p] : std::vector<std::pair<u64, u64>>{{13, 3}, {19, 3}, {11, 5}, {31, 5}}) {
        const FqField& G = field_make(ell, 1);
        FqElem u = canonical_nonresidue(G, p);
        const FqElem z = primitive_root_of_unity(G, p);
        EXPECT_EQ(power_residue_class(u, p, z), 1u);
        for (u64 a = 1; a < u.encode(); ++a) EXPECT_NE(power_residue_class(G.from_int(a), p, z), 1u);
    }
}

TEST(FiniteField, PthRoots) {
    const FqField& F = field_make(7, 1);
    auto r = pth_roots_fq(F.from_int(6), 3);
    ASSERT_EQ(r.size(), 3u);
    EXPECT_EQ(r[0], F.from_int(3));
    EXPECT_EQ(r[1], F.from_int(5));
    EXPECT_EQ(r[2], F.from_int(6));
    EXPECT_EQ(pth_root_fq(F.one(), 3), F.one());
    EXPECT_THROW(pth_root_fq(F.from_int(3), 3), usage_error);
    const FqField& K = field_make(7, 3);
    FqElem y = pth_root_fq(K.from_int(3), 3);
    EXPECT_EQ(y.pow(3), K.from_int(3));
}

TEST(FiniteField, CompatibleRootOfUnityChain) {
    const FqField& F = field_make(7, 9);
    const FqElem z3 = primitive_root_of_unity(F, 3);
    FqElem prev = z3;
    for (int h = 2; h <= 3; ++h) {
        FqElem z = root_of_unity_chain(z3, 3, h);
        EXPECT_EQ(z.pow(3), prev);
        EXPECT_FALSE(z.pow(checked_pow(3, h - 1)).is_one());
        EXPECT_TRUE(z.pow(checked_pow(3, h)).is_one());
        prev = z;
    }
    EXPECT_THROW(root_of_unity(field_make(7, 1), 3, 2), usage_error);
}

TEST(FiniteField, EmbeddingIsRingHomomorphism) {
    for (auto [f1, f2] : std::vector<std::pair<int, int>>{{1, 3}, {3, 9}, {1, 9}}) {
        const FqField& A = field_make(7, f1);
        const FqField& B = field_make(7, f2);
        Embedding phi = make_embedding(A, B);
        FqRandom rng(5);
        for (int i = 0; i < 100; ++i) {
            FqElem a = rng.elem(A), b = rng.elem(A);
            EXPECT_EQ(phi(a * b), phi(a) * phi(b));
            EXPECT_EQ(phi(a + b), phi(a) + phi(b));
        }
        EXPECT_TRUE(phi(A.one()).is_one());
    }
}

TEST(Polynomials, FactorExamples) {
    const FqField& F = field_make(7, 1);
    auto f = factorize(FqPoly::from_ints(F, {-1, 0, 1}));
    ASSERT_EQ(f.factors.size(), 2u);
    EXPECT_EQ(f.factors[0].first.degree(), 1);
    auto g = factorize(FqPoly::from_ints(F, {-1, 0, 0, 0, 0, 0, 1}));
    EXPECT_EQ(g.factors.size(), 6u);
    for (auto& [h, m] : g.factors) {
        EXPECT_EQ(h.degree(), 1);
        EXPECT_EQ(m, 1);
    }
    EXPECT_THROW(factorize(FqPoly(F)), usage_error);
}

TEST(Polynomials, FactorizationProperties) {
    for (auto [ell, f] : std::vector<std::pair<u64, int>>{{7, 1}, {3, 2}, {5, 1}, {2, 3}}) {
        const FqField& F = field_make(ell, f);
        FqRandom rng(1234 + ell);
        for (int i = 0; i < 60; ++i) {
            FqPoly p = rng.poly(F, 9);
            if (p.degree() < 1) continue;
            auto fac = factorize(p);
            FqPoly prod = FqPoly::constant(fac.unit);
            for (auto& [g, m] : fac.factors) {
                EXPECT_TRUE(g.is_monic());
                EXPECT_TRUE(is_irreducible(g)) << g.str();
                prod = prod * g.pow(static_cast<u64>(m));
            }
            EXPECT_EQ(prod, p);
        }
    }
}

TEST(Polynomials, IrreducibilityMatchesRootSieveInLowDegree) {
    const FqField& F = field_make(5, 1);
    for (int deg : {2, 3})
        for (u64 code = 0; code < checked_pow(5, deg); ++code) {
            FqPoly f = monic_from_code(F, deg, code);
            EXPECT_EQ(is_irreducible(f), !has_root_brute(f)) << f.str();
        }
}

TEST(Polynomials, RootsMatchBruteForce) {
    const FqField& F = field_make(3, 2);
    FqRandom rng(8);
    for (int i = 0; i < 50; ++i) {
        FqPoly p = rng.poly(F, 7);
        if (p.is_zero()) continue;
        std::vector<FqElem> brute;
        for (auto& x : all_elements(F))
            if (p.eval(x).is_zero()) brute.push_back(x);
        EXPECT_EQ(roots(p), brute);
    }
}

TEST(Polynomials, SquarefreeDecomposition) {
    const FqField& F = field_make(3, 1);
    FqPoly a = FqPoly::from_ints(F, {1, 1});
    FqPoly b = FqPoly::from_ints(F, {1, 0, 1});
    FqPoly f = a.pow(3) * b.pow(2);
    auto sf = squarefree_decomposition(f);
    FqPoly prod = FqPoly::constant(F.one());
    for (auto& [g, m] : sf) prod = prod * g.pow(static_cast<u64>(m));
    EXPECT_EQ(prod, f.monic());
}
