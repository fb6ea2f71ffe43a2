#include <gtest/gtest.h>

#include "prigid/parse.hpp"

using namespace prigid;

namespace {

u64 dlog(const FqElem& x, const FqElem& zeta, u64 p) {
    FqElem z = x.field().one();
    for (u64 c = 0; c < p; ++c) {
        if (z == x) return c;
        z = z * zeta;
    }
    ADD_FAILURE() << x.str() << " is not a power of zeta";
    return p;
}

/// Tame symbol by the residue formula, evaluated from scratch.
u64 local_oracle(const FieldDescriptor& D, const Laurent& a, const Laurent& b) {
    const long long va = a.valuation(), vb = b.valuation();
    FqElem w = a.leading().powi(vb) / b.leading().powi(va);
    if (va % 2 != 0 && vb % 2 != 0) w = -w;
    return dlog(w.pow((D.F->order() - 1) / D.p), D.zeta(), D.p);
}

/// Symbol at a finite place pi of degree d: reduce the unit a^vb b^-va mod pi and raise to (q^d - 1)/p.
u64 place_oracle(const FieldDescriptor& D, const RatFunc& a, const RatFunc& b, const FqPoly& pi) {
    const long long va = a.valuation_at(pi), vb = b.valuation_at(pi);
    RatFunc w = a.pow(vb) / b.pow(va);
    if (va % 2 != 0 && vb % 2 != 0) w = w.scaled(-D.F->one());
    const u128 e = (static_cast<u128>(checked_pow(static_cast<u64>(D.F->order()), static_cast<u64>(pi.degree()))) - 1) / D.p;
    FqPoly n = w.num().powmod(e, pi), d = w.den().powmod(e, pi);
    EXPECT_EQ(n.degree(), 0);
    EXPECT_EQ(d.degree(), 0);
    return dlog(n.coeff(0) / d.coeff(0), D.zeta(), D.p);
}

u64 infinity_oracle(const FieldDescriptor& D, const RatFunc& a, const RatFunc& b) {
    const long long va = a.valuation_at_infinity(), vb = b.valuation_at_infinity();
    RatFunc w = a.pow(vb) / b.pow(va);
    FqElem val = w.num().lead() / w.den().lead();
    if (va % 2 != 0 && vb % 2 != 0) val = -val;
    return dlog(val.pow((D.F->order() - 1) / D.p), D.zeta(), D.p);
}

Laurent random_laurent(FqRandom& rng, const FqField& F) {
    std::vector<FqElem> c;
    FqElem c0;
    do c0 = rng.elem(F);
    while (c0.is_zero());
    c.push_back(c0);
    for (int i = 0; i < 4; ++i) c.push_back(rng.elem(F));
    return Laurent(F, static_cast<long long>(rng.next() % 7) - 3, c, 16);
}

RatFunc random_ratfunc(FqRandom& rng, const FqField& F) {
    FqPoly n, d;
    do n = rng.poly(F, 4);
    while (n.is_zero());
    do d = rng.poly(F, 3);
    while (d.is_zero());
    return RatFunc(n, d);
}

FieldDescriptor field(const std::string& s, u64 p) { return parse_field(s, p); }

}  // namespace

TEST(FieldDescriptor, Basics) {
    auto L = field("laurent(7)", 3);
    EXPECT_EQ(L.str(), "laurent(7,64)");
    EXPECT_EQ(L.k, 1);
    EXPECT_EQ(L.zeta(), L.F->from_int(2));
    EXPECT_EQ(L.unit_generator(), L.F->from_int(3));
    EXPECT_EQ(field("laurent(19,32)", 3).k, 2);
    EXPECT_EQ(field("gf(7)", 3).str(), "gf(7)");
    EXPECT_THROW(field("laurent(5)", 3), usage_error);
    EXPECT_THROW(field("gf(7)", 4), usage_error);
}

TEST(PowerClass, Examples) {
    auto L = field("laurent(7)", 3);
    auto t = power_class(L, parse_element(L, "t"));
    EXPECT_EQ(t.unit, 0u);
    EXPECT_EQ(t.val, 1u);
    EXPECT_TRUE(power_class(L, parse_element(L, "8*t^3")).is_zero());
    auto R = field("ratfunc(7)", 3);
    auto c = power_class(R, parse_element(R, "t*(1-t)^2"));
    EXPECT_EQ(c.unit, 0u);
    EXPECT_EQ(c.inf, 0u);
    ASSERT_EQ(c.places.size(), 2u);
    for (auto& [P, v] : c.places) EXPECT_EQ(v, P.pi == FqPoly::x(*R.F) ? 1u : 2u);
}

TEST(PowerClass, PthPowerDetection) {
    auto L = field("laurent(7)", 3);
    auto r = is_pth_power(L, parse_element(L, "1+t"));
    ASSERT_TRUE(r);
    const Laurent& root = std::get<Laurent>(*r);
    EXPECT_EQ(root.coeff(0), L.F->from_int(1));
    EXPECT_EQ(root.coeff(1), L.F->from_int(5));
    EXPECT_EQ(root.coeff(2), L.F->from_int(3));
    EXPECT_FALSE(is_pth_power(L, parse_element(L, "t")));
    EXPECT_FALSE(is_pth_power(L, parse_element(L, "3")));
    auto R = field("ratfunc(7)", 3);
    EXPECT_TRUE(is_pth_power(R, parse_element(R, "(1+t)^3/(2+t^2)^6")));
    EXPECT_FALSE(is_pth_power(R, parse_element(R, "t^3*3")));
}

TEST(LocalSymbol, Examples) {
    auto L = field("laurent(7)", 3);
    auto s = [&](const std::string& a, const std::string& b) {
        return tame_symbol_local(L, std::get<Laurent>(parse_element(L, a)), std::get<Laurent>(parse_element(L, b)));
    };
    EXPECT_EQ(s("3", "t"), 1u);
    EXPECT_EQ(s("t", "3"), 2u);
    EXPECT_EQ(s("t", "t"), 0u);
    EXPECT_EQ(s("3", "5"), 0u);
}

TEST(LocalSymbol, MatchesOracleAndIsBilinearAlternatingSteinberg) {
    for (auto [desc, p] : std::vector<std::pair<std::string, u64>>{{"laurent(7)", 3}, {"laurent(13)", 3}, {"laurent(19)", 3},
                                                                    {"laurent(11)", 5}, {"laurent(7^3)", 3}}) {
        auto D = field(desc, p);
        FqRandom rng(2024 + p + D.F->order());
        const Laurent one = Laurent::constant(D.F->one());
        for (int i = 0; i < 200; ++i) {
            Laurent a = random_laurent(rng, *D.F), b = random_laurent(rng, *D.F), c = random_laurent(rng, *D.F);
            const u64 ab = tame_symbol_local(D, a, b);
            EXPECT_EQ(ab, local_oracle(D, a, b)) << desc;
            EXPECT_EQ(tame_symbol_local(D, a * c, b), (ab + tame_symbol_local(D, c, b)) % p) << desc;
            EXPECT_EQ(tame_symbol_local(D, a, b * c), (ab + tame_symbol_local(D, a, c)) % p) << desc;
            EXPECT_EQ((ab + tame_symbol_local(D, b, a)) % p, 0u) << desc;
            EXPECT_EQ(tame_symbol_local(D, a, a), 0u) << desc;
            Laurent oma = one - a;
            if (!oma.is_zero()) EXPECT_EQ(tame_symbol_local(D, a, oma), 0u) << desc << " a=" << a.str();
            // factors through the power classes
            Laurent cp = c.pow(static_cast<long long>(p), 16);
            EXPECT_EQ(tame_symbol_local(D, a * cp, b), ab) << desc;
        }
    }
}

TEST(GlobalSymbol, Examples) {
    auto R = field("ratfunc(7)", 3);
    auto el = [&](const std::string& s) { return std::get<RatFunc>(parse_element(R, s)); };
    EXPECT_TRUE(symbol_vector_global(R, el("t"), el("1-t")).is_zero());
    EXPECT_TRUE(symbol_vector_global(R, el("t"), el("t")).is_zero());
    auto v = symbol_vector_global(R, el("t"), el("3"));
    EXPECT_EQ(v.at(Place::finite(FqPoly::x(*R.F))), 2u);
    EXPECT_EQ(v.at(Place::at_infinity()), 1u);
    EXPECT_EQ(v.total, 0u);
    EXPECT_THROW(symbol_vector_global(R, el("t"), RatFunc(*R.F)), usage_error);
}

TEST(GlobalSymbol, ReciprocityAndPlacewiseOracle) {
    for (auto [desc, p] : std::vector<std::pair<std::string, u64>>{{"ratfunc(7)", 3}, {"ratfunc(13)", 3}, {"ratfunc(11)", 5}, {"ratfunc(2^2)", 3}}) {
        auto D = field(desc, p);
        FqRandom rng(17 + p + D.F->order());
        for (int i = 0; i < 100; ++i) {
            RatFunc a = random_ratfunc(rng, *D.F), b = random_ratfunc(rng, *D.F);
            SymbolVector sv;
            ASSERT_NO_THROW(sv = symbol_vector_global(D, a, b)) << desc << " " << a.str() << ", " << b.str();
            EXPECT_EQ(sv.total, 0u);
            u64 sum = 0;
            for (auto& [P, val] : sv.values) {
                const u64 want = P.infinite ? infinity_oracle(D, a, b) : place_oracle(D, a, b, P.pi);
                EXPECT_EQ(val, want) << desc << " at " << P.str();
                sum += val;
            }
            EXPECT_EQ(sum % p, 0u);
            // Steinberg on samples
            RatFunc oma = RatFunc::constant(D.F->one()) - a;
            if (!oma.is_zero()) EXPECT_TRUE(symbol_vector_global(D, a, oma).is_zero());
        }
    }
}

TEST(Rigidity, LocalFieldIsRigidAndComplete) {
    auto L = field("laurent(7)", 3);
    auto fr = is_field_rigid(L);
    EXPECT_TRUE(fr.rigid);
    EXPECT_EQ(fr.completeness, "complete");
    EXPECT_EQ(fr.wedge_rank, 1);
    ASSERT_EQ(fr.wedge_symbols.size(), 1u);
    EXPECT_EQ(fr.wedge_symbols[0].at("local"), 1u);
}

TEST(Rigidity, FiniteFieldIsTriviallyRigid) {
    auto fr = is_field_rigid(field("gf(7)", 3));
    EXPECT_TRUE(fr.rigid);
    EXPECT_EQ(fr.completeness, "trivial");
    EXPECT_EQ(fr.wedge_count, 0);
}

TEST(Rigidity, RationalFunctionFieldIsNotRigid) {
    auto R = field("ratfunc(7)", 3);
    auto fr = is_field_rigid(R);
    EXPECT_FALSE(fr.rigid);
    ASSERT_TRUE(fr.steinberg_pair);
    auto w = steinberg_witness(R);
    EXPECT_TRUE(w.symbols.is_zero());
    EXPECT_TRUE(w.independent);
    EXPECT_TRUE(w.norm_identity);
    auto w19 = steinberg_witness(field("ratfunc(19)", 3));
    EXPECT_TRUE(w19.symbols.is_zero() && w19.independent && w19.norm_identity);
    EXPECT_THROW(steinberg_witness(field("laurent(7)", 3)), usage_error);
}

TEST(Rigidity, ElementExamples) {
    auto L = field("laurent(7)", 3);
    auto rt = is_element_rigid(L, parse_element(L, "t"), canonical_basis(L));
    EXPECT_TRUE(rt.rigid);
    ASSERT_EQ(rt.kernel.size(), 1u);
    EXPECT_EQ(rt.kernel[0], (std::vector<u64>{0, 1}));
    EXPECT_EQ(rt.a_coordinates, (std::vector<u64>{0, 1}));
    auto r3 = is_element_rigid(L, parse_element(L, "3"), canonical_basis(L));
    EXPECT_TRUE(r3.rigid);
    EXPECT_EQ(r3.kernel[0], (std::vector<u64>{1, 0}));
    EXPECT_THROW(is_element_rigid(L, parse_element(L, "1+t"), canonical_basis(L)), usage_error);
    EXPECT_THROW(is_element_rigid(L, parse_element(L, "t"), {parse_element(L, "t"), parse_element(L, "t^4")}), usage_error);

    auto R = field("ratfunc(7)", 3);
    auto rr = is_element_rigid(R, parse_element(R, "t"), canonical_basis(R));
    EXPECT_FALSE(rr.rigid);
    EXPECT_EQ(rr.kernel.size(), 2u);
    EXPECT_THROW(is_element_rigid(R, parse_element(R, "1+t"), canonical_basis(R)), usage_error);
}

TEST(Rigidity, ElementKernelPairsToZero) {
    auto L = field("laurent(13)", 3);
    auto basis = canonical_basis(L);
    for (const std::string a : {"t", "2*t", "t^2*5", "2", "t^(-1)*4"}) {
        auto r = is_element_rigid(L, parse_element(L, a), basis);
        for (auto& k : r.kernel) {
            u64 s = 0;
            for (std::size_t j = 0; j < basis.size(); ++j) s += k[j] * r.symbols[j].at("local");
            EXPECT_EQ(s % 3, 0u) << a;
        }
        EXPECT_TRUE(r.rigid) << a;
    }
}

TEST(Extensions, Normalisation) {
    auto L = field("laurent(7)", 3);
    auto lt = [&](const std::string& s) { return std::get<Laurent>(parse_element(L, s)); };
    auto u = extend_by_pth_root(L, lt("3"));
    EXPECT_FALSE(u.ramified);
    EXPECT_EQ(u.field.str(), "laurent(7^3,64)");
    EXPECT_TRUE(u.root_check);
    auto r = extend_by_pth_root(L, lt("t"));
    EXPECT_TRUE(r.ramified);
    EXPECT_EQ(r.field.F, L.F);
    auto rt = extend_by_pth_root(L, lt("3*t"));
    EXPECT_TRUE(rt.ramified);
    EXPECT_TRUE(rt.root_check);
    EXPECT_EQ(rt.twist, L.F->from_int(3));
    // re-embedding respects multiplication
    Laurent x = lt("1+2*t"), y = lt("3*t^2+t^3");
    EXPECT_TRUE(rt.embed(x * y).equal_to_precision(rt.embed(x) * rt.embed(y)));
    EXPECT_THROW(extend_by_pth_root(L, lt("1+t")), usage_error);
}

TEST(Extensions, HereditaryProbe) {
    auto L = field("laurent(7)", 3);
    auto h0 = hereditary_probe(L, 0);
    EXPECT_TRUE(h0.all_rigid);
    EXPECT_TRUE(h0.nodes.empty());
    auto h1 = hereditary_probe(L, 1);
    EXPECT_EQ(h1.leaves, 4);
    EXPECT_TRUE(h1.all_rigid);
    int unramified = 0;
    for (auto& n : h1.nodes) unramified += n.ramified ? 0 : 1;
    EXPECT_EQ(unramified, 1);
    auto h2 = hereditary_probe(L, 2);
    EXPECT_EQ(h2.leaves, 16);
    EXPECT_TRUE(h2.all_rigid);
    EXPECT_THROW(hereditary_probe(L, 4), usage_error);
    EXPECT_THROW(hereditary_probe(field("ratfunc(7)", 3), 1), usage_error);
}
