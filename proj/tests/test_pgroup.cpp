#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "prigid/pgroup.hpp"

using namespace prigid;

namespace {

std::vector<Elem> all(const Subgroup& H) { return H.elements(); }

Subgroup brute_power_closure(const Subgroup& G) {
    std::vector<Elem> gens;
    for (Elem x : all(G)) gens.push_back(G.group().pow(x, G.group().p()));
    return closure(G.owner(), gens);
}

Subgroup brute_commutator_closure(const Subgroup& G) {
    std::vector<Elem> gens;
    for (Elem x : all(G))
        for (Elem y : G.generators()) gens.push_back(G.group().commutator(x, y));
    return closure(G.owner(), gens);
}

}  // namespace

TEST(GroupSpec, ThetaOrdersAndAxioms) {
    auto G = parse_group("theta(3,1,1,2)");
    Subgroup W = whole_group(G);
    EXPECT_EQ(W.order(), 81u);
    for (Elem a : W.elements())
        for (Elem b : W.elements()) {
            EXPECT_EQ(G->mul(a, G->inv(a)), GroupSpec::identity());
            for (Elem c : {W.elements()[5], W.elements()[17]}) EXPECT_EQ(G->mul(G->mul(a, b), c), G->mul(a, G->mul(b, c)));
        }
    EXPECT_EQ(whole_group(parse_group("theta(3,1,1,3)")).order(), 729u);
    EXPECT_EQ(whole_group(parse_group("theta(3,1,2,3)")).order(), 19683u);
}

TEST(GroupSpec, ThetaRelation) {
    auto G = parse_group("theta(3,1,1,3)");
    auto gens = G->generators();
    ASSERT_EQ(gens.size(), 2u);
    const Elem sigma = gens[0], rho = gens[1];
    EXPECT_EQ(G->conjugate(sigma, rho), G->pow(rho, 4));
}

TEST(GroupSpec, ClosureExamples) {
    auto G = parse_group("theta(3,1,1,3)");
    EXPECT_EQ(closure(G, {GroupSpec::identity()}).order(), 1u);
    EXPECT_EQ(closure(G, G->generators()).order(), 729u);
    auto U = parse_group("ut(4,3,1)");
    EXPECT_EQ(whole_group(U).order(), 729u);
}

TEST(GroupSpec, OrderBoundIsAResourceError) {
    GroupLimits lim;
    lim.order_bound = 100;
    try {
        whole_group(parse_group("theta(3,1,1,3)", lim));
        FAIL() << "expected resource_error";
    } catch (const resource_error& e) {
        EXPECT_NE(std::string(e.what()).find("100"), std::string::npos);
    }
}

TEST(GroupSpec, DescriptorErrors) {
    EXPECT_THROW(parse_group("theta(2,1,1,3)"), usage_error);
    EXPECT_THROW(parse_group("theta(3,1,1)"), usage_error);
    EXPECT_THROW(parse_group("theta(3,x,1,3)"), usage_error);
    EXPECT_THROW(parse_group("foo(1)"), usage_error);
    EXPECT_THROW(parse_group("ut(4,3)"), usage_error);
}

TEST(GroupSpec, TableDescriptor) {
    const std::string path = ::testing::TempDir() + "z9.table";
    {
        std::ofstream out(path);
        for (int i = 0; i < 9; ++i) {
            for (int j = 0; j < 9; ++j) out << (i + j) % 9 << (j + 1 < 9 ? " " : "");
            out << "\n";
        }
    }
    auto G = parse_group("table:" + path);
    Subgroup W = whole_group(G);
    EXPECT_EQ(W.order(), 9u);
    EXPECT_EQ(exponent(W), 9u);
    EXPECT_TRUE(is_abelian(W));
    EXPECT_TRUE(commutator_subgroup(W, W).is_trivial());
    EXPECT_EQ(frattini(W).order(), 3u);
    std::remove(path.c_str());
}

TEST(Subgroups, CommutatorAndPowerExamples) {
    auto G = parse_group("theta(3,1,1,3)");
    Subgroup W = whole_group(G);
    Subgroup D = commutator_subgroup(W, W);
    EXPECT_EQ(D.order(), 9u);
    for (Elem x : D.elements()) {
        auto c = G->coords(x);
        EXPECT_EQ(c[0], 0u);
        EXPECT_EQ(c[1] % 3, 0u);
    }
    Subgroup P = power_subgroup(W, 1);
    EXPECT_EQ(P.order(), 81u);
    for (Elem x : P.elements())
        for (u64 c : G->coords(x)) EXPECT_EQ(c % 3, 0u);
    EXPECT_EQ(power_subgroup(W, 2).order(), 9u);
    EXPECT_EQ(frattini(W).order(), 81u);
    EXPECT_EQ(generator_rank(W), 2);

    auto U = parse_group("ut(4,3,1)");
    Subgroup WU = whole_group(U);
    EXPECT_EQ(commutator_subgroup(WU, WU).order(), 27u);
    EXPECT_EQ(frattini(WU).order(), 27u);
    EXPECT_EQ(generator_rank(WU), 3);
}

TEST(Subgroups, ClosuresMatchBruteForce) {
    for (const std::string g : {"theta(3,1,1,3)", "ut(4,3,1)", "theta(5,1,1,2)", "theta(3,inf,2,2)", "ut(3,3,2)"}) {
        Subgroup W = whole_group(parse_group(g));
        EXPECT_EQ(power_subgroup(W, 1), brute_power_closure(W)) << g;
        EXPECT_EQ(commutator_subgroup(W, W), brute_commutator_closure(W)) << g;
        Subgroup phi = frattini(W);
        Subgroup meet = W;
        for (auto& m : maximal_subgroups(W)) {
            EXPECT_EQ(m.subgroup.order() * W.group().p(), W.order());
            std::vector<Elem> common;
            std::set_intersection(meet.elements().begin(), meet.elements().end(), m.subgroup.elements().begin(),
                                  m.subgroup.elements().end(), std::back_inserter(common));
            meet = closure(W.owner(), common);
        }
        EXPECT_EQ(meet, phi) << g;
    }
}

TEST(Subgroups, MismatchedOwnersRejected) {
    Subgroup A = whole_group(parse_group("theta(3,1,1,2)"));
    Subgroup B = whole_group(parse_group("theta(3,1,1,2)"));
    EXPECT_THROW(commutator_subgroup(A, B), usage_error);
}

TEST(Series, LowerPSeries) {
    Subgroup W = whole_group(parse_group("theta(3,1,1,3)"));
    auto s = lower_p_series(W, 4);
    ASSERT_EQ(s.terms.size(), 4u);
    EXPECT_EQ(s.terms[0].order(), 729u);
    EXPECT_EQ(s.terms[1].order(), 81u);
    EXPECT_EQ(s.terms[2].order(), 9u);
    EXPECT_EQ(s.terms[3].order(), 1u);
    for (std::size_t i = 0; i + 1 < s.terms.size(); ++i) {
        EXPECT_TRUE(s.terms[i].contains(s.terms[i + 1]));
        EXPECT_TRUE(is_normalized_by(s.terms[i + 1], W));
    }
    auto one = lower_p_series(whole_group(parse_group("theta(3,1,1,1)")), 1);
    EXPECT_EQ(one.terms.size(), 1u);
}

TEST(Series, LowerCentralAndFrattiniIterate) {
    Subgroup W = whole_group(parse_group("ut(4,3,1)"));
    auto g = lower_central_series(W, 4);
    EXPECT_EQ(g.terms[0].order(), 729u);
    EXPECT_EQ(g.terms[1].order(), 27u);
    EXPECT_EQ(g.terms[2].order(), 3u);
    EXPECT_EQ(g.terms[3].order(), 1u);
    auto f = frattini_series(W, 3);
    EXPECT_EQ(f.terms[1], frattini(W));
    EXPECT_EQ(f.terms[2], frattini(frattini(W)));
}

TEST(Series, DimensionSubgroupsClosedForm) {
    Subgroup W = whole_group(parse_group("theta(3,1,1,3)"));
    auto d = dimension_subgroups(W, 10);
    const std::vector<u64> want{729, 81, 81, 9, 9, 9, 9, 9, 9, 1};
    for (int n = 1; n <= 10; ++n) {
        EXPECT_EQ(d.series.terms[n - 1].order(), want[n - 1]) << n;
        EXPECT_EQ(d.series.terms[n - 1], power_subgroup(W, ceil_log(static_cast<u64>(n), 3))) << n;
    }
}

TEST(Series, DimensionSubgroupAxioms) {
    for (const std::string g : {"ut(4,3,1)", "theta(3,1,2,3)", "theta(5,1,1,2)"}) {
        Subgroup W = whole_group(parse_group(g));
        auto d = dimension_subgroups(W, 6);
        const u64 p = W.group().p();
        auto& D = d.series.terms;
        for (int i = 1; i <= 6; ++i) {
            for (int j = 1; i + j <= 6; ++j) EXPECT_TRUE(D[i + j - 1].contains(commutator_subgroup(D[i - 1], D[j - 1]))) << g;
            if (i * static_cast<int>(p) <= 6) EXPECT_TRUE(D[i * p - 1].contains(power_subgroup(D[i - 1], 1))) << g;
        }
    }
}

TEST(Predicates, Powerful) {
    EXPECT_TRUE(is_powerful(whole_group(parse_group("theta(3,1,1,3)"))).powerful);
    auto U = parse_group("ut(4,3,1)");
    auto v = is_powerful(whole_group(U));
    EXPECT_FALSE(v.powerful);
    ASSERT_TRUE(v.witness);
    EXPECT_FALSE(v.pth_powers.contains(*v.witness));
    ASSERT_TRUE(v.witness_pair);
    EXPECT_EQ(U->commutator(v.witness_pair->first, v.witness_pair->second), *v.witness);
    // G^3 of UT(4,3,1) lives on the corner entry only; coordinates run (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)
    EXPECT_EQ(v.pth_powers.order(), 3u);
    for (Elem x : v.pth_powers.elements()) {
        auto c = U->coords(x);
        for (std::size_t i = 0; i < c.size(); ++i)
            if (i != 2) EXPECT_EQ(c[i], 0u);
    }
    EXPECT_TRUE(is_powerful(whole_group(parse_group("theta(3,inf,2,2)"))).powerful);
    EXPECT_TRUE(is_powerful(trivial_subgroup(U)).powerful);
}

TEST(Predicates, Uniform) {
    auto u = is_uniform(whole_group(parse_group("theta(3,1,1,4)")), 3);
    EXPECT_TRUE(u.uniform);
    EXPECT_EQ(u.indices[0], 9u);
    EXPECT_EQ(u.indices[1], 9u);
    EXPECT_EQ(u.indices[2], 9u);
    EXPECT_FALSE(is_uniform(whole_group(parse_group("ut(4,3,1)")), 3).uniform);
}

TEST(Predicates, PowerfulGroupsHaveFrattiniEqualToPowers) {
    for (const std::string g : {"theta(3,1,1,3)", "theta(3,2,1,3)", "theta(5,1,2,2)", "theta(3,inf,1,3)"}) {
        Subgroup W = whole_group(parse_group(g));
        ASSERT_TRUE(is_powerful(W).powerful) << g;
        EXPECT_EQ(frattini(W), power_subgroup(W, 1)) << g;
        // powers of a powerful group: (G^p)^p = G^{p^2}
        EXPECT_EQ(power_subgroup(power_subgroup(W, 1), 1), power_subgroup(W, 2)) << g;
    }
}

TEST(TheoremA, RigidModels) {
    for (const std::string g : {"theta(3,1,1,3)", "theta(3,1,2,3)"}) {
        Subgroup W = whole_group(parse_group(g));
        auto r = theorem_A_group_test(W);
        EXPECT_TRUE(r.equal) << g;
        EXPECT_EQ(r.lambda3, power_subgroup(W, 2)) << g;
        EXPECT_EQ(r.lambda3, lower_p_series(W, 3).terms[2]) << g;
        EXPECT_EQ(W.order() / r.lambda3.order(), static_cast<u64>(checked_pow(3, 2 * generator_rank(W)))) << g;
        auto j = j_module_test(W);
        EXPECT_TRUE(j.equal) << g;
    }
}

TEST(TheoremA, UnitriangularControl) {
    Subgroup W = whole_group(parse_group("ut(4,3,1)"));
    auto r = theorem_A_group_test(W);
    EXPECT_FALSE(r.equal);
    EXPECT_TRUE(r.frattini_squared.is_trivial());
    EXPECT_EQ(r.lambda3.order(), 3u);
    auto j = j_module_test(W);
    EXPECT_EQ(j.full_order, 27u);
    EXPECT_EQ(j.invariant_order, 9u);
    EXPECT_FALSE(j.equal);
}

TEST(TheoremA, ShallowTruncationRejected) {
    EXPECT_THROW(theorem_A_group_test(whole_group(parse_group("theta(3,1,1,2)"))), usage_error);
}

TEST(Maximal, RanksOfThetaModel) {
    auto ms = maximal_subgroups(whole_group(parse_group("theta(3,1,1,3)")));
    EXPECT_EQ(ms.size(), 4u);
    for (auto& m : ms) EXPECT_EQ(m.rank, 2);
    auto mu = maximal_subgroups(whole_group(parse_group("ut(4,3,1)")));
    EXPECT_EQ(mu.size(), 13u);
}

TEST(TowerGroup, AbelianExactlyUpToKPlusOne) {
    for (int k : {1, 2})
        for (int n = 1; n <= 5; ++n) {
            ThetaAbelianSpec s;
            s.p = 3;
            s.k = k;
            s.rho_count = 1;
            s.m = 1;
            auto info = tower_group(s, n);
            EXPECT_EQ(info.is_abelian, n <= k + 1) << "k=" << k << " n=" << n;
            EXPECT_EQ(info.predicted_abelian_computed, info.is_abelian);
            EXPECT_EQ(info.order, n == 1 ? 1u : static_cast<u64>(checked_pow(3, 2 * (n - 1))));
        }
}
