#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "qdyn/kronecker_pairs.hpp"
#include "support/corpus.hpp"

using namespace qdyn;
namespace qt = qdyn::testing;

namespace {

Quiver k(int l) { return Quiver::numbered(2, std::vector<Arrow>(static_cast<std::size_t>(l), Arrow{0, 1})); }

Quiver s1() {
    return parse_quiver(R"({"vertices":["v","a1","a2"],"arrows":[["v","a1"],["v","a1"],["v","a2"],["a2","a1"]]})");
}

Quiver s2() {
    return parse_quiver(
        R"({"vertices":["v","a1","a2","a3"],"arrows":[["a1","a2"],["a3","a2"],["v","a1"],["v","a2"],["v","a3"]]})");
}

Quiver s3() {
    return parse_quiver(R"({"vertices":["v","a1","a2","a3","a4"],
        "arrows":[["a1","a4"],["a2","a4"],["a3","a4"],["v","a1"],["v","a2"],["v","a3"]]})");
}

bool has_reason(const WitnessCheck& c, const std::string& r) {
    return std::find(c.reasons.begin(), c.reasons.end(), r) != c.reasons.end();
}

}  // namespace

TEST(Hom1Disjoint, Examples) {
    EXPECT_EQ(hom1_disjoint(k(5), {1, 0}, {0, 1}), 5);
    EXPECT_EQ(hom1_disjoint(k(5), {0, 1}, {1, 0}), 0);
    EXPECT_EQ(hom1_disjoint(Quiver::numbered(3, {{0, 1}}), {1, 0, 0}, {0, 0, 4}), 0);
    // One arrow A -> v, ρ of dimension 3 at its source.
    EXPECT_EQ(hom1_disjoint(Quiver::numbered(3, {{0, 1}, {0, 1}, {1, 2}}), {3, 3, 0}, {0, 0, 1}), 3);
    EXPECT_THROW(hom1_disjoint(k(3), {1, 1}, {0, 1}), DomainError);
}

TEST(Hom1Disjoint, IsMinusEulerFormOnDisjointSupports) {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + trial % 5;
        const Quiver q = qt::random_acyclic(rng, n, trial % 6);
        DimVector a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto side = rng() % 3;
            (side == 0 ? a : b)[i] = side == 2 ? 0 : static_cast<std::int64_t>(1 + rng() % 4);
        }
        ASSERT_EQ(hom1_disjoint(q, a, b), -euler_form(q, a, b));
        ASSERT_EQ(hom1_disjoint(q, b, a), -euler_form(q, b, a));
    }
}

TEST(ExceptionalDimBig, Examples) {
    EXPECT_EQ(exceptional_dim_big(k(2), 1), (DimVector{1, 2}));
    const Quiver d4 = qt::orient_down(qt::affine_d(4));  // centre first, δ = (2,1,1,1,1)
    const BigExceptional big = exceptional_big(d4, 3);
    EXPECT_EQ(big.m, 3);
    EXPECT_EQ(big.r, (DimVector{6, 4, 3, 3, 3}));
    EXPECT_THROW(exceptional_dim_big(k(3), 1), DomainError);
    EXPECT_THROW(exceptional_dim_big(Quiver::numbered(3, {{0, 1}, {1, 2}, {2, 0}}), 1), DomainError);
    EXPECT_THROW(exceptional_dim_big(k(2), 0), DomainError);
}

TEST(ExceptionalDimBig, RealRootWithNonzeroDeltaPairing) {
    for (const auto& d : qt::euclidean_diagrams(9)) {
        for (const Quiver& q : qt::orientations(d)) {
            const DimVector delta = null_root(q);
            for (std::int64_t n = 1; n <= 4; ++n) {
                const DimVector r = exceptional_dim_big(q, n);
                ASSERT_EQ(tits_form(q, r), 1) << d.label;
                ASSERT_NE(euler_form(q, r, delta), 0) << d.label;
                ASSERT_GE(r.min_entry(), n) << d.label;
            }
        }
    }
}

TEST(FindKroneckerPair, ParallelArrows) {
    for (int l : {3, 5, 7}) {
        const auto w = find_kronecker_pair(k(l));
        ASSERT_TRUE(w);
        EXPECT_EQ(w->construction, Construction::ParallelArrows);
        EXPECT_EQ(w->hom1, l);
        EXPECT_EQ(w->order, PairOrder::SimpleFirst);
        EXPECT_EQ(w->v, 0u);
        EXPECT_EQ(w->rho, (DimVector{0, 1}));
        EXPECT_TRUE(verify_witness(k(l), *w).ok);
    }
    // Reversed: the arrows end at the simple, so it comes second.
    const Quiver rev = Quiver::numbered(2, {{1, 0}, {1, 0}, {1, 0}});
    const auto w = find_kronecker_pair(rev);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->v, 1u);
    EXPECT_TRUE(verify_witness(rev, *w).ok);
}

TEST(FindKroneckerPair, SpecialShapes) {
    const std::pair<Quiver, Construction> cases[] = {
        {s1(), Construction::SpecialS1}, {s2(), Construction::SpecialS2}, {s3(), Construction::SpecialS3}};
    for (const auto& [q, tag] : cases) {
        const auto w = find_kronecker_pair(q);
        ASSERT_TRUE(w);
        EXPECT_EQ(w->construction, tag);
        EXPECT_EQ(w->hom1, 3);
        EXPECT_EQ(q.name(w->v), "v");
        EXPECT_EQ(w->order, PairOrder::SimpleFirst);
        EXPECT_EQ(w->rho, DimVector::ones(q.size()) - DimVector::unit(q.size(), q.index_of("v")));
        EXPECT_TRUE(verify_witness(q, *w).ok);
    }
    const auto w = find_kronecker_pair(s2());
    EXPECT_EQ(witness_to_json(s2(), *w).dump(),
              R"({"A":["a1","a2","a3"],"v":"v","rho":{"a1":1,"a2":1,"a3":1},"order":"simple_first","hom1":3,)"
              R"("construction":"SpecialS2"})");
}

TEST(FindKroneckerPair, NoneOnDynkinAndEuclidean) {
    std::vector<qt::Diagram> all = qt::dynkin_diagrams(9);
    for (auto& d : qt::euclidean_diagrams(9)) all.push_back(d);
    for (const auto& d : all)
        for (const Quiver& q : qt::orientations(d)) ASSERT_FALSE(find_kronecker_pair(q)) << d.label;
}

TEST(FindKroneckerPair, EveryWildQuiverInCorpus) {
    std::size_t wild = 0;
    for (const Quiver& q : qt::small_quivers(5, 6)) {
        const GraphClass c = classify_graph(q);
        const auto w = find_kronecker_pair(q);
        if (c.is_dynkin() || c.is_euclidean()) {
            ASSERT_FALSE(w);
            continue;
        }
        ++wild;
        ASSERT_TRUE(w) << quiver_to_json(q).dump();
        const WitnessCheck check = verify_witness(q, *w);
        ASSERT_TRUE(check.ok) << quiver_to_json(q).dump() << ": " << check.reasons.front();
        if (w->construction == Construction::EuclideanSubquiver) {
            for (std::size_t a : w->A) EXPECT_GE(w->rho[a], 3);
        }
    }
    EXPECT_GT(wild, 100u);
}

// One fixture per case of the existence argument: two parallel arrows plus a
// neighbour, short loops with an extra vertex, and wild trees.
TEST(FindKroneckerPair, ProofCaseFixtures) {
    const std::vector<Quiver> fixtures{
        Quiver::numbered(3, {{0, 1}, {0, 1}, {1, 2}}),
        Quiver::numbered(3, {{0, 1}, {0, 1}, {2, 1}}),
        Quiver::numbered(3, {{0, 1}, {0, 1}, {0, 2}}),
        Quiver::numbered(3, {{0, 1}, {0, 1}, {0, 2}, {2, 1}}),
        Quiver::numbered(3, {{0, 1}, {0, 1}, {1, 2}, {0, 2}}),
        Quiver::numbered(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}),
        Quiver::numbered(4, {{0, 1}, {1, 2}, {0, 2}, {3, 0}, {3, 1}}),
        Quiver::numbered(4, {{0, 1}, {1, 2}, {0, 2}, {3, 0}, {3, 1}, {3, 2}}),
        Quiver::numbered(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}}),
        Quiver::numbered(5, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {3, 4}}),
        Quiver::numbered(5, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {4, 0}, {4, 2}}),
        Quiver::numbered(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}}),
        Quiver::numbered(8, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}, {6, 7}}),
        qt::orient_down({"T(2,3,7)", 10, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {0, 9}}}),
    };
    for (const Quiver& q : fixtures) {
        ASSERT_TRUE(classify_graph(q).is_wild()) << quiver_to_json(q).dump();
        const auto w = find_kronecker_pair(q);
        ASSERT_TRUE(w) << quiver_to_json(q).dump();
        EXPECT_TRUE(verify_witness(q, *w).ok) << quiver_to_json(q).dump();
        EXPECT_GE(w->hom1, 3);
    }
}

TEST(FindKroneckerPair, NameOrderDiffersFromIndexOrder) {
    const Quiver s2_last = parse_quiver(
        R"({"vertices":["a1","a2","a3","v"],"arrows":[["a1","a2"],["a3","a2"],["v","a1"],["v","a2"],["v","a3"]]})");
    const auto w = find_kronecker_pair(s2_last);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->construction, Construction::SpecialS2);
    EXPECT_EQ(s2_last.name(w->v), "v");

    // Relabel the corpus with names whose sort order scrambles the indices.
    std::mt19937_64 rng(59);
    for (const Quiver& q : qt::small_quivers(5, 6)) {
        if (!classify_graph(q).is_wild() && !classify_graph(q).is_kronecker()) continue;
        std::vector<std::string> names;
        std::uniform_int_distribution<int> prefix(10, 99);
        for (std::size_t i = 0; i < q.size(); ++i) names.push_back("v" + std::to_string(prefix(rng)) + "_" + std::to_string(i));
        const Quiver r(names, q.arrows());
        const auto wr = find_kronecker_pair(r);
        ASSERT_TRUE(wr);
        const WitnessCheck check = verify_witness(r, *wr);
        ASSERT_TRUE(check.ok) << quiver_to_json(r).dump() << ": " << check.reasons.front();
    }
}

TEST(FindKroneckerPair, WildChainUsesEuclideanSubquiver) {
    const Quiver q = Quiver::numbered(3, {{0, 1}, {0, 1}, {1, 2}, {1, 2}});
    const auto w = find_kronecker_pair(q);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->construction, Construction::EuclideanSubquiver);
    EXPECT_EQ(w->delta_multiplier, 3);
    EXPECT_TRUE(witness_to_json(q, *w)["construction"] == "EuclideanSubquiver(m=3)");
}

TEST(FindKroneckerPair, Deterministic) {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 30; ++trial) {
        const Quiver q = qt::random_acyclic(rng, 3 + trial % 4, 3 + trial % 3);
        if (!q.is_connected()) continue;
        const auto a = find_kronecker_pair(q), b = find_kronecker_pair(q);
        ASSERT_EQ(static_cast<bool>(a), static_cast<bool>(b));
        if (a) {
            EXPECT_EQ(witness_to_json(q, *a).dump(), witness_to_json(q, *b).dump());
        }
    }
}

TEST(FindKroneckerPair, Errors) {
    EXPECT_THROW(find_kronecker_pair(Quiver::numbered(2, {{0, 1}, {1, 0}})), DomainError);
    EXPECT_THROW(find_kronecker_pair(Quiver::numbered(3, {{0, 1}})), DomainError);
    EXPECT_THROW(find_kronecker_pair(k(3), 1), DomainError);
}

TEST(VerifyWitness, Failures) {
    const Quiver q = k(5);
    KroneckerWitness w = *find_kronecker_pair(q);
    KroneckerWitness overlap = w;
    overlap.rho = {1, 1};
    const WitnessCheck c1 = verify_witness(q, overlap);
    EXPECT_FALSE(c1.ok);
    EXPECT_TRUE(has_reason(c1, "support overlap"));

    KroneckerWitness two;
    two.A = {1};
    two.v = 0;
    two.rho = {0, 1};
    two.order = PairOrder::SimpleFirst;
    two.hom1 = 2;
    const WitnessCheck c2 = verify_witness(k(2), two);
    EXPECT_FALSE(c2.ok);
    EXPECT_TRUE(has_reason(c2, "below Kronecker threshold 3"));

    KroneckerWitness order = w;
    order.order = PairOrder::RhoFirst;
    EXPECT_FALSE(verify_witness(q, order).ok);

    KroneckerWitness nonreal = w;
    nonreal.rho = {0, 2};
    EXPECT_FALSE(verify_witness(q, nonreal).ok);
}
