#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "cubeorient/connectivity.hpp"
#include "cubeorient/generate.hpp"
#include "cubeorient/report_json.hpp"
#include "oracles.hpp"

using namespace cubeorient;

namespace {

Orientation directed_square() { return inductive_good_orientation(1); }

Orientation random_orientation(int d, std::mt19937_64& rng) {
    Orientation o{HypercubeDim(d)};
    for (std::size_t r = 0; r < o.dim().edge_count(); ++r) o.set_bit(r, (rng() & 1U) != 0);
    return o;
}

std::vector<Orientation> q4_sample() {
    std::vector<Orientation> out;
    EulerianSampler sampler(HypercubeDim(4), 2024);
    for (int i = 0; i < 25; ++i) {
        sampler.advance(40);
        out.push_back(sampler.current());
    }
    return out;
}

}  // namespace

TEST(StronglyConnected, SquareExamples) {
    const auto sq = directed_square();
    EXPECT_TRUE(strongly_connected(sq, NodeSet(sq.dim())));
    EXPECT_FALSE(strongly_connected(sq, NodeSet(sq.dim(), {2})));
    EXPECT_TRUE(strongly_connected(sq, NodeSet(sq.dim(), {0, 1, 2})));
    EXPECT_THROW(strongly_connected(sq, NodeSet::full(sq.dim())), InputError);
}

TEST(StronglyConnected, MatchesClosureOracle) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 300; ++trial) {
        const int d = 2 + static_cast<int>(rng() % 3);
        const auto o = random_orientation(d, rng);
        const unsigned n = 1U << d;
        NodeSet deleted(o.dim());
        std::vector<bool> mask(n, false);
        for (unsigned v = 0; v < n; ++v) {
            if (rng() % 5 == 0) {
                deleted.insert(v);
                mask[v] = true;
            }
        }
        if (deleted.size() == n) continue;
        const bool expected = oracle::strongly_connected_closure(
            n, [&](unsigned a, unsigned b) { return __builtin_popcount(a ^ b) == 1 && o.has_arc(a, b); }, mask);
        EXPECT_EQ(strongly_connected(o, deleted), expected);
    }
}

TEST(KNodeConnected, SquareLevels) {
    const auto sq = directed_square();
    EXPECT_TRUE(is_strongly_k_node_connected(sq, 1).verdict);
    const auto report = is_strongly_k_node_connected(sq, 2);
    EXPECT_FALSE(report.verdict);
    ASSERT_TRUE(report.witness_deleted.has_value());
    EXPECT_EQ(report.witness_deleted->size(), 1U);
    EXPECT_EQ(report.witness_deleted->members(), std::vector<NodeId>{0});
    EXPECT_TRUE(witness_is_valid(sq, report));
    EXPECT_TRUE(witness_balance_holds(sq, report));
}

TEST(KNodeConnected, Preconditions) {
    EXPECT_THROW(is_strongly_k_node_connected(Orientation(HypercubeDim(1)), 2), InputError);
    EXPECT_THROW(is_strongly_k_node_connected(directed_square(), 0), InputError);
    EXPECT_NO_THROW(is_strongly_k_node_connected(directed_square(), 3));
    EXPECT_THROW(is_strongly_k_node_connected(directed_square(), 4), InputError);
}

TEST(KNodeConnected, EulerianQ4AtLevelTwo) {
    for (const auto& o : q4_sample()) EXPECT_TRUE(is_strongly_k_node_connected(o, 2).verdict);
    EXPECT_TRUE(is_strongly_k_node_connected(euler_tour_orientation(HypercubeDim(4)), 2).verdict);
}

TEST(KNodeConnected, AgreesWithMengerAndProducesValidWitnesses) {
    int failures = 0;
    for (const auto& o : q4_sample()) {
        bool previous = true;
        for (int k = 1; k <= 3; ++k) {
            const auto report = is_strongly_k_node_connected(o, k);
            EXPECT_EQ(report.verdict, menger_strongly_k_connected(o, k)) << "k=" << k;
            if (!previous) { EXPECT_FALSE(report.verdict); }
            previous = report.verdict;
            if (!report.verdict) {
                ++failures;
                EXPECT_TRUE(witness_is_valid(o, report));
                EXPECT_TRUE(witness_balance_holds(o, report));
            }
        }
    }
    // Level 3 is not guaranteed on Q_4, so the sample should exercise the witness path.
    EXPECT_GT(failures, 0);
}

TEST(KNodeConnected, WitnessAgainstClosureOracle) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const auto o = random_orientation(3, rng);
        for (int k = 1; k <= 3; ++k) {
            const auto report = is_strongly_k_node_connected(o, k);
            // Brute force over every deletion set of size <= k - 1.
            bool expected = true;
            for (unsigned mask = 0; mask < 256 && expected; ++mask) {
                if (__builtin_popcount(mask) > k - 1) continue;
                std::vector<bool> del(8);
                for (unsigned v = 0; v < 8; ++v) del[v] = ((mask >> v) & 1U) != 0;
                expected = oracle::strongly_connected_closure(
                    8, [&](unsigned a, unsigned b) { return __builtin_popcount(a ^ b) == 1 && o.has_arc(a, b); }, del);
            }
            EXPECT_EQ(report.verdict, expected);
            if (!report.verdict) { EXPECT_TRUE(witness_is_valid(o, report)); }
        }
    }
}

TEST(KNodeConnected, ParallelSweepGivesSameWitness) {
    for (const auto& o : q4_sample()) {
        const auto serial = is_strongly_k_node_connected(o, 3, 1);
        const auto parallel = is_strongly_k_node_connected(o, 3, 4);
        EXPECT_EQ(serial.verdict, parallel.verdict);
        EXPECT_EQ(connectivity_report_to_json(serial), connectivity_report_to_json(parallel));
    }
}

TEST(KNodeConnected, ReportJson) {
    const auto sq = directed_square();
    const auto report = is_strongly_k_node_connected(sq, 2);
    const auto j = connectivity_report_to_json(report);
    EXPECT_EQ(j.at("verdict"), false);
    EXPECT_EQ(j.at("k"), 2);
    EXPECT_EQ(j.at("witness_deleted"), nlohmann::json::array({0}));
    const auto back = connectivity_report_from_json(j, sq.dim());
    EXPECT_TRUE(witness_is_valid(sq, back));

    const auto ok = connectivity_report_to_json(is_strongly_k_node_connected(sq, 1));
    EXPECT_EQ(ok.at("verdict"), true);
    EXPECT_TRUE(ok.at("witness_deleted").empty());
}

TEST(MinVertexCut, Square) {
    const auto sq = directed_square();
    const auto cut = min_vertex_cut(sq, 0, 3);
    EXPECT_EQ(cut.size, 1);
    ASSERT_TRUE(cut.cut.has_value());
    EXPECT_EQ(cut.cut->members(), std::vector<NodeId>{1});
    EXPECT_THROW(min_vertex_cut(sq, 2, 2), InputError);
}

TEST(MinVertexCut, EulerianQ4) {
    const auto o = q4_sample().front();
    for (NodeId s = 0; s < 16; ++s) {
        for (NodeId t = 0; t < 16; ++t) {
            if (s == t) continue;
            const auto result = min_vertex_cut(o, s, t);
            if (__builtin_popcount(s ^ t) == 1) {
                EXPECT_FALSE(result.cut.has_value());
                continue;
            }
            EXPECT_GE(result.size, 2);
            ASSERT_TRUE(result.cut.has_value());
            EXPECT_EQ(result.cut->size(), static_cast<std::size_t>(result.size));
            EXPECT_FALSE(result.cut->contains(s));
            EXPECT_FALSE(result.cut->contains(t));
            // Deleting the cut leaves no s -> t path.
            std::vector<bool> del(16, false);
            for (auto v : result.cut->members()) del[v] = true;
            std::vector<std::uint8_t> blocked(del.begin(), del.end());
            EXPECT_EQ(detail::reach(ArcTable(o), blocked, s, true)[t], 0);
        }
    }
}

TEST(UndirectedConnectivity, EqualsDimension) {
    for (int d = 1; d <= 6; ++d) EXPECT_EQ(undirected_node_connectivity(d), d);
    EXPECT_THROW(undirected_node_connectivity(7), InfeasibleError);
    EXPECT_THROW(undirected_node_connectivity(0), InfeasibleError);
}
