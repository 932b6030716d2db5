#include <gtest/gtest.h>

#include <random>
#include <set>
#include <vector>

#include "cubeorient/isoperimetry.hpp"
#include "oracles.hpp"

using namespace cubeorient;

namespace {

std::vector<std::vector<int>> as_lists(const std::vector<RankedSubset>& family) {
    std::vector<std::vector<int>> out;
    for (const auto& s : family) out.push_back(s.elements());
    return out;
}

std::uint64_t resum(const CascadeRepresentation& rep) {
    std::uint64_t total = rep.m_prime;
    for (int i = rep.r + 1; i <= rep.n; ++i) total += binomial(rep.n, i);
    return total;
}

// Values frozen from exhaustive search over all m-subsets of Q_4.
constexpr std::uint64_t kBvQ4[15] = {4, 6, 7, 7, 6, 7, 7, 6, 6, 5, 4, 4, 3, 2, 1};

}  // namespace

TEST(Binomial, MatchesMultiplicativeFormula) {
    for (unsigned n = 0; n <= 64; ++n) {
        for (unsigned r = 0; r <= n; ++r) {
            EXPECT_EQ(static_cast<unsigned __int128>(binomial(n, r)), oracle::binomial(n, r)) << n << ' ' << r;
        }
    }
    EXPECT_EQ(binomial(5, 7), 0U);
    EXPECT_THROW(binomial(65, 2), InputError);
}

TEST(Cascade, WorkedExample) {
    const auto rep = cascade_representation(17, 6);
    EXPECT_EQ(rep.r, 4);
    EXPECT_EQ(rep.m_prime, 10U);
    EXPECT_EQ(rep.terms, (std::vector<BinomialTerm>{{5, 4}, {4, 3}, {2, 2}}));
    EXPECT_EQ(rep.s(), 2);
}

TEST(Cascade, SmallExamples) {
    const auto one = cascade_representation(1, 4);
    EXPECT_EQ(one.r, 4);
    EXPECT_EQ(one.m_prime, 1U);
    EXPECT_EQ(one.terms, (std::vector<BinomialTerm>{{4, 4}}));

    const auto eight = cascade_representation(8, 4);
    EXPECT_EQ(eight.r, 2);
    EXPECT_EQ(eight.m_prime, 3U);
    EXPECT_EQ(eight.terms, (std::vector<BinomialTerm>{{3, 2}}));
    EXPECT_EQ(resum(eight), 8U);
}

TEST(Cascade, RangeErrors) {
    EXPECT_THROW(cascade_representation(0, 4), InputError);
    EXPECT_THROW(cascade_representation(16, 4), InputError);
    EXPECT_NO_THROW(cascade_representation(15, 4));
    EXPECT_THROW(harper_bv(64, 6), InputError);
}

TEST(Cascade, ReconstructsAndIsStrictlyMonotone) {
    for (int n : {2, 4, 6, 8, 10, 12}) {
        for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
            const auto rep = cascade_representation(m, n);
            ASSERT_EQ(resum(rep), m);
            ASSERT_GE(rep.m_prime, 1U);
            ASSERT_LE(rep.m_prime, binomial(n, rep.r));
            std::uint64_t inner = 0;
            for (std::size_t i = 0; i < rep.terms.size(); ++i) {
                const auto& t = rep.terms[i];
                inner += binomial(t.top, t.index);
                ASSERT_EQ(t.index, rep.r - static_cast<std::int64_t>(i));
                ASSERT_GE(t.top, t.index);
                if (i > 0) { ASSERT_LT(t.top, rep.terms[i - 1].top); }
            }
            ASSERT_EQ(inner, rep.m_prime);
            ASSERT_GE(rep.s(), 1);
        }
    }
}

TEST(Harper, Examples) {
    EXPECT_EQ(harper_bv(1, 4), 4U);
    EXPECT_EQ(harper_bv(17, 6), 23U);
    EXPECT_EQ(bv_hamming_ball(17, 6), 23U);
    EXPECT_EQ(harper_bv(8, 4), 6U);
}

TEST(Harper, OracleValuesForQ4) {
    for (std::uint64_t m = 1; m <= 15; ++m) {
        EXPECT_EQ(oracle::bv_by_subsets(4, m), kBvQ4[m - 1]);
        EXPECT_EQ(bv_bruteforce(m, 4), kBvQ4[m - 1]);
        EXPECT_EQ(harper_bv(m, 4), kBvQ4[m - 1]);
    }
    for (std::uint64_t m = 1; m <= 3; ++m) EXPECT_EQ(bv_bruteforce(m, 2), oracle::bv_by_subsets(2, m));
}

TEST(Harper, BallOracleAgreement) {
    for (int d : {2, 4, 6, 8}) {
        const auto profile = hamming_ball_profile(d, (std::uint64_t{1} << d) - 1);
        for (std::uint64_t m = 1; m < (std::uint64_t{1} << d); ++m) {
            EXPECT_EQ(bv_hamming_ball(m, d), harper_bv(m, d)) << "d=" << d << " m=" << m;
            EXPECT_EQ(profile[m - 1], harper_bv(m, d));
        }
    }
}

TEST(Harper, BruteForceGuards) {
    EXPECT_EQ(bv_bruteforce(1, 4), 4U);
    EXPECT_EQ(bv_bruteforce(3, 4), 7U);
    EXPECT_THROW(bv_bruteforce(3, 6), InfeasibleError);
    EXPECT_THROW(bv_hamming_ball(0, 6), InputError);
    EXPECT_EQ(bv_hamming_ball(1, 6), 6U);
}

TEST(PhiSmallM, Examples) {
    EXPECT_EQ(phi_small_m(1, 2), 4);
    EXPECT_EQ(phi_small_m(5, 2), 6);
    EXPECT_EQ(bv_bruteforce(5, 4), 6U);
    EXPECT_EQ(phi_small_m(7, 3), 15);
    EXPECT_EQ(harper_bv(7, 6), 15U);
    EXPECT_THROW(phi_small_m(0, 2), InputError);
    EXPECT_THROW(phi_small_m(6, 2), InputError);
}

TEST(PhiSmallM, AgreesWithHarper) {
    for (int k = 1; k <= 6; ++k) {
        for (int m = 1; m <= 2 * k + 1; ++m) {
            EXPECT_EQ(phi_small_m(m, k), static_cast<std::int64_t>(harper_bv(static_cast<std::uint64_t>(m), 2 * k)));
        }
    }
}

TEST(Colex, InitialSegments) {
    EXPECT_EQ(as_lists(colex_initial_segment(3, 2, 4)), (std::vector<std::vector<int>>{{1, 2}, {1, 3}, {2, 3}}));
    EXPECT_EQ(as_lists(colex_initial_segment(1, 3, 6)), (std::vector<std::vector<int>>{{1, 2, 3}}));
    for (int n = 1; n <= 8; ++n) {
        for (int r = 0; r <= n; ++r) {
            const auto full = colex_initial_segment(binomial(n, r), r, n);
            EXPECT_EQ(as_lists(full), oracle::colex_level(n, r));
        }
    }
    EXPECT_THROW(colex_initial_segment(0, 2, 4), InputError);
    EXPECT_THROW(colex_initial_segment(7, 2, 4), InputError);
}

TEST(Colex, LowerShadowExamples) {
    const auto a = colex_initial_segment(3, 2, 4);
    EXPECT_EQ(as_lists(lower_shadow(a)), (std::vector<std::vector<int>>{{1}, {2}, {3}}));
    const auto facets = lower_shadow({RankedSubset::of({1, 2, 3, 4})});
    EXPECT_EQ(as_lists(facets), (std::vector<std::vector<int>>{{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}));
    EXPECT_THROW(lower_shadow({RankedSubset::of({1, 2}), RankedSubset::of({3})}), InputError);
    EXPECT_THROW(lower_shadow({RankedSubset()}), InputError);
}

TEST(Colex, ShadowSizeExamples) {
    EXPECT_EQ(shadow_size(10, 4, 6), 18U);
    EXPECT_EQ(lower_shadow(colex_initial_segment(10, 4, 6)).size(), 18U);
    EXPECT_EQ(shadow_size(1, 5, 9), 5U);
    EXPECT_EQ(shadow_size(3, 2, 4), 3U);
    EXPECT_THROW(shadow_size(0, 2, 4), InputError);
}

TEST(Colex, SegmentShadowIsASegment) {
    for (int n = 1; n <= 8; ++n) {
        for (int r = 1; r <= n; ++r) {
            for (std::uint64_t mp = 1; mp <= binomial(n, r); ++mp) {
                const auto segment = colex_initial_segment(mp, r, n);
                const auto shadow = lower_shadow(segment);
                const auto expected_size = shadow_size(mp, r, n);
                ASSERT_EQ(shadow, colex_initial_segment(expected_size, r - 1, n)) << n << ' ' << r << ' ' << mp;
                // Independent shadow by element deletion.
                const auto ref = oracle::shadow(as_lists(segment));
                ASSERT_EQ(ref.size(), expected_size);
            }
        }
    }
}

TEST(ShadowInequality, Examples) {
    EXPECT_TRUE(check_claim6(10, 4, 3));
    for (int k = 1; k <= 6; ++k) EXPECT_TRUE(check_claim6(1, k + 1, k));
    EXPECT_THROW(check_claim6(1, 3, 3), InputError);
    EXPECT_THROW(check_claim6(0, 4, 3), InputError);
    EXPECT_THROW(check_claim6(16, 4, 3), InputError);
}

TEST(ShadowInequality, ExhaustiveSmallK) {
    for (int k = 1; k <= 4; ++k) {
        for (int r = k + 1; r <= 2 * k; ++r) {
            for (std::uint64_t mp = 1; mp <= binomial(2 * k, r); ++mp) EXPECT_TRUE(check_claim6(mp, r, k));
        }
    }
}

TEST(ShadowInequality, BipartiteDegreeBounds) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 100; ++trial) {
        const int k = 2 + static_cast<int>(rng() % 4);
        const int r = k + 1 + static_cast<int>(rng() % static_cast<unsigned>(k));
        const auto mp = 1 + rng() % binomial(2 * k, r);
        const auto top = colex_initial_segment(mp, r, 2 * k);
        const auto bottom = lower_shadow(top);
        std::set<std::uint64_t> top_masks;
        for (const auto& a : top) top_masks.insert(a.mask());
        std::set<std::uint64_t> bottom_masks;
        for (const auto& b : bottom) bottom_masks.insert(b.mask());
        for (const auto& a : top) {
            int degree = 0;
            for (auto bits = a.mask(); bits != 0; bits &= bits - 1) {
                degree += bottom_masks.count(a.mask() & ~(bits & (~bits + 1))) ? 1 : 0;
            }
            EXPECT_EQ(degree, r);
        }
        for (const auto& b : bottom) {
            int degree = 0;
            for (int e = 0; e < 2 * k; ++e) {
                const auto bit = std::uint64_t{1} << e;
                if ((b.mask() & bit) == 0 && top_masks.count(b.mask() | bit)) ++degree;
            }
            EXPECT_LE(degree, 2 * k - r + 1);
            EXPECT_LT(2 * k - r + 1, r);
        }
        EXPECT_GT(bottom.size(), top.size());
    }
}

TEST(ExpansionCondition, HoldsForSmallK) {
    for (int k = 1; k <= 6; ++k) EXPECT_TRUE(check_theorem1_condition(k)) << k;
    EXPECT_THROW(check_theorem1_condition(0), InfeasibleError);
    EXPECT_THROW(check_theorem1_condition(9), InfeasibleError);
}

TEST(Facts, HoldForRange) {
    for (int k = 1; k <= 6; ++k) {
        const auto f = check_expansion_facts(k);
        EXPECT_TRUE(f.identity_small_m) << k;
        EXPECT_TRUE(f.identity_large_m) << k;
        EXPECT_TRUE(f.small_m_bound) << k;
        EXPECT_TRUE(f.large_m_bound) << k;
        EXPECT_TRUE(verify_facts_3_4(k));
    }
    EXPECT_THROW(verify_facts_3_4(7), InfeasibleError);
}

TEST(Facts, IdentityPlugIn) {
    // k = 3, m = 2: 2 + 2*(12 - 3) - 2*2*3 = 8 and 2*1 + 4*0 + 6 = 8.
    const std::int64_t k = 3;
    const std::int64_t m = 2;
    EXPECT_EQ(2 + m * (4 * k - m - 1) - 2 * (k - 1) * (m + 1), 8);
    EXPECT_EQ(m * (k - m) + (k + 1) * (m - 2) + 6, 8);
}

TEST(Symmetry, LevelSumsAndHalfCube) {
    for (int k = 1; k <= 10; ++k) {
        std::uint64_t below = 0;
        std::uint64_t above = 0;
        for (int i = 0; i <= k - 1; ++i) below += binomial(2 * k, i);
        for (int i = k + 1; i <= 2 * k; ++i) above += binomial(2 * k, i);
        EXPECT_EQ(below, above);
        EXPECT_EQ(2 * below + binomial(2 * k, k), std::uint64_t{1} << (2 * k));
    }
}
