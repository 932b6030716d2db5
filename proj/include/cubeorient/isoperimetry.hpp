#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "cubeorient/error.hpp"
#include "cubeorient/hypercube.hpp"

namespace cubeorient {

// Exact binomials C(n, r) for 0 <= n <= 64 from a Pascal table; anything
// beyond the table is an error rather than a wrapped value.
class BinomialTable {
public:
    static constexpr int kMaxN = 64;

    static const BinomialTable& instance() {
        static const BinomialTable table;
        return table;
    }

    [[nodiscard]] std::uint64_t operator()(std::int64_t n, std::int64_t r) const {
        if (n < 0 || n > kMaxN) throw InputError("binomial C(" + std::to_string(n) + ", .) is outside the table");
        if (r < 0 || r > n) return 0;
        return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(r)];
    }

private:
    BinomialTable() {
        for (int n = 0; n <= kMaxN; ++n) {
            rows_[n][0] = 1;
            for (int r = 1; r <= n; ++r) {
                const auto a = rows_[n - 1][r - 1];
                const auto b = rows_[n - 1][r];
                if (b > UINT64_MAX - a) throw CubeError("binomial table overflow");
                rows_[n][r] = a + b;
            }
        }
    }

    std::array<std::array<std::uint64_t, kMaxN + 1>, kMaxN + 1> rows_{};
};

inline std::uint64_t binomial(std::int64_t n, std::int64_t r) { return BinomialTable::instance()(n, r); }

// Terms (m_j, j) of m' = sum C(m_j, j), j descending from r to s.
struct BinomialTerm {
    std::int64_t top = 0;    // m_j
    std::int64_t index = 0;  // j

    friend bool operator==(const BinomialTerm&, const BinomialTerm&) = default;
};

// m = sum_{i=r+1}^{n} C(n, i) + m', with m' = sum_{j=s}^{r} C(m_j, j).
struct CascadeRepresentation {
    std::uint64_t m = 0;
    int n = 0;
    int r = 0;
    std::uint64_t m_prime = 0;
    std::vector<BinomialTerm> terms;

    [[nodiscard]] int s() const { return terms.empty() ? r : static_cast<int>(terms.back().index); }
};

// Greedy r-cascade of a positive integer: repeatedly the largest y with C(y, j) <= rest.
inline std::vector<BinomialTerm> binomial_cascade(std::uint64_t value, int r) {
    if (r < 1) throw InputError("cascade index must be positive");
    std::vector<BinomialTerm> terms;
    std::uint64_t rest = value;
    for (std::int64_t j = r; rest > 0; --j) {
        if (j < 1) throw CubeError("cascade did not terminate");
        std::int64_t y = j;
        while (y + 1 <= BinomialTable::kMaxN && binomial(y + 1, j) <= rest) ++y;
        if (binomial(y, j) > rest) throw CubeError("cascade term exceeds remainder");
        terms.push_back(BinomialTerm{y, j});
        rest -= binomial(y, j);
    }
    return terms;
}

inline void require_cube_size(std::uint64_t m, int n) {
    if (n < 1 || n > 62) throw InputError("ambient dimension must be in [1, 62]");
    const std::uint64_t top = (std::uint64_t{1} << n) - 1;
    if (m < 1 || m > top) {
        throw InputError("m must be in [1, 2^" + std::to_string(n) + " - 1], got " + std::to_string(m));
    }
}

// r is the largest x in [1, n] with m <= sum_{i=x}^{n} C(n, i); then m' is the
// excess over the full levels above r, decomposed greedily.
inline CascadeRepresentation cascade_representation(std::uint64_t m, int n) {
    require_cube_size(m, n);
    CascadeRepresentation rep;
    rep.m = m;
    rep.n = n;
    std::uint64_t above = 0;  // sum_{i=r+1}^{n} C(n, i)
    int r = n;
    while (m > above + binomial(n, r)) {
        above += binomial(n, r);
        --r;
    }
    rep.r = r;
    rep.m_prime = m - above;
    rep.terms = binomial_cascade(rep.m_prime, r);
    return rep;
}

inline std::uint64_t shadow_of_terms(const std::vector<BinomialTerm>& terms) {
    std::uint64_t total = 0;
    for (const auto& t : terms) total += binomial(t.top, t.index - 1);
    return total;
}

// b_v(m, Q_n) = C(n, r) - m' + sum C(m_j, j - 1).
inline std::uint64_t harper_bv(std::uint64_t m, int n) {
    const auto rep = cascade_representation(m, n);
    return binomial(n, rep.r) - rep.m_prime + shadow_of_terms(rep.terms);
}

// Closed form 1 + m(4k - m - 1)/2 of b_v(m, Q_{2k}) for 1 <= m <= 2k + 1.
inline std::int64_t phi_small_m(std::int64_t m, std::int64_t k) {
    if (k < 1) throw InputError("k must be positive");
    if (m < 1 || m > 2 * k + 1) throw InputError("phi_small_m needs 1 <= m <= 2k + 1");
    return 1 + m * (4 * k - m - 1) / 2;
}

inline constexpr int kMaxBruteForceDim = 4;

// Minimum |N(S)| over all m-subsets of Q_d by exhaustive enumeration.
inline std::uint64_t bv_bruteforce(std::uint64_t m, int d) {
    if (d > kMaxBruteForceDim) {
        throw InfeasibleError("brute-force b_v supports d <= " + std::to_string(kMaxBruteForceDim));
    }
    require_cube_size(m, d);
    const unsigned n = 1U << d;
    std::vector<std::uint32_t> closed(n);  // v together with its neighbors
    for (unsigned v = 0; v < n; ++v) {
        closed[v] = 1U << v;
        for (int i = 0; i < d; ++i) closed[v] |= 1U << (v ^ (1U << i));
    }
    std::uint64_t best = n;
    const std::uint64_t limit = std::uint64_t{1} << n;
    for (std::uint64_t subset = (std::uint64_t{1} << m) - 1; subset < limit;) {
        std::uint32_t reach = 0;
        for (auto bits = subset; bits != 0; bits &= bits - 1) reach |= closed[std::countr_zero(bits)];
        const auto members = static_cast<std::uint32_t>(subset);
        best = std::min<std::uint64_t>(best, static_cast<std::uint64_t>(std::popcount(reach & ~members)));
        // Gosper's hack: next subset with the same popcount.
        const std::uint64_t low = subset & (~subset + 1);
        const std::uint64_t ripple = subset + low;
        subset = (((ripple ^ subset) >> 2) / low) | ripple;
    }
    return best;
}

// All nodes of Q_d by descending Hamming weight, colex (ascending label) within
// a weight: the ball around the all-ones node grown level by level.
inline std::vector<NodeId> simplicial_order(HypercubeDim d) {
    std::vector<NodeId> order(d.node_count());
    for (std::size_t v = 0; v < order.size(); ++v) order[v] = static_cast<NodeId>(v);
    std::stable_sort(order.begin(), order.end(),
                     [](NodeId a, NodeId b) { return std::popcount(a) > std::popcount(b); });
    return order;
}

// |N(S)| for S the first m nodes of the simplicial order.
inline std::uint64_t bv_hamming_ball(std::uint64_t m, int dimension) {
    const HypercubeDim d(dimension);
    require_cube_size(m, dimension);
    const auto order = simplicial_order(d);
    NodeSet ball(d);
    for (std::uint64_t i = 0; i < m; ++i) ball.insert(order[i]);
    return neighborhood(ball).size();
}

// |N(S)| of every simplicial initial segment S of size 1..m_max, grown one node
// at a time.
inline std::vector<std::uint64_t> hamming_ball_profile(int dimension, std::uint64_t m_max) {
    const HypercubeDim d(dimension);
    if (m_max >= d.node_count()) throw InputError("profile length must be below 2^d");
    const auto order = simplicial_order(d);
    std::vector<std::uint8_t> in_ball(d.node_count(), 0);
    std::vector<int> ball_neighbors(d.node_count(), 0);
    std::uint64_t boundary = 0;
    std::vector<std::uint64_t> profile;
    profile.reserve(m_max);
    for (std::uint64_t i = 0; i < m_max; ++i) {
        const NodeId v = order[i];
        if (ball_neighbors[v] > 0) --boundary;
        in_ball[v] = 1;
        for (int b = 0; b < dimension; ++b) {
            const NodeId w = v ^ (NodeId{1} << b);
            if (in_ball[w] == 0 && ball_neighbors[w]++ == 0) ++boundary;
        }
        profile.push_back(boundary);
    }
    return profile;
}

// An i-element subset of {1, ..., n}; element e is bit e - 1 of the mask.
class RankedSubset {
public:
    RankedSubset() = default;
    explicit RankedSubset(std::uint64_t mask) : mask_(mask) {}

    static RankedSubset of(std::initializer_list<int> elements) {
        std::uint64_t mask = 0;
        for (int e : elements) {
            if (e < 1 || e > 64) throw InputError("subset elements must lie in [1, 64]");
            mask |= std::uint64_t{1} << (e - 1);
        }
        return RankedSubset(mask);
    }

    [[nodiscard]] std::uint64_t mask() const noexcept { return mask_; }
    [[nodiscard]] int level() const noexcept { return std::popcount(mask_); }

    [[nodiscard]] std::vector<int> elements() const {
        std::vector<int> out;
        for (auto bits = mask_; bits != 0; bits &= bits - 1) out.push_back(std::countr_zero(bits) + 1);
        return out;
    }

    // Colex: the set whose largest differing element is smaller comes first,
    // which for equal-size sets is plain mask order.
    friend bool operator<(const RankedSubset& a, const RankedSubset& b) { return a.mask_ < b.mask_; }
    friend bool operator==(const RankedSubset&, const RankedSubset&) = default;

private:
    std::uint64_t mask_ = 0;
};

// First m' r-subsets of {1, ..., n} in colex order.
inline std::vector<RankedSubset> colex_initial_segment(std::uint64_t m_prime, int r, int n) {
    if (n < 1 || n > 63) throw InputError("ground set size must be in [1, 63]");
    if (r < 0 || r > n) throw InputError("level must be in [0, n]");
    if (m_prime < 1 || m_prime > binomial(n, r)) throw InputError("segment length must be in [1, C(n, r)]");
    std::vector<RankedSubset> out;
    out.reserve(m_prime);
    std::uint64_t subset = (std::uint64_t{1} << r) - 1;
    for (std::uint64_t i = 0; i < m_prime; ++i) {
        out.emplace_back(subset);
        if (subset == 0) break;
        const std::uint64_t low = subset & (~subset + 1);
        const std::uint64_t ripple = subset + low;
        subset = (((ripple ^ subset) >> 2) / low) | ripple;
    }
    return out;
}

// Gamma(A): every (i-1)-subset contained in a member of A, in colex order.
inline std::vector<RankedSubset> lower_shadow(const std::vector<RankedSubset>& family) {
    if (family.empty()) return {};
    const int level = family.front().level();
    if (level < 1) throw InputError("lower shadow needs members of size at least 1");
    std::set<std::uint64_t> shadow;
    for (const auto& a : family) {
        if (a.level() != level) throw InputError("lower shadow needs members of a single level");
        for (auto bits = a.mask(); bits != 0; bits &= bits - 1) shadow.insert(a.mask() & ~(bits & (~bits + 1)));
    }
    std::vector<RankedSubset> out;
    out.reserve(shadow.size());
    for (auto mask : shadow) out.emplace_back(mask);
    return out;
}

// Size of the lower shadow of the first m' r-sets in colex: sum C(m_j, j - 1)
// over the r-cascade of m'.
inline std::uint64_t shadow_size(std::uint64_t m_prime, int r, int n) {
    if (n < 1 || n > BinomialTable::kMaxN) throw InputError("ground set size out of range");
    if (r < 1 || r > n) throw InputError("level must be in [1, n]");
    if (m_prime < 1 || m_prime > binomial(n, r)) throw InputError("segment length must be in [1, C(n, r)]");
    return shadow_of_terms(binomial_cascade(m_prime, r));
}

// For levels r >= k + 1 of Q_{2k} a colex segment is strictly smaller than its shadow.
inline bool check_claim6(std::uint64_t m_prime, int r, int k) {
    if (k < 1 || 2 * k > BinomialTable::kMaxN) throw InputError("k out of range");
    if (r < k + 1 || r > 2 * k) throw InputError("shadow check needs k + 1 <= r <= 2k");
    if (m_prime < 1 || m_prime > binomial(2 * k, r)) throw InputError("m' must be in [1, C(2k, r)]");
    return shadow_size(m_prime, r, 2 * k) > m_prime;
}

inline std::int64_t expansion_bound(std::int64_t m, std::int64_t k) {
    return std::min(k * k - 1, (k - 1) * (m + 1));
}

inline constexpr int kMaxExpansionK = 8;

// b_v(m, Q_{2k}) > min(k^2 - 1, (k - 1)(m + 1)) for every 1 <= m <= 2^{2k-1}.
inline bool check_theorem1_condition(int k) {
    if (k < 1 || k > kMaxExpansionK) {
        throw InfeasibleError("expansion check supports 1 <= k <= " + std::to_string(kMaxExpansionK));
    }
    const std::uint64_t half = std::uint64_t{1} << (2 * k - 1);
    for (std::uint64_t m = 1; m <= half; ++m) {
        const auto bv = static_cast<std::int64_t>(harper_bv(m, 2 * k));
        if (bv <= expansion_bound(static_cast<std::int64_t>(m), k)) return false;
    }
    return true;
}

// Per-part outcome of the small-m / large-m inequality checks.
struct FactsCheck {
    bool identity_small_m = true;  // 2 Delta identity for 1 <= m <= k
    bool identity_large_m = true;  // 2 Delta identity for k <= m <= 2k + 1
    bool small_m_bound = true;     // phi(m) > min((k-1)(m+1), (k-1)(k+1)), m <= 2k + 1
    bool large_m_bound = true;     // b_v(m) > (k-1)(k+1), 2k + 2 <= m <= 2^{2k-1}

    [[nodiscard]] bool all() const {
        return identity_small_m && identity_large_m && small_m_bound && large_m_bound;
    }
};

inline constexpr int kMaxFactsK = 6;

inline FactsCheck check_expansion_facts(int k) {
    if (k < 1 || k > kMaxFactsK) {
        throw InfeasibleError("facts check supports 1 <= k <= " + std::to_string(kMaxFactsK));
    }
    const std::int64_t kk = k;
    FactsCheck result;
    for (std::int64_t m = 1; m <= kk; ++m) {
        const std::int64_t lhs = 2 + m * (4 * kk - m - 1) - 2 * (kk - 1) * (m + 1);
        const std::int64_t rhs = m * (kk - m) + (kk + 1) * (m - 2) + 6;
        if (lhs != rhs) result.identity_small_m = false;
    }
    for (std::int64_t m = kk; m <= 2 * kk + 1; ++m) {
        const std::int64_t lhs = 2 + m * (4 * kk - m - 1) - 2 * (kk - 1) * (kk + 1);
        const std::int64_t rhs = (2 * kk + 1 - m) * (m - kk + 1) + (m - 1) * (kk - 1) + 2;
        if (lhs != rhs) result.identity_large_m = false;
    }
    for (std::int64_t m = 1; m <= 2 * kk + 1; ++m) {
        if (phi_small_m(m, kk) <= std::min((kk - 1) * (m + 1), (kk - 1) * (kk + 1))) result.small_m_bound = false;
    }
    const std::uint64_t half = std::uint64_t{1} << (2 * k - 1);
    for (std::uint64_t m = 2 * static_cast<std::uint64_t>(k) + 2; m <= half; ++m) {
        if (static_cast<std::int64_t>(harper_bv(m, 2 * k)) <= (kk - 1) * (kk + 1)) result.large_m_bound = false;
    }
    return result;
}

inline bool verify_facts_3_4(int k) { return check_expansion_facts(k).all(); }

}  // namespace cubeorient
