#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "cubeorient/connectivity.hpp"
#include "cubeorient/error.hpp"
#include "cubeorient/hypercube.hpp"
#include "cubeorient/orientation.hpp"

namespace cubeorient {

inline void require_even(HypercubeDim d) {
    if (d.value() % 2 != 0) {
        throw NotEulerianError("Q_" + std::to_string(d.value()) + " has odd degree and no Eulerian orientation");
    }
}

// Orients Q_d (d even) along an Euler circuit found by Hierholzer's algorithm.
inline Orientation euler_tour_orientation(HypercubeDim d) {
    require_even(d);
    const int dim = d.value();
    std::vector<std::uint8_t> used(d.edge_count(), 0);
    std::vector<int> next_dim(d.node_count(), 0);
    std::vector<NodeId> stack{0};
    std::vector<NodeId> circuit;
    circuit.reserve(d.edge_count() + 1);

    while (!stack.empty()) {
        const NodeId v = stack.back();
        int& i = next_dim[v];
        while (i < dim && used[edge_rank(canonical_edge(v, i), d)] != 0) ++i;
        if (i == dim) {
            circuit.push_back(v);
            stack.pop_back();
            continue;
        }
        used[edge_rank(canonical_edge(v, i), d)] = 1;
        stack.push_back(v ^ (NodeId{1} << i));
    }

    Orientation o(d);
    for (std::size_t j = 0; j + 1 < circuit.size(); ++j) o.orient(circuit[j], circuit[j + 1]);
    return o;
}

struct SamplerConfig {
    std::uint64_t seed = 0;
    // Cycle reversals per sample; 10 * |E| when unset.
    std::optional<std::size_t> steps;

    [[nodiscard]] std::size_t steps_for(HypercubeDim d) const { return steps.value_or(10 * d.edge_count()); }
};

// Markov chain on Eulerian orientations of Q_d: each move follows a random
// directed walk until it revisits a node and reverses the cycle it closed.
// Every move keeps all in/out degrees fixed. No claim of uniformity.
class EulerianSampler {
public:
    EulerianSampler(HypercubeDim d, std::uint64_t seed)
        : d_(d), rng_(seed), out_(d.node_count(), 0), position_(d.node_count(), kUnvisited) {
        const ArcTable start(euler_tour_orientation(d));
        for (std::size_t v = 0; v < out_.size(); ++v) out_[v] = start.out_mask(static_cast<NodeId>(v));
    }

    [[nodiscard]] HypercubeDim dim() const noexcept { return d_; }

    void reverse_random_cycle() {
        std::uniform_int_distribution<NodeId> pick_node(0, static_cast<NodeId>(d_.node_count() - 1));
        std::uniform_int_distribution<int> pick_arc(0, d_.value() / 2 - 1);
        walk_.clear();
        NodeId v = pick_node(rng_);
        while (position_[v] == kUnvisited) {
            position_[v] = walk_.size();
            walk_.push_back(v);
            v ^= NodeId{1} << nth_set_bit(out_[v], pick_arc(rng_));
        }
        const std::size_t cycle_start = position_[v];
        for (auto u : walk_) position_[u] = kUnvisited;
        walk_.push_back(v);

#ifndef NDEBUG
        std::vector<int> before;
        for (std::size_t j = cycle_start; j + 1 < walk_.size(); ++j) before.push_back(std::popcount(out_[walk_[j]]));
#endif
        for (std::size_t j = cycle_start; j + 1 < walk_.size(); ++j) {
            const NodeId a = walk_[j];
            const NodeId b = walk_[j + 1];
            const std::uint32_t bit = a ^ b;
            out_[a] &= ~bit;
            out_[b] |= bit;
        }
#ifndef NDEBUG
        for (std::size_t j = cycle_start; j + 1 < walk_.size(); ++j) {
            assert(std::popcount(out_[walk_[j]]) == before[j - cycle_start]);
        }
#endif
    }

    void advance(std::size_t moves) {
        for (std::size_t i = 0; i < moves; ++i) reverse_random_cycle();
    }

    [[nodiscard]] Orientation current() const {
        Orientation o(d_);
        for_each_edge(d_, [&](EdgeId e) { o.set_dir(e, ((out_[e.base] >> e.dim) & 1U) != 0); });
        return o;
    }

private:
    static constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);

    static int nth_set_bit(std::uint32_t mask, int n) {
        for (; n > 0; --n) mask &= mask - 1;
        return std::countr_zero(mask);
    }

    HypercubeDim d_;
    std::mt19937_64 rng_;
    std::vector<std::uint32_t> out_;
    std::vector<std::size_t> position_;
    std::vector<NodeId> walk_;
};

inline Orientation random_eulerian_orientation(HypercubeDim d, const SamplerConfig& cfg) {
    require_even(d);
    EulerianSampler sampler(d, cfg.seed);
    sampler.advance(cfg.steps_for(d));
    return sampler.current();
}

enum class EdgeOrder {
    canonical,        // base ascending, then dimension
    dimension_major,  // dimension ascending, then base
};

inline std::vector<EdgeId> edges_in_order(HypercubeDim d, EdgeOrder order) {
    auto edges = all_edges(d);
    if (order == EdgeOrder::dimension_major) {
        std::stable_sort(edges.begin(), edges.end(),
                         [](const EdgeId& a, const EdgeId& b) { return a.dim < b.dim; });
    }
    return edges;
}

inline constexpr int kMaxEnumerationDim = 4;

// Depth-first assignment of edge directions with in/out degree pruning; calls
// visitor(const Orientation&) once per Eulerian orientation and returns the count.
template <typename Visitor>
std::uint64_t enumerate_eulerian_orientations(HypercubeDim d, Visitor&& visitor,
                                              EdgeOrder order = EdgeOrder::canonical) {
    require_even(d);
    if (d.value() > kMaxEnumerationDim) {
        throw InfeasibleError("exhaustive enumeration supports d <= " + std::to_string(kMaxEnumerationDim));
    }
    const auto edges = edges_in_order(d, order);
    std::vector<std::size_t> ranks;
    ranks.reserve(edges.size());
    for (const auto& e : edges) ranks.push_back(edge_rank(e, d));

    const int half = d.value() / 2;
    std::vector<int> out(d.node_count(), 0);
    std::vector<int> in(d.node_count(), 0);
    Orientation o(d);
    std::uint64_t count = 0;

    auto search = [&](auto&& self, std::size_t idx) -> void {
        if (idx == edges.size()) {
            ++count;
            visitor(std::as_const(o));
            return;
        }
        const NodeId tail_fwd = edges[idx].base;
        const NodeId head_fwd = edges[idx].head();
        for (bool forward : {true, false}) {
            const NodeId from = forward ? tail_fwd : head_fwd;
            const NodeId to = forward ? head_fwd : tail_fwd;
            if (out[from] == half || in[to] == half) continue;
            ++out[from];
            ++in[to];
            o.set_bit(ranks[idx], forward);
            self(self, idx + 1);
            --out[from];
            --in[to];
        }
    };
    search(search, 0);
    return count;
}

inline std::uint64_t count_eulerian_orientations(HypercubeDim d, EdgeOrder order = EdgeOrder::canonical) {
    return enumerate_eulerian_orientations(d, [](const Orientation&) {}, order);
}

inline constexpr int kMaxInductiveK = 5;

// Eulerian orientation of Q_{2k} assembled from four copies of the level k-1
// orientation (selected by the two top label bits) joined by 4-cycles directed
// 00 -> 01 -> 11 -> 10 -> 00 through the copies.
inline Orientation inductive_good_orientation(int k) {
    if (k < 1 || k > kMaxInductiveK) {
        throw InputError("inductive construction supports 1 <= k <= " + std::to_string(kMaxInductiveK));
    }
    auto orient_square = [](Orientation& o, NodeId base, int low_dim) {
        const NodeId a = NodeId{1} << low_dim;
        const NodeId b = NodeId{1} << (low_dim + 1);
        o.orient(base, base | a);
        o.orient(base | a, base | a | b);
        o.orient(base | a | b, base | b);
        o.orient(base | b, base);
    };

    Orientation o(HypercubeDim(2));
    orient_square(o, 0, 0);
    for (int level = 2; level <= k; ++level) {
        const int low = 2 * (level - 1);
        const HypercubeDim d(2 * level);
        Orientation next(d);
        for (NodeId copy = 0; copy < 4; ++copy) {
            const NodeId offset = copy << low;
            for_each_edge(o.dim(), [&](EdgeId e) { next.set_dir(EdgeId{e.base | offset, e.dim}, o.dir(e)); });
        }
        for (NodeId i = 0; i < (NodeId{1} << low); ++i) orient_square(next, i, low);
        o = std::move(next);
    }
    return o;
}

// Smooth orientation of Q_d that is not strongly connected, or nullopt.
// d <= 3 is searched exhaustively in canonical bit order. Larger odd d draws
// candidates that pair random Eulerian orientations of the two halves across a
// random dimension with that dimension's matching oriented one way; larger even
// d draws random Eulerian orientations (the only smooth ones for even degree).
inline std::optional<Orientation> find_smooth_not_strongly_connected(HypercubeDim d, const SamplerConfig& cfg,
                                                                     std::size_t attempts = 64) {
    if (d.value() <= 3) {
        const auto edges = d.edge_count();
        for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << edges); ++pattern) {
            Orientation o(d);
            for (std::size_t r = 0; r < edges; ++r) o.set_bit(r, ((pattern >> r) & 1U) != 0);
            if (is_smooth(o) && !strongly_connected(o)) return o;
        }
        return std::nullopt;
    }

    std::mt19937_64 rng(cfg.seed);
    for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
        Orientation candidate(d);
        if (d.value() % 2 == 0) {
            candidate = random_eulerian_orientation(d, SamplerConfig{rng(), cfg.steps});
        } else {
            const HypercubeDim half(d.value() - 1);
            std::uniform_int_distribution<int> pick_dim(0, d.value() - 1);
            const int split = pick_dim(rng);
            const bool upward = (rng() & 1U) != 0;
            auto lift = [split](NodeId u, NodeId side) {
                const NodeId low = u & ((NodeId{1} << split) - 1);
                return ((u ^ low) << 1) | (side << split) | low;
            };
            for (NodeId side = 0; side < 2; ++side) {
                const auto part = random_eulerian_orientation(half, SamplerConfig{rng(), cfg.steps});
                for_each_edge(half, [&](EdgeId e) {
                    const NodeId a = lift(e.base, side);
                    const NodeId b = lift(e.head(), side);
                    if (part.dir(e)) {
                        candidate.orient(a, b);
                    } else {
                        candidate.orient(b, a);
                    }
                });
            }
            const auto n = static_cast<NodeId>(d.node_count());
            for (NodeId v = 0; v < n; ++v) {
                if (((v >> split) & 1U) == 0) candidate.set_dir(EdgeId{v, split}, upward);
            }
        }
        if (is_smooth(candidate) && !strongly_connected(candidate)) return candidate;
    }
    return std::nullopt;
}

}  // namespace cubeorient
