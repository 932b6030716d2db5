#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <queue>
#include <thread>
#include <vector>

#include "cubeorient/error.hpp"
#include "cubeorient/hypercube.hpp"
#include "cubeorient/orientation.hpp"

namespace cubeorient {

// Outcome of a strong k-node connectivity check. On a negative verdict the
// witness is a deleted set Z (|Z| <= k-1) and a side S of V - Z such that every
// arc between S and V - Z - S points the same way.
struct ConnectivityReport {
    bool verdict = true;
    int k = 1;
    std::optional<NodeSet> witness_deleted;
    std::optional<NodeSet> witness_side;
};

namespace detail {

// Nodes reachable from `start` avoiding `blocked`, following arcs forwards or backwards.
inline std::vector<std::uint8_t> reach(const ArcTable& arcs, const std::vector<std::uint8_t>& blocked,
                                       NodeId start, bool forward) {
    const int d = arcs.dim().value();
    std::vector<std::uint8_t> seen(arcs.dim().node_count(), 0);
    std::vector<NodeId> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
        const NodeId v = stack.back();
        stack.pop_back();
        const std::uint32_t mask = forward ? arcs.out_mask(v) : arcs.in_mask(v);
        for (int i = 0; i < d; ++i) {
            if (((mask >> i) & 1U) == 0) continue;
            const NodeId w = v ^ (NodeId{1} << i);
            if (seen[w] != 0 || blocked[w] != 0) continue;
            seen[w] = 1;
            stack.push_back(w);
        }
    }
    return seen;
}

// One side of a one-directional cut of D - blocked, or nullopt when D - blocked
// is strongly connected. The side is the forward closure of the lowest surviving
// node when that closure is proper (no arcs leave it), otherwise its backward
// closure (no arcs enter it).
inline std::optional<std::vector<std::uint8_t>> one_way_side(const ArcTable& arcs,
                                                              const std::vector<std::uint8_t>& blocked) {
    const auto n = arcs.dim().node_count();
    NodeId root = 0;
    std::size_t alive = 0;
    for (std::size_t v = n; v-- > 0;) {
        if (blocked[v] == 0) {
            root = static_cast<NodeId>(v);
            ++alive;
        }
    }
    if (alive == 0) throw InputError("every node was deleted");
    for (bool forward : {true, false}) {
        auto side = reach(arcs, blocked, root, forward);
        std::size_t count = 0;
        for (auto s : side) count += s;
        if (count != alive) return side;
    }
    return std::nullopt;
}

inline std::vector<std::uint8_t> to_mask(const NodeSet& s) {
    std::vector<std::uint8_t> mask(s.dim().node_count(), 0);
    for (NodeId v : s.members()) mask[v] = 1;
    return mask;
}

inline NodeSet from_mask(HypercubeDim d, const std::vector<std::uint8_t>& mask) {
    NodeSet s(d);
    for (std::size_t v = 0; v < mask.size(); ++v) {
        if (mask[v] != 0) s.insert(static_cast<NodeId>(v));
    }
    return s;
}

// First failing deletion set of a given size, in lexicographic order.
struct SweepHit {
    std::vector<NodeId> deleted;
    std::vector<std::uint8_t> side;
};

inline std::optional<SweepHit> first_failure_with_first(const ArcTable& arcs, int size, NodeId first,
                                                        const std::atomic<std::size_t>& best_first) {
    const auto n = static_cast<NodeId>(arcs.dim().node_count());
    std::vector<std::uint8_t> blocked(n, 0);
    std::vector<NodeId> combo(static_cast<std::size_t>(size));
    combo[0] = first;
    for (int i = 1; i < size; ++i) combo[static_cast<std::size_t>(i)] = first + static_cast<NodeId>(i);
    if (size > 0 && combo.back() >= n) return std::nullopt;

    while (true) {
        if (best_first.load(std::memory_order_relaxed) < first) return std::nullopt;
        for (auto z : combo) blocked[z] = 1;
        auto side = one_way_side(arcs, blocked);
        for (auto z : combo) blocked[z] = 0;
        if (side) return SweepHit{combo, std::move(*side)};

        // Advance positions 1.. to the next lexicographic combination; position 0 is fixed.
        int pos = size - 1;
        while (pos >= 1 && combo[static_cast<std::size_t>(pos)] == n - static_cast<NodeId>(size - pos)) --pos;
        if (pos < 1) return std::nullopt;
        ++combo[static_cast<std::size_t>(pos)];
        for (int j = pos + 1; j < size; ++j) {
            combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

}  // namespace detail

// True iff the digraph induced on V - deleted has exactly one strong component.
inline bool strongly_connected(const Orientation& o, const NodeSet& deleted) {
    if (!(deleted.dim() == o.dim())) throw InputError("deleted set lives on a different cube");
    if (deleted.size() >= o.dim().node_count()) throw InputError("every node was deleted");
    const ArcTable arcs(o);
    return !detail::one_way_side(arcs, detail::to_mask(deleted)).has_value();
}

inline bool strongly_connected(const Orientation& o) { return strongly_connected(o, NodeSet(o.dim())); }

// Exhaustive deletion sweep over every Z with |Z| <= k-1. With jobs > 1 the
// sweep for each |Z| is split by the smallest element of Z; the reported witness
// is the lexicographically first failing Z regardless of the job count.
inline ConnectivityReport is_strongly_k_node_connected(const Orientation& o, int k, unsigned jobs = 1) {
    if (k < 1) throw InputError("connectivity level k must be positive");
    const auto n = o.dim().node_count();
    if (n < static_cast<std::size_t>(k) + 1) {
        throw InputError("strong " + std::to_string(k) + "-node connectivity needs at least " +
                         std::to_string(k + 1) + " nodes");
    }
    jobs = std::max(1U, jobs);
    const ArcTable arcs(o);
    ConnectivityReport report;
    report.k = k;

    auto fail = [&](const std::vector<NodeId>& deleted, const std::vector<std::uint8_t>& side) {
        report.verdict = false;
        report.witness_deleted = NodeSet::from_range(o.dim(), deleted);
        report.witness_side = detail::from_mask(o.dim(), side);
        return report;
    };

    {
        const std::vector<std::uint8_t> none(n, 0);
        if (auto side = detail::one_way_side(arcs, none)) return fail({}, *side);
    }

    for (int size = 1; size <= k - 1; ++size) {
        const auto last_first = static_cast<NodeId>(n - static_cast<std::size_t>(size));
        std::atomic<std::size_t> best_first{std::numeric_limits<std::size_t>::max()};
        std::optional<detail::SweepHit> best;
        std::mutex best_mutex;

        auto worker = [&](unsigned w) {
            for (NodeId first = w; first <= last_first; first += jobs) {
                if (best_first.load(std::memory_order_relaxed) < first) return;
                auto hit = detail::first_failure_with_first(arcs, size, first, best_first);
                if (!hit) continue;
                std::lock_guard lock(best_mutex);
                if (first < best_first.load()) {
                    best_first.store(first);
                    best = std::move(hit);
                }
                return;
            }
        };

        if (jobs == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
            for (auto& t : pool) t.join();
        }
        if (best) return fail(best->deleted, best->side);
    }
    return report;
}

// Replays a negative report: Z has at most k-1 nodes, S and V - Z - S are both
// nonempty, and all arcs between them cross in one direction.
inline bool witness_is_valid(const Orientation& o, const ConnectivityReport& report) {
    if (report.verdict || !report.witness_deleted || !report.witness_side) return false;
    const NodeSet& z = *report.witness_deleted;
    const NodeSet& s = *report.witness_side;
    if (z.size() > static_cast<std::size_t>(report.k - 1)) return false;
    if (!(s & z).empty()) return false;
    const NodeSet rest = NodeSet::full(o.dim()) - z - s;
    if (s.empty() || rest.empty()) return false;
    std::size_t leaving = 0;
    std::size_t entering = 0;
    for (NodeId v : s.members()) {
        for (int i = 0; i < o.dim().value(); ++i) {
            const NodeId w = v ^ (NodeId{1} << i);
            if (!rest.contains(w)) continue;
            if (o.has_arc(v, w)) {
                ++leaving;
            } else {
                ++entering;
            }
        }
    }
    return leaving == 0 || entering == 0;
}

// Arc bookkeeping around a failing witness (Z, S) of an Eulerian orientation,
// oriented so that the one-way cut arcs leave `side`.
struct WitnessAccounting {
    std::size_t cut_out = 0;       // arcs side -> V - Z - side
    std::size_t side_to_z = 0;     // arcs side -> Z
    std::size_t z_to_side = 0;     // arcs Z -> side
    std::size_t z_size = 0;
    std::size_t side_size = 0;
};

inline WitnessAccounting witness_accounting(const Orientation& o, const ConnectivityReport& report) {
    if (!witness_is_valid(o, report)) throw InputError("report does not carry a valid witness");
    const NodeSet& z = *report.witness_deleted;
    NodeSet side = *report.witness_side;
    NodeSet rest = NodeSet::full(o.dim()) - z - side;

    auto count = [&](const NodeSet& from, const NodeSet& to) {
        std::size_t c = 0;
        for (NodeId v : from.members()) {
            for (int i = 0; i < o.dim().value(); ++i) {
                const NodeId w = v ^ (NodeId{1} << i);
                if (to.contains(w) && o.has_arc(v, w)) ++c;
            }
        }
        return c;
    };
    if (count(rest, side) != 0) std::swap(side, rest);

    WitnessAccounting acc;
    acc.cut_out = count(side, rest);
    acc.side_to_z = count(side, z);
    acc.z_to_side = count(z, side);
    acc.z_size = z.size();
    acc.side_size = side.size();
    return acc;
}

// For an Eulerian orientation the arcs into the one-way side all come from Z,
// balance forces z_to_side = cut_out + side_to_z, and each node of Z sends at
// most d/2 arcs (and at most one per side node).
inline bool witness_balance_holds(const Orientation& o, const ConnectivityReport& report) {
    const auto acc = witness_accounting(o, report);
    const std::size_t half_degree = static_cast<std::size_t>(o.dim().value()) / 2;
    return acc.z_to_side == acc.cut_out + acc.side_to_z &&
           acc.z_to_side <= std::min(acc.z_size * half_degree, acc.z_size * acc.side_size) &&
           acc.cut_out <= acc.z_size * half_degree;
}

namespace detail {

// Unit-capacity max-flow (Edmonds-Karp) on a node-split graph.
class SplitFlow {
public:
    explicit SplitFlow(std::size_t nodes) : adj_(2 * nodes) {}

    static std::size_t in(NodeId v) { return 2 * static_cast<std::size_t>(v); }
    static std::size_t out(NodeId v) { return 2 * static_cast<std::size_t>(v) + 1; }

    void add_edge(std::size_t from, std::size_t to, int cap) {
        adj_[from].push_back(Edge{to, cap, adj_[to].size()});
        adj_[to].push_back(Edge{from, 0, adj_[from].size() - 1});
    }

    int run(std::size_t source, std::size_t sink) {
        int flow = 0;
        std::vector<std::pair<std::size_t, std::size_t>> parent(adj_.size());
        while (true) {
            std::vector<std::uint8_t> seen(adj_.size(), 0);
            std::queue<std::size_t> queue;
            queue.push(source);
            seen[source] = 1;
            while (!queue.empty() && seen[sink] == 0) {
                const auto u = queue.front();
                queue.pop();
                for (std::size_t i = 0; i < adj_[u].size(); ++i) {
                    const auto& e = adj_[u][i];
                    if (e.cap <= 0 || seen[e.to] != 0) continue;
                    seen[e.to] = 1;
                    parent[e.to] = {u, i};
                    queue.push(e.to);
                }
            }
            if (seen[sink] == 0) return flow;
            for (auto v = sink; v != source;) {
                auto [u, i] = parent[v];
                auto& e = adj_[u][i];
                e.cap -= 1;
                adj_[e.to][e.rev].cap += 1;
                v = u;
            }
            ++flow;
        }
    }

    // Residual reachability from source after run().
    [[nodiscard]] std::vector<std::uint8_t> residual_reach(std::size_t source) const {
        std::vector<std::uint8_t> seen(adj_.size(), 0);
        std::vector<std::size_t> stack{source};
        seen[source] = 1;
        while (!stack.empty()) {
            const auto u = stack.back();
            stack.pop_back();
            for (const auto& e : adj_[u]) {
                if (e.cap > 0 && seen[e.to] == 0) {
                    seen[e.to] = 1;
                    stack.push_back(e.to);
                }
            }
        }
        return seen;
    }

private:
    struct Edge {
        std::size_t to;
        int cap;
        std::size_t rev;
    };
    std::vector<std::vector<Edge>> adj_;
};

inline constexpr int kUnbounded = 1 << 20;

template <typename ArcPredicate>
SplitFlow build_split_flow(HypercubeDim d, NodeId s, NodeId t, ArcPredicate&& has_arc) {
    const auto n = static_cast<NodeId>(d.node_count());
    SplitFlow flow(n);
    for (NodeId v = 0; v < n; ++v) {
        flow.add_edge(SplitFlow::in(v), SplitFlow::out(v), (v == s || v == t) ? kUnbounded : 1);
        for (int i = 0; i < d.value(); ++i) {
            if (!has_arc(v, i)) continue;
            // Arcs never appear in a minimum cut; only the direct s -> t arc stays unit.
            const NodeId w = v ^ (NodeId{1} << i);
            flow.add_edge(SplitFlow::out(v), SplitFlow::in(w), (v == s && w == t) ? 1 : kUnbounded);
        }
    }
    return flow;
}

}  // namespace detail

struct VertexCut {
    int size = 0;                // max number of internally disjoint s -> t paths
    std::optional<NodeSet> cut;  // a minimum separating set; absent when s, t are adjacent
};

inline VertexCut min_vertex_cut(const Orientation& o, NodeId s, NodeId t) {
    const auto d = o.dim();
    require_node(s, d);
    require_node(t, d);
    if (s == t) throw InputError("source and sink must differ");
    const ArcTable arcs(o);
    auto flow = detail::build_split_flow(d, s, t, [&](NodeId v, int i) { return arcs.has_arc(v, i); });
    VertexCut result;
    result.size = flow.run(detail::SplitFlow::out(s), detail::SplitFlow::in(t));
    if (std::popcount(s ^ t) != 1) {
        const auto reach = flow.residual_reach(detail::SplitFlow::out(s));
        NodeSet cut(d);
        const auto n = static_cast<NodeId>(d.node_count());
        for (NodeId v = 0; v < n; ++v) {
            if (reach[detail::SplitFlow::in(v)] != 0 && reach[detail::SplitFlow::out(v)] == 0) cut.insert(v);
        }
        result.cut = std::move(cut);
    }
    return result;
}

// Menger form of the strong k-node connectivity test: at least k+1 nodes and
// at least k internally disjoint s -> t paths for every ordered pair without an
// arc s -> t.
inline bool menger_strongly_k_connected(const Orientation& o, int k) {
    if (k < 1) throw InputError("connectivity level k must be positive");
    const auto d = o.dim();
    const auto n = static_cast<NodeId>(d.node_count());
    if (n < static_cast<NodeId>(k) + 1) return false;
    const ArcTable arcs(o);
    for (NodeId s = 0; s < n; ++s) {
        for (NodeId t = 0; t < n; ++t) {
            if (s == t) continue;
            const NodeId diff = s ^ t;
            if (std::popcount(diff) == 1 && arcs.has_arc(s, std::countr_zero(diff))) continue;
            auto flow = detail::build_split_flow(d, s, t, [&](NodeId v, int i) { return arcs.has_arc(v, i); });
            if (flow.run(detail::SplitFlow::out(s), detail::SplitFlow::in(t)) < k) return false;
        }
    }
    return true;
}

// Node connectivity of the undirected Q_d: min over non-adjacent pairs of the
// number of internally disjoint paths (n - 1 when every pair is adjacent).
inline int undirected_node_connectivity(int dimension) {
    if (dimension < 1 || dimension > 6) {
        throw InfeasibleError("undirected connectivity sweep supports 1 <= d <= 6, got " + std::to_string(dimension));
    }
    const HypercubeDim d(dimension);
    const auto n = static_cast<NodeId>(d.node_count());
    int best = static_cast<int>(n) - 1;
    for (NodeId s = 0; s < n; ++s) {
        for (NodeId t = s + 1; t < n; ++t) {
            if (std::popcount(s ^ t) == 1) continue;
            auto flow = detail::build_split_flow(d, s, t, [](NodeId, int) { return true; });
            best = std::min(best, flow.run(detail::SplitFlow::out(s), detail::SplitFlow::in(t)));
        }
    }
    return best;
}

}  // namespace cubeorient
