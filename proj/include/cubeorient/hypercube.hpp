#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "cubeorient/error.hpp"

namespace cubeorient {

// Node labels are d-bit integers; dimension i is the bit with value 2^i.
using NodeId = std::uint32_t;

inline constexpr int kMaxDim = 20;

// Dimension of a hypercube Q_d, validated to 1 <= d <= kMaxDim.
class HypercubeDim {
public:
    explicit HypercubeDim(int d) : d_(d) {
        if (d < 1 || d > kMaxDim) {
            throw InputError("hypercube dimension must be in [1, " + std::to_string(kMaxDim) +
                             "], got " + std::to_string(d));
        }
    }

    [[nodiscard]] int value() const noexcept { return d_; }
    [[nodiscard]] std::size_t node_count() const noexcept { return std::size_t{1} << d_; }
    [[nodiscard]] std::size_t edge_count() const noexcept {
        return static_cast<std::size_t>(d_) << (d_ - 1);
    }
    [[nodiscard]] bool contains(NodeId v) const noexcept { return v < node_count(); }

    friend bool operator==(HypercubeDim, HypercubeDim) = default;

private:
    int d_;
};

inline void require_node(NodeId v, HypercubeDim d) {
    if (!d.contains(v)) {
        throw InputError("node " + std::to_string(v) + " is outside Q_" + std::to_string(d.value()));
    }
}

// Canonical edge name: the endpoint whose bit `dim` is 0, plus the dimension.
struct EdgeId {
    NodeId base = 0;
    int dim = 0;

    [[nodiscard]] NodeId head() const noexcept { return base ^ (NodeId{1} << dim); }

    friend bool operator==(const EdgeId&, const EdgeId&) = default;
};

// Canonical edge of {v, v xor 2^dim}.
inline EdgeId canonical_edge(NodeId v, int dim) noexcept {
    return EdgeId{v & ~(NodeId{1} << dim), dim};
}

namespace detail {

// Number of set bits summed over all integers in [0, n).
inline std::uint64_t popcount_prefix(std::uint64_t n) noexcept {
    std::uint64_t total = 0;
    for (int i = 0; i < 63; ++i) {
        const std::uint64_t half = std::uint64_t{1} << i;
        if (half >= n) break;
        const std::uint64_t block = half << 1;
        total += (n / block) * half;
        const std::uint64_t rest = n % block;
        if (rest > half) total += rest - half;
    }
    return total;
}

}  // namespace detail

// Position of an edge in the canonical enumeration: base ascending, then dim
// ascending, skipping (base, dim) pairs whose bit dim of base is set.
inline std::size_t edge_rank(EdgeId e, HypercubeDim d) {
    const auto n = d.value();
    const std::uint64_t base = e.base;
    const std::uint64_t before = base * static_cast<std::uint64_t>(n) - detail::popcount_prefix(base);
    const std::uint64_t low_mask = (std::uint64_t{1} << e.dim) - 1;
    const std::uint64_t within = static_cast<std::uint64_t>(e.dim) - std::popcount(base & low_mask);
    return static_cast<std::size_t>(before + within);
}

// Calls f(EdgeId) for every edge in canonical order.
template <typename F>
void for_each_edge(HypercubeDim d, F&& f) {
    const auto n = static_cast<NodeId>(d.node_count());
    for (NodeId v = 0; v < n; ++v) {
        for (int i = 0; i < d.value(); ++i) {
            if (((v >> i) & 1U) == 0) f(EdgeId{v, i});
        }
    }
}

inline std::vector<EdgeId> all_edges(HypercubeDim d) {
    std::vector<EdgeId> edges;
    edges.reserve(d.edge_count());
    for_each_edge(d, [&](EdgeId e) { edges.push_back(e); });
    return edges;
}

// Subset of V(Q_d) stored as a bitset.
class NodeSet {
public:
    explicit NodeSet(HypercubeDim d) : d_(d), words_((d.node_count() + 63) / 64, 0) {}

    NodeSet(HypercubeDim d, std::initializer_list<NodeId> members) : NodeSet(d) {
        for (auto v : members) insert(v);
    }

    template <typename Range>
    static NodeSet from_range(HypercubeDim d, const Range& members) {
        NodeSet s(d);
        for (auto v : members) s.insert(static_cast<NodeId>(v));
        return s;
    }

    static NodeSet full(HypercubeDim d) {
        NodeSet s(d);
        return s.complement();
    }

    [[nodiscard]] HypercubeDim dim() const noexcept { return d_; }

    void insert(NodeId v) {
        require_node(v, d_);
        words_[v >> 6] |= std::uint64_t{1} << (v & 63);
    }

    void erase(NodeId v) {
        require_node(v, d_);
        words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    }

    [[nodiscard]] bool contains(NodeId v) const noexcept {
        return d_.contains(v) && ((words_[v >> 6] >> (v & 63)) & 1U) != 0;
    }

    [[nodiscard]] std::size_t size() const noexcept {
        std::size_t total = 0;
        for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
        return total;
    }

    [[nodiscard]] bool empty() const noexcept { return size() == 0; }

    [[nodiscard]] NodeSet complement() const {
        NodeSet out(d_);
        for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
        out.trim();
        return out;
    }

    NodeSet& operator|=(const NodeSet& other) {
        check_same(other);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
        return *this;
    }

    NodeSet& operator&=(const NodeSet& other) {
        check_same(other);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
        return *this;
    }

    NodeSet& operator-=(const NodeSet& other) {
        check_same(other);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
        return *this;
    }

    friend NodeSet operator|(NodeSet a, const NodeSet& b) { return a |= b; }
    friend NodeSet operator&(NodeSet a, const NodeSet& b) { return a &= b; }
    friend NodeSet operator-(NodeSet a, const NodeSet& b) { return a -= b; }

    friend bool operator==(const NodeSet& a, const NodeSet& b) {
        return a.d_ == b.d_ && a.words_ == b.words_;
    }

    // Members in ascending order.
    [[nodiscard]] std::vector<NodeId> members() const {
        std::vector<NodeId> out;
        out.reserve(size());
        for (std::size_t w = 0; w < words_.size(); ++w) {
            auto bits = words_[w];
            while (bits != 0) {
                const int b = std::countr_zero(bits);
                out.push_back(static_cast<NodeId>(w * 64 + static_cast<std::size_t>(b)));
                bits &= bits - 1;
            }
        }
        return out;
    }

private:
    void trim() {
        const auto n = d_.node_count();
        if (n % 64 != 0) words_.back() &= (std::uint64_t{1} << (n % 64)) - 1;
    }

    void check_same(const NodeSet& other) const {
        if (!(d_ == other.d_)) throw InputError("node sets belong to different hypercubes");
    }

    HypercubeDim d_;
    std::vector<std::uint64_t> words_;
};

// The d nodes at Hamming distance one from v.
inline NodeSet neighbors(NodeId v, HypercubeDim d) {
    require_node(v, d);
    NodeSet out(d);
    for (int i = 0; i < d.value(); ++i) out.insert(v ^ (NodeId{1} << i));
    return out;
}

// Exterior neighborhood N(S): nodes outside S adjacent to some member of S.
inline NodeSet neighborhood(const NodeSet& s) {
    const auto d = s.dim();
    NodeSet out(d);
    for (NodeId v : s.members()) {
        for (int i = 0; i < d.value(); ++i) {
            const NodeId w = v ^ (NodeId{1} << i);
            if (!s.contains(w)) out.insert(w);
        }
    }
    return out;
}

}  // namespace cubeorient
