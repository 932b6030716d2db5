#pragma once

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cubeorient/error.hpp"
#include "cubeorient/hypercube.hpp"

namespace cubeorient {

// A direction for every edge of Q_d. Bit r of the flat array belongs to the
// edge of canonical rank r: 1 means base -> base^2^dim, 0 means the reverse.
class Orientation {
public:
    explicit Orientation(HypercubeDim d) : d_(d), bits_((d.edge_count() + 63) / 64, 0) {}

    [[nodiscard]] HypercubeDim dim() const noexcept { return d_; }

    [[nodiscard]] bool dir(EdgeId e) const { return bit(edge_rank(e, d_)); }

    void set_dir(EdgeId e, bool forward) { set_bit(edge_rank(e, d_), forward); }

    [[nodiscard]] bool bit(std::size_t rank) const noexcept {
        return ((bits_[rank >> 6] >> (rank & 63)) & 1U) != 0;
    }

    void set_bit(std::size_t rank, bool value) noexcept {
        const auto mask = std::uint64_t{1} << (rank & 63);
        if (value) {
            bits_[rank >> 6] |= mask;
        } else {
            bits_[rank >> 6] &= ~mask;
        }
    }

    // Direct the edge {from, to} as the arc from -> to.
    void orient(NodeId from, NodeId to) {
        const int dim = adjacent_dim(from, to);
        const EdgeId e = canonical_edge(from, dim);
        set_dir(e, e.base == from);
    }

    [[nodiscard]] bool has_arc(NodeId from, NodeId to) const {
        const int dim = adjacent_dim(from, to);
        const EdgeId e = canonical_edge(from, dim);
        return dir(e) == (e.base == from);
    }

    // Bit i set iff the arc at v along dimension i points away from v.
    [[nodiscard]] std::uint32_t out_mask(NodeId v) const {
        require_node(v, d_);
        std::uint32_t mask = 0;
        for (int i = 0; i < d_.value(); ++i) {
            const EdgeId e = canonical_edge(v, i);
            if (dir(e) == (e.base == v)) mask |= std::uint32_t{1} << i;
        }
        return mask;
    }

    [[nodiscard]] int out_degree(NodeId v) const { return std::popcount(out_mask(v)); }
    [[nodiscard]] int in_degree(NodeId v) const { return d_.value() - out_degree(v); }

    friend bool operator==(const Orientation&, const Orientation&) = default;

private:
    [[nodiscard]] int adjacent_dim(NodeId a, NodeId b) const {
        require_node(a, d_);
        require_node(b, d_);
        const NodeId diff = a ^ b;
        if (std::popcount(diff) != 1) {
            throw InputError("nodes " + std::to_string(a) + " and " + std::to_string(b) + " are not adjacent");
        }
        return std::countr_zero(diff);
    }

    HypercubeDim d_;
    std::vector<std::uint64_t> bits_;
};

// Per-node out-dimension masks, the working form for graph searches.
class ArcTable {
public:
    explicit ArcTable(const Orientation& o) : d_(o.dim()), out_(o.dim().node_count(), 0) {
        for_each_edge(d_, [&](EdgeId e) {
            if (o.dir(e)) {
                out_[e.base] |= std::uint32_t{1} << e.dim;
            } else {
                out_[e.head()] |= std::uint32_t{1} << e.dim;
            }
        });
    }

    [[nodiscard]] HypercubeDim dim() const noexcept { return d_; }
    [[nodiscard]] std::uint32_t out_mask(NodeId v) const noexcept { return out_[v]; }
    [[nodiscard]] std::uint32_t in_mask(NodeId v) const noexcept {
        return ~out_[v] & ((std::uint32_t{1} << d_.value()) - 1);
    }
    [[nodiscard]] bool has_arc(NodeId from, int dim) const noexcept {
        return ((out_[from] >> dim) & 1U) != 0;
    }

private:
    HypercubeDim d_;
    std::vector<std::uint32_t> out_;
};

// |in(v) - out(v)| <= 1 at every node.
inline bool is_smooth(const Orientation& o) {
    const ArcTable arcs(o);
    const int d = o.dim().value();
    const auto n = static_cast<NodeId>(o.dim().node_count());
    for (NodeId v = 0; v < n; ++v) {
        const int out = std::popcount(arcs.out_mask(v));
        if (std::abs(2 * out - d) > 1) return false;
    }
    return true;
}

// in(v) == out(v) at every node; never true for odd d.
inline bool is_eulerian_orientation(const Orientation& o) {
    const int d = o.dim().value();
    if (d % 2 != 0) return false;
    const ArcTable arcs(o);
    const auto n = static_cast<NodeId>(o.dim().node_count());
    for (NodeId v = 0; v < n; ++v) {
        if (std::popcount(arcs.out_mask(v)) != d / 2) return false;
    }
    return true;
}

struct CutCounts {
    std::size_t out_count = 0;  // arcs S -> complement
    std::size_t in_count = 0;   // arcs complement -> S

    friend bool operator==(const CutCounts&, const CutCounts&) = default;
};

inline CutCounts cut_arcs(const NodeSet& s, const Orientation& o) {
    if (!(s.dim() == o.dim())) throw InputError("node set and orientation live on different cubes");
    if (s.empty() || s.size() == o.dim().node_count()) {
        throw InputError("cut side must be a nonempty proper subset");
    }
    CutCounts counts;
    for (NodeId v : s.members()) {
        for (int i = 0; i < o.dim().value(); ++i) {
            const NodeId w = v ^ (NodeId{1} << i);
            if (s.contains(w)) continue;
            if (o.has_arc(v, w)) {
                ++counts.out_count;
            } else {
                ++counts.in_count;
            }
        }
    }
    return counts;
}

// Copy of the orientation restricted to the sub-cube whose nodes carry `prefix`
// in the label bits above `sub_dim`.
inline Orientation restrict_to_subcube(const Orientation& o, int sub_dim, NodeId prefix) {
    const HypercubeDim sub(sub_dim);
    if (sub_dim > o.dim().value()) throw InputError("sub-cube dimension exceeds the cube dimension");
    const NodeId offset = prefix << sub_dim;
    require_node(offset, o.dim());
    Orientation out(sub);
    for_each_edge(sub, [&](EdgeId e) {
        out.set_dir(e, o.dir(EdgeId{e.base | offset, e.dim}));
    });
    return out;
}

inline std::size_t serialized_size(HypercubeDim d) { return (d.edge_count() + 7) / 8; }

// Canonical edge bits, most significant bit of each byte first, zero padded.
inline std::vector<std::uint8_t> serialize(const Orientation& o) {
    const auto edges = o.dim().edge_count();
    std::vector<std::uint8_t> bytes(serialized_size(o.dim()), 0);
    for (std::size_t r = 0; r < edges; ++r) {
        if (o.bit(r)) bytes[r / 8] |= static_cast<std::uint8_t>(0x80U >> (r % 8));
    }
    return bytes;
}

inline Orientation deserialize(std::span<const std::uint8_t> bytes, int d) {
    const HypercubeDim dim(d);
    if (bytes.size() != serialized_size(dim)) {
        throw FormatError("orientation of Q_" + std::to_string(d) + " needs " +
                          std::to_string(serialized_size(dim)) + " bytes, got " + std::to_string(bytes.size()));
    }
    const auto edges = dim.edge_count();
    Orientation o(dim);
    for (std::size_t r = 0; r < bytes.size() * 8; ++r) {
        const bool set = ((bytes[r / 8] << (r % 8)) & 0x80U) != 0;
        if (r < edges) {
            o.set_bit(r, set);
        } else if (set) {
            throw FormatError("nonzero padding bits in serialized orientation");
        }
    }
    return o;
}

inline constexpr std::string_view kFileMagic = "CUBEORIENT v1 d=";

// Text file form: "CUBEORIENT v1 d=<d>\n<lowercase hex>\n".
inline std::string to_file_text(const Orientation& o) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out(kFileMagic);
    out += std::to_string(o.dim().value());
    out += '\n';
    for (auto b : serialize(o)) {
        out += kHex[b >> 4];
        out += kHex[b & 0x0F];
    }
    out += '\n';
    return out;
}

inline Orientation from_file_text(std::string_view text) {
    const auto eol = text.find('\n');
    if (eol == std::string_view::npos) throw FormatError("missing header line");
    const auto header = text.substr(0, eol);
    if (header.substr(0, kFileMagic.size()) != kFileMagic) throw FormatError("bad orientation file header");
    const auto dim_text = std::string(header.substr(kFileMagic.size()));
    if (dim_text.empty() || dim_text.find_first_not_of("0123456789") != std::string::npos) {
        throw FormatError("bad dimension in header: '" + dim_text + "'");
    }
    const int d = std::stoi(dim_text);

    auto body = text.substr(eol + 1);
    const auto body_end = body.find('\n');
    if (body_end == std::string_view::npos) throw FormatError("hex payload must be newline-terminated");
    if (body.substr(body_end + 1).find_first_not_of("\r\n") != std::string_view::npos) {
        throw FormatError("trailing data after hex payload");
    }
    body = body.substr(0, body_end);
    if (!body.empty() && body.back() == '\r') body.remove_suffix(1);
    if (body.size() % 2 != 0) throw FormatError("odd number of hex digits");

    auto nibble = [](char c) -> std::uint8_t {
        if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
        if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
        if (c >= 'A' && c <= 'F') return static_cast<std::uint8_t>(c - 'A' + 10);
        throw FormatError(std::string("invalid hex digit '") + c + "'");
    };
    std::vector<std::uint8_t> bytes;
    bytes.reserve(body.size() / 2);
    for (std::size_t i = 0; i < body.size(); i += 2) {
        bytes.push_back(static_cast<std::uint8_t>((nibble(body[i]) << 4) | nibble(body[i + 1])));
    }
    return deserialize(bytes, d);
}

inline void write_orientation_file(const std::string& path, const Orientation& o) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    out << to_file_text(o);
    if (!out) throw InputError("failed writing '" + path + "'");
}

inline Orientation read_orientation_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_file_text(buf.str());
}

}  // namespace cubeorient
