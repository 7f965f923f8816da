#pragma once

// Plumbing graphs: weighted dual graphs of good resolutions of normal surface
// singularities, their intersection forms, and the adjunction bookkeeping.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "milnor/error.hpp"
#include "milnor/exact.hpp"

namespace milnor {

using VertexId = std::size_t;

struct Vertex {
    std::int64_t genus = 0;
    std::int64_t euler = 0;

    friend bool operator==(const Vertex&, const Vertex&) = default;
    friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

/// Unvalidated graph data as read from a file or assembled by hand.
struct RawGraph {
    struct RawVertex {
        std::int64_t id = 0;
        std::int64_t genus = 0;
        std::int64_t euler = 0;
    };
    std::vector<RawVertex> vertices;
    std::vector<std::pair<std::int64_t, std::int64_t>> edges;
};

class PlumbingGraph;
PlumbingGraph validate_graph(const RawGraph& raw);

/// A connected loop-free multigraph whose vertices carry (genus, Euler number).
/// Only obtainable through validate_graph, so every instance is valid.
class PlumbingGraph {
public:
    std::size_t size() const { return vertices_.size(); }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const Vertex& vertex(VertexId i) const { return vertices_.at(i); }

    /// Edges in input order, each stored as (smaller id, larger id). Repeated
    /// pairs are multi-edges.
    const std::vector<std::pair<VertexId, VertexId>>& edges() const { return edges_; }

    std::int64_t edge_multiplicity(VertexId i, VertexId j) const { return multiplicity_.at(i * size() + j); }

    friend bool operator==(const PlumbingGraph& a, const PlumbingGraph& b) {
        return a.vertices_ == b.vertices_ && a.multiplicity_ == b.multiplicity_;
    }

private:
    friend PlumbingGraph validate_graph(const RawGraph& raw);
    PlumbingGraph() = default;

    std::vector<Vertex> vertices_;
    std::vector<std::pair<VertexId, VertexId>> edges_;
    std::vector<std::int64_t> multiplicity_;  // r x r, symmetric, zero diagonal
};

inline PlumbingGraph validate_graph(const RawGraph& raw) {
    const std::size_t r = raw.vertices.size();
    if (r == 0) throw Error(ErrorCode::Disconnected, "graph has no vertices");

    std::vector<const RawGraph::RawVertex*> by_id(r, nullptr);
    for (const auto& v : raw.vertices) {
        if (v.id < 0 || static_cast<std::uint64_t>(v.id) >= r) {
            throw Error(ErrorCode::NonContiguousIds,
                        "vertex id " + std::to_string(v.id) + " outside 0.." + std::to_string(r - 1));
        }
        auto& slot = by_id[static_cast<std::size_t>(v.id)];
        if (slot != nullptr) throw Error(ErrorCode::NonContiguousIds, "duplicate vertex id " + std::to_string(v.id));
        slot = &v;
    }

    PlumbingGraph g;
    g.vertices_.reserve(r);
    for (std::size_t i = 0; i < r; ++i) {
        if (by_id[i]->genus < 0) {
            throw Error(ErrorCode::NegativeGenus,
                        "vertex " + std::to_string(i) + " has genus " + std::to_string(by_id[i]->genus));
        }
        g.vertices_.push_back({by_id[i]->genus, by_id[i]->euler});
    }

    g.multiplicity_.assign(r * r, 0);
    for (std::size_t k = 0; k < raw.edges.size(); ++k) {
        const auto [a, b] = raw.edges[k];
        const std::string label = "edge #" + std::to_string(k) + " [" + std::to_string(a) + "," + std::to_string(b) + "]";
        if (a < 0 || b < 0 || static_cast<std::uint64_t>(a) >= r || static_cast<std::uint64_t>(b) >= r) {
            throw Error(ErrorCode::NonContiguousIds, label + " references an unknown vertex");
        }
        if (a == b) throw Error(ErrorCode::LoopEdge, label + " joins vertex " + std::to_string(a) + " to itself");
        const auto i = static_cast<VertexId>(std::min(a, b));
        const auto j = static_cast<VertexId>(std::max(a, b));
        g.edges_.emplace_back(i, j);
        ++g.multiplicity_[i * r + j];
        ++g.multiplicity_[j * r + i];
    }

    // connectivity by flood fill from vertex 0
    std::vector<bool> seen(r, false);
    std::vector<VertexId> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        for (VertexId w = 0; w < r; ++w) {
            if (!seen[w] && g.multiplicity_[v * r + w] > 0) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    for (VertexId v = 0; v < r; ++v) {
        if (!seen[v]) throw Error(ErrorCode::Disconnected, "vertex " + std::to_string(v) + " is not reachable from vertex 0");
    }
    return g;
}

/// Convenience constructor used throughout tests and tools: ids are positions.
inline PlumbingGraph make_graph(std::span<const Vertex> vertices, std::span<const std::pair<VertexId, VertexId>> edges) {
    RawGraph raw;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        raw.vertices.push_back({static_cast<std::int64_t>(i), vertices[i].genus, vertices[i].euler});
    }
    for (const auto& [a, b] : edges) raw.edges.emplace_back(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b));
    return validate_graph(raw);
}

inline PlumbingGraph make_graph(std::initializer_list<Vertex> vertices,
                                std::initializer_list<std::pair<VertexId, VertexId>> edges) {
    return make_graph(std::span<const Vertex>(vertices.begin(), vertices.size()),
                      std::span<const std::pair<VertexId, VertexId>>(edges.begin(), edges.size()));
}

/// Returns the graph in which old vertex i becomes vertex images[i].
inline PlumbingGraph relabel(const PlumbingGraph& g, std::span<const VertexId> images) {
    if (images.size() != g.size()) throw Error(ErrorCode::DimensionMismatch, "relabeling has wrong length");
    std::vector<Vertex> vertices(g.size());
    for (VertexId i = 0; i < g.size(); ++i) vertices.at(images[i]) = g.vertex(i);
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (const auto& [a, b] : g.edges()) edges.emplace_back(images[a], images[b]);
    return make_graph(vertices, edges);
}

/// I(G): diagonal entries are the Euler numbers, off-diagonal entries are edge
/// multiplicities. Symmetric by construction.
class IntersectionMatrix {
public:
    IntersectionMatrix() = default;
    explicit IntersectionMatrix(std::size_t r) : r_(r), entries_(r * r, 0) {}

    std::size_t size() const { return r_; }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return entries_.at(i * r_ + j); }
    std::int64_t& operator()(std::size_t i, std::size_t j) { return entries_.at(i * r_ + j); }

    DenseMatrix<Integer> to_integer() const {
        DenseMatrix<Integer> out(r_, std::vector<Integer>(r_));
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < r_; ++j) out[i][j] = (*this)(i, j);
        return out;
    }

    friend bool operator==(const IntersectionMatrix&, const IntersectionMatrix&) = default;

private:
    std::size_t r_ = 0;
    std::vector<std::int64_t> entries_;
};

inline IntersectionMatrix intersection_matrix(const PlumbingGraph& g) {
    IntersectionMatrix m(g.size());
    for (VertexId i = 0; i < g.size(); ++i) {
        for (VertexId j = 0; j < g.size(); ++j) m(i, j) = i == j ? g.vertex(i).euler : g.edge_multiplicity(i, j);
    }
    return m;
}

inline bool is_negative_definite(const IntersectionMatrix& m) { return symmetric_negative_definite(m.to_integer()); }

/// Grauert: a plumbed 3-manifold bounds a normal surface singularity iff its
/// (connected) plumbing graph has negative definite intersection form.
inline bool is_milnor_fillable(const PlumbingGraph& g) { return is_negative_definite(intersection_matrix(g)); }

/// v_i = E_i.(E - E_i): edge ends at i, counted with multiplicity.
inline std::int64_t valency(const PlumbingGraph& g, VertexId i) {
    if (i >= g.size()) throw Error(ErrorCode::InvalidArgument, "vertex " + std::to_string(i) + " out of range");
    std::int64_t total = 0;
    for (VertexId j = 0; j < g.size(); ++j) total += g.edge_multiplicity(i, j);
    return total;
}

/// K.E_i = 2g_i - 2 - e_i (adjunction).
inline std::int64_t canonical_degree(const PlumbingGraph& g, VertexId i) {
    const Vertex& v = g.vertex(i);
    return 2 * v.genus - 2 - v.euler;
}

}  // namespace milnor
