#pragma once

#include <random>
#include <utility>
#include <vector>

#include "milnor/divisor.hpp"
#include "milnor/exact.hpp"
#include "milnor/graph.hpp"
#include "oracles.hpp"

namespace fixtures {

using milnor::make_graph;
using milnor::PlumbingGraph;
using milnor::Vertex;
using milnor::VertexId;

inline PlumbingGraph single(std::int64_t genus, std::int64_t euler) { return make_graph({{genus, euler}}, {}); }

inline PlumbingGraph chain2(std::int64_t e0, std::int64_t e1) { return make_graph({{0, e0}, {0, e1}}, {{0, 1}}); }

inline PlumbingGraph double_edge(std::int64_t e0, std::int64_t e1) { return make_graph({{0, e0}, {0, e1}}, {{0, 1}, {0, 1}}); }

/// Center 0 with legs 1, 2, 3; all rational (-2)-curves.
inline PlumbingGraph d4_star() { return make_graph({{0, -2}, {0, -2}, {0, -2}, {0, -2}}, {{0, 1}, {0, 2}, {0, 3}}); }

/// E8: chain 0-1-2-3-4-5-6 with vertex 7 hanging off vertex 2 (arms 2, 4, 1).
inline PlumbingGraph e8() {
    std::vector<Vertex> v(8, Vertex{0, -2});
    std::vector<std::pair<VertexId, VertexId>> e{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 7}};
    return make_graph(v, e);
}

inline oracle::Matrix dense_matrix(const PlumbingGraph& g) {
    oracle::Matrix m(g.size(), std::vector<std::int64_t>(g.size()));
    for (VertexId i = 0; i < g.size(); ++i)
        for (VertexId j = 0; j < g.size(); ++j) m[i][j] = i == j ? g.vertex(i).euler : g.edge_multiplicity(i, j);
    return m;
}

inline oracle::WeightedGraph weighted(const PlumbingGraph& g) {
    oracle::WeightedGraph w;
    for (const auto& v : g.vertices()) {
        w.genus.push_back(v.genus);
        w.euler.push_back(v.euler);
    }
    w.mult = dense_matrix(g);
    for (VertexId i = 0; i < g.size(); ++i) w.mult[i][i] = 0;
    return w;
}

/// Random connected graph: a random spanning tree plus extra random edges.
inline PlumbingGraph random_graph(std::mt19937_64& rng, std::size_t r, std::int64_t euler_lo, std::int64_t euler_hi,
                                  std::int64_t max_genus, std::size_t extra_edges) {
    std::uniform_int_distribution<std::int64_t> euler(euler_lo, euler_hi);
    std::uniform_int_distribution<std::int64_t> genus(0, max_genus);
    std::vector<Vertex> vertices;
    for (std::size_t i = 0; i < r; ++i) vertices.push_back({genus(rng), euler(rng)});
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (VertexId i = 1; i < r; ++i) edges.emplace_back(std::uniform_int_distribution<VertexId>(0, i - 1)(rng), i);
    if (r >= 2) {
        std::uniform_int_distribution<VertexId> pick(0, r - 1);
        for (std::size_t k = 0; k < extra_edges; ++k) {
            const VertexId a = pick(rng);
            VertexId b = pick(rng);
            if (a == b) b = (a + 1) % r;
            edges.emplace_back(a, b);
        }
    }
    return make_graph(vertices, edges);
}

inline std::vector<VertexId> random_permutation(std::mt19937_64& rng, std::size_t r) {
    std::vector<VertexId> p(r);
    for (VertexId i = 0; i < r; ++i) p[i] = i;
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

/// A search box certain to contain the least admissible divisor, given any
/// admissible candidate: every admissible D satisfies -I D >= -c, and (-I)^-1
/// is entrywise non-negative, so D >= I^-1 c; the least one is <= candidate.
struct Box {
    std::vector<std::int64_t> lower;
    std::vector<std::int64_t> upper;
};

inline Box sound_box(const PlumbingGraph& g, const std::vector<std::int64_t>& candidate) {
    const auto im = dense_matrix(g);
    const auto c = milnor::constraint_vector(g).c;
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::int64_t dot = 0;
        for (std::size_t j = 0; j < g.size(); ++j) dot += im[i][j] * candidate[j];
        if (dot > c[i]) throw std::logic_error("candidate is not admissible");
    }
    milnor::DenseMatrix<milnor::Rational> a(g.size(), std::vector<milnor::Rational>(g.size()));
    std::vector<milnor::Rational> b(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) a[i][j] = im[i][j];
        b[i] = c[i];
    }
    const auto relaxed = milnor::solve_exact(a, b).value();
    Box box{{}, candidate};
    for (const auto& q : relaxed) {
        milnor::Integer ceiling = numerator(q) / denominator(q);
        if (ceiling * denominator(q) < numerator(q)) ++ceiling;
        box.lower.push_back(std::max<std::int64_t>(0, static_cast<std::int64_t>(ceiling)));
    }
    return box;
}

inline milnor::Divisor oracle_in_sound_box(const PlumbingGraph& g, const std::vector<std::int64_t>& candidate) {
    const Box box = sound_box(g, candidate);
    return milnor::oracle_minimal_divisor_in_box(g, box.lower, box.upper);
}

}  // namespace fixtures
