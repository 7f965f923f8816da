#pragma once

// The ubiquitous Milnor open book of a Milnor fillable plumbed 3-manifold,
// described combinatorially by its decorated link graph.

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "milnor/automorphism.hpp"
#include "milnor/divisor.hpp"
#include "milnor/graph.hpp"

namespace milnor {

/// A plumbing graph with n_i arrowheads (binding circles, each a generic
/// fiber over E_i) at vertex i. Arrowheads at one vertex are unordered.
struct DecoratedLinkGraph {
    PlumbingGraph base;
    std::vector<std::int64_t> arrowheads;

    std::int64_t binding_components() const { return std::accumulate(arrowheads.begin(), arrowheads.end(), std::int64_t{0}); }
    bool has_bare_vertex() const {
        for (auto n : arrowheads)
            if (n == 0) return true;
        return false;
    }
};

inline DecoratedLinkGraph decorate(const PlumbingGraph& g, const MultiplicityVector& n) {
    if (n.n.size() != g.size()) throw Error(ErrorCode::DimensionMismatch, "arrowhead vector length differs from vertex count");
    for (std::size_t i = 0; i < n.n.size(); ++i) {
        if (n.n[i] < 0) {
            throw Error(ErrorCode::InvalidArgument, "vertex " + std::to_string(i) + " has " + std::to_string(n.n[i]) + " arrowheads");
        }
    }
    DecoratedLinkGraph out{g, n.n};
    if (out.binding_components() == 0) throw Error(ErrorCode::AllZero, "no binding components");
    return out;
}

struct DecoratedLabel {
    Vertex weights;
    std::int64_t arrows = 0;
    friend bool operator==(const DecoratedLabel&, const DecoratedLabel&) = default;
};

struct DecoratedComparison {
    bool isomorphic = false;
    /// Some vertex carries no arrowhead. The open book is then not determined
    /// by the decorated graph alone, so a positive answer is weaker.
    bool bare_vertices = false;
};

inline DecoratedComparison compare_decorated(const DecoratedLinkGraph& a, const DecoratedLinkGraph& b) {
    DecoratedComparison out;
    out.bare_vertices = a.has_bare_vertex() || b.has_bare_vertex();
    if (a.base.size() != b.base.size() || a.base.edges().size() != b.base.edges().size()) return out;
    auto labels = [](const DecoratedLinkGraph& d) {
        std::vector<DecoratedLabel> out;
        for (VertexId i = 0; i < d.base.size(); ++i) out.push_back({d.base.vertex(i), d.arrowheads.at(i)});
        return out;
    };
    const auto la = labels(a);
    const auto lb = labels(b);
    detail::for_each_isomorphism<DecoratedLabel>(
        la, [&a](VertexId i, VertexId j) { return a.base.edge_multiplicity(i, j); }, lb,
        [&b](VertexId i, VertexId j) { return b.base.edge_multiplicity(i, j); },
        [&out](const VertexPermutation&) {
            out.isomorphic = true;
            return false;
        });
    return out;
}

inline bool decorated_isomorphic(const DecoratedLinkGraph& a, const DecoratedLinkGraph& b) {
    return compare_decorated(a, b).isomorphic;
}

struct OpenBookReport {
    struct VertexRow {
        std::int64_t valency = 0;
        std::int64_t genus = 0;
        std::int64_t euler = 0;
        std::int64_t multiplicity = 0;  // m_i
        std::int64_t arrows = 0;        // n_i
        std::int64_t slack = 0;
    };

    DecoratedLinkGraph graph;
    Divisor divisor;
    std::int64_t binding_components = 0;
    std::vector<VertexRow> per_vertex;
    bool fillable = false;
    bool aut_invariant = false;
    std::size_t automorphism_count = 0;
    std::string commentary;
};

/// fillability -> least admissible divisor -> binding multiplicities ->
/// decorated graph, with the automorphism-invariance certificate.
inline OpenBookReport ubiquitous_open_book(const PlumbingGraph& g, const DescentOptions& options = {}) {
    if (!is_milnor_fillable(g)) {
        throw Error(ErrorCode::NotMilnorFillable, "intersection form is not negative definite; no Milnor filling exists");
    }
    const Divisor d = minimal_divisor(g, options);
    const DivisorReport check = check_theorem_conditions(g, d);
    if (!check.conditions_hold()) throw std::logic_error("least admissible divisor fails its own constraints");

    const auto group = automorphism_group(g);
    OpenBookReport report{decorate(g, check.multiplicities), d, 0, {}, true, false, 0, {}};
    report.binding_components = report.graph.binding_components();
    report.aut_invariant = is_invariant(d, group);
    report.automorphism_count = group.size();
    for (VertexId i = 0; i < g.size(); ++i) {
        report.per_vertex.push_back({valency(g, i), g.vertex(i).genus, g.vertex(i).euler, d.m[i], check.multiplicities.n[i],
                                     check.slack[i]});
    }
    report.commentary =
        "every vertex carries at least one binding component, so all horizontal open books with this binding "
        "are isomorphic and this one is realised as a Milnor open book in every Milnor filling";
    return report;
}

}  // namespace milnor
