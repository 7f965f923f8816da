#pragma once

#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <vector>

#include "milnor/graph.hpp"

namespace milnor {

/// A vertex bijection; vertex i is sent to images[i].
struct VertexPermutation {
    std::vector<VertexId> images;

    static VertexPermutation identity(std::size_t r) {
        VertexPermutation p;
        p.images.resize(r);
        std::iota(p.images.begin(), p.images.end(), VertexId{0});
        return p;
    }

    std::size_t size() const { return images.size(); }
    VertexId operator()(VertexId i) const { return images.at(i); }

    /// (this * other)(i) = this(other(i))
    VertexPermutation after(const VertexPermutation& other) const {
        VertexPermutation p;
        p.images.reserve(other.size());
        for (VertexId i : other.images) p.images.push_back(images.at(i));
        return p;
    }

    VertexPermutation inverse() const {
        VertexPermutation p;
        p.images.resize(size());
        for (VertexId i = 0; i < size(); ++i) p.images.at(images[i]) = i;
        return p;
    }

    bool is_bijection() const {
        std::vector<bool> hit(size(), false);
        for (VertexId i : images) {
            if (i >= size() || hit[i]) return false;
            hit[i] = true;
        }
        return true;
    }

    friend bool operator==(const VertexPermutation&, const VertexPermutation&) = default;
    friend auto operator<=>(const VertexPermutation&, const VertexPermutation&) = default;
};

namespace detail {

/// Backtracking search for label- and multiplicity-preserving bijections from
/// graph A to graph B. Candidates are pruned by label class and valency, then
/// by multiplicity agreement with every already-placed vertex. The visitor
/// returns false to stop the search.
template <class Label>
void for_each_isomorphism(std::span<const Label> labels_a, const std::function<std::int64_t(VertexId, VertexId)>& mult_a,
                          std::span<const Label> labels_b, const std::function<std::int64_t(VertexId, VertexId)>& mult_b,
                          const std::function<bool(const VertexPermutation&)>& visit) {
    const std::size_t r = labels_a.size();
    if (labels_b.size() != r) return;
    auto valency_of = [r](const auto& mult) {
        std::vector<std::int64_t> out(r, 0);
        for (VertexId i = 0; i < r; ++i)
            for (VertexId j = 0; j < r; ++j)
                if (i != j) out[i] += mult(i, j);
        return out;
    };
    const auto val_a = valency_of(mult_a);
    const auto val_b = valency_of(mult_b);

    VertexPermutation current;
    current.images.assign(r, 0);
    std::vector<bool> used(r, false);
    bool stop = false;

    std::function<void(VertexId)> place = [&](VertexId i) {
        if (stop) return;
        if (i == r) {
            if (!visit(current)) stop = true;
            return;
        }
        for (VertexId j = 0; j < r && !stop; ++j) {
            if (used[j] || !(labels_a[i] == labels_b[j]) || val_a[i] != val_b[j]) continue;
            bool ok = true;
            for (VertexId k = 0; k < i && ok; ++k) ok = mult_a(i, k) == mult_b(j, current.images[k]);
            if (!ok) continue;
            used[j] = true;
            current.images[i] = j;
            place(i + 1);
            used[j] = false;
        }
    };
    place(0);
}

}  // namespace detail

/// True when p maps weights and edge multiplicities of g onto themselves.
inline bool is_automorphism(const PlumbingGraph& g, const VertexPermutation& p) {
    if (p.size() != g.size() || !p.is_bijection()) return false;
    for (VertexId i = 0; i < g.size(); ++i) {
        if (g.vertex(i) != g.vertex(p(i))) return false;
        for (VertexId j = 0; j < g.size(); ++j)
            if (g.edge_multiplicity(i, j) != g.edge_multiplicity(p(i), p(j))) return false;
    }
    return true;
}

/// Full automorphism group of the weighted graph, in lexicographic order of
/// image vectors (the identity comes first).
inline std::vector<VertexPermutation> automorphism_group(const PlumbingGraph& g) {
    std::vector<VertexPermutation> group;
    auto mult = [&g](VertexId i, VertexId j) { return g.edge_multiplicity(i, j); };
    detail::for_each_isomorphism<Vertex>(g.vertices(), mult, g.vertices(), mult, [&](const VertexPermutation& p) {
        group.push_back(p);
        return true;
    });
    return group;
}

}  // namespace milnor
