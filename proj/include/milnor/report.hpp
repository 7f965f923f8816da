#pragma once

// Structured documents for every report type, and a plain-text rendering of
// the same documents so both output formats share one source of truth.

#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "milnor/contact/checks.hpp"
#include "milnor/divisor.hpp"
#include "milnor/graph_io.hpp"
#include "milnor/openbook.hpp"

#ifndef MILNOR_VERSION
#define MILNOR_VERSION "unknown"
#endif

namespace milnor {

using Json = nlohmann::ordered_json;

inline const char* version() { return MILNOR_VERSION; }

inline Json to_json(const DivisorReport& r) {
    return Json{{"divisor", r.divisor.m},
                {"multiplicities", r.multiplicities.n},
                {"slack", r.slack},
                {"aut_invariant", r.aut_invariant},
                {"zero_divisor", r.zero_divisor},
                {"slack_nonnegative", r.slack_nonnegative},
                {"multiplicities_positive", r.multiplicities_positive}};
}

inline std::string vertex_label(const PlumbingGraph& g, VertexId i, std::int64_t arrows) {
    return "(" + std::to_string(g.vertex(i).genus) + ", " + std::to_string(g.vertex(i).euler) + ", " + std::to_string(arrows) + ")";
}

/// Vertices with "(genus, euler, arrows)" labels plus the edge list.
inline Json graph_description(const DecoratedLinkGraph& d) {
    Json vertices = Json::array();
    for (VertexId i = 0; i < d.base.size(); ++i) {
        vertices.push_back({{"id", i}, {"label", vertex_label(d.base, i, d.arrowheads[i])}});
    }
    Json edges = Json::array();
    for (const auto& [a, b] : d.base.edges()) edges.push_back(Json::array({a, b}));
    return Json{{"vertices", vertices}, {"edges", edges}, {"binding_components", d.binding_components()}};
}

inline Json to_json(const OpenBookReport& r) {
    Json rows = Json::array();
    for (VertexId i = 0; i < r.per_vertex.size(); ++i) {
        const auto& row = r.per_vertex[i];
        rows.push_back({{"vertex", i},
                        {"valency", row.valency},
                        {"genus", row.genus},
                        {"euler", row.euler},
                        {"multiplicity", row.multiplicity},
                        {"arrows", row.arrows},
                        {"slack", row.slack}});
    }
    return Json{{"fillable", r.fillable},
                {"divisor", r.divisor.m},
                {"multiplicities", r.graph.arrowheads},
                {"binding_components", r.binding_components},
                {"per_vertex", rows},
                {"aut_invariant", r.aut_invariant},
                {"automorphism_count", r.automorphism_count},
                {"bare_vertices", r.graph.has_bare_vertex()},
                {"decorated_graph", graph_description(r.graph)},
                {"commentary", r.commentary}};
}

namespace contact {

/// Infinite extrema (empty sets) serialize as null.
inline Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

inline Json to_json(const SpshReport& r) {
    return Json{{"samples", r.samples}, {"trials_per_sample", r.trials}, {"min_levi_quotient", number(r.min_quotient)},
                {"min_metric_eigenvalue", number(r.min_eigenvalue)}};
}

inline Json to_json(const AdaptationReport& r) {
    return Json{{"c", r.c},
                {"verified", r.verified},
                {"m", r.m},
                {"k", number(r.k)},
                {"eta", r.eta},
                {"max_modulus_squared", r.max_modulus2},
                {"mesh_points", r.mesh},
                {"region_points", r.region},
                {"nonpositive_points", r.nonpositive},
                {"min_dtheta_reeb", number(r.min_d_theta_reeb)},
                {"min_dtheta_rescaled_reeb", number(r.min_d_theta_rescaled)}};
}

inline Json to_json(const LambdaConeReport& r) {
    Json out{{"samples", r.samples},
             {"on_binding", r.on_binding},
             {"proportionality_tolerance", r.tolerance},
             {"qualifying", r.qualifying},
             {"min_proportionality_ratio", number(r.min_proportionality)}};
    if (r.qualifying == 0) {
        out["status"] = "no near-proportional samples";
    } else {
        out["min_re_lambda"] = r.min_re_lambda;
        out["max_abs_arg_lambda"] = r.max_abs_arg;
        out["all_re_lambda_positive"] = r.all_positive;
    }
    return out;
}

inline Json to_json(const CriterionReport& r) {
    return Json{{"eta", r.eta},
                {"max_modulus", r.max_modulus},
                {"mesh_points", r.mesh},
                {"points_with_modulus_at_least_eta", r.outer_points},
                {"points_with_modulus_at_most_eta", r.inner_points},
                {"min_dtheta_on_level", r.outer_vacuous() ? Json("vacuous") : number(r.min_d_theta)},
                {"min_df_on_level", r.inner_vacuous() ? Json("vacuous") : number(r.min_df)},
                {"criterion_holds", r.holds()}};
}

}  // namespace contact

namespace detail {

inline void render(const Json& node, const std::string& indent, std::ostringstream& out) {
    for (auto it = node.begin(); it != node.end(); ++it) {
        const Json& value = it.value();
        const bool nested_array = value.is_array() && !value.empty() && value.front().is_structured() &&
                                  !(value.front().is_array() && !value.front().empty() && value.front().front().is_primitive());
        if (value.is_object()) {
            out << indent << it.key() << ":\n";
            render(value, indent + "  ", out);
        } else if (nested_array) {
            out << indent << it.key() << ":\n";
            for (const auto& item : value) {
                out << indent << "  -\n";
                render(item, indent + "    ", out);
            }
        } else if (value.is_string()) {
            out << indent << it.key() << ": " << value.get<std::string>() << "\n";
        } else {
            out << indent << it.key() << ": " << value.dump() << "\n";
        }
    }
}

}  // namespace detail

/// "key: value" lines, nested objects indented.
inline std::string render_text(const Json& doc) {
    std::ostringstream out;
    detail::render(doc, "", out);
    return out.str();
}

}  // namespace milnor
