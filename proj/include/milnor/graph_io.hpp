#pragma once

// Graph documents:
//   {"vertices": [{"id": 0, "genus": 0, "euler": -2}, ...],
//    "edges": [[0, 1], [0, 1], ...]}
// Repeated pairs are multi-edges. Writing orders vertices by id.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "milnor/error.hpp"
#include "milnor/graph.hpp"

namespace milnor {

namespace detail {

inline std::string line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

inline std::int64_t integer_field(const nlohmann::json& node, const char* key, const std::string& where) {
    if (!node.is_object() || !node.contains(key)) throw Error(ErrorCode::ParseError, where + ": missing integer field \"" + key + "\"");
    const auto& value = node.at(key);
    if (!value.is_number_integer()) throw Error(ErrorCode::ParseError, where + ": field \"" + key + "\" is not an integer");
    return value.get<std::int64_t>();
}

}  // namespace detail

inline RawGraph parse_raw_graph(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        throw Error(ErrorCode::ParseError, detail::line_column(text, byte) + ": " + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::ParseError, "top level must be an object");
    if (!doc.contains("vertices") || !doc.at("vertices").is_array()) throw Error(ErrorCode::ParseError, "missing array \"vertices\"");
    if (!doc.contains("edges") || !doc.at("edges").is_array()) throw Error(ErrorCode::ParseError, "missing array \"edges\"");

    RawGraph raw;
    std::size_t k = 0;
    for (const auto& v : doc.at("vertices")) {
        const std::string where = "vertices[" + std::to_string(k++) + "]";
        raw.vertices.push_back(
            {detail::integer_field(v, "id", where), detail::integer_field(v, "genus", where), detail::integer_field(v, "euler", where)});
    }
    k = 0;
    for (const auto& e : doc.at("edges")) {
        const std::string where = "edges[" + std::to_string(k++) + "]";
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
            throw Error(ErrorCode::ParseError, where + ": expected a pair of integers");
        }
        raw.edges.emplace_back(e[0].get<std::int64_t>(), e[1].get<std::int64_t>());
    }
    return raw;
}

inline PlumbingGraph parse_graph(const std::string& text) { return validate_graph(parse_raw_graph(text)); }

inline PlumbingGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_graph(buffer.str());
}

inline nlohmann::json graph_to_json(const PlumbingGraph& g) {
    nlohmann::json vertices = nlohmann::json::array();
    for (VertexId i = 0; i < g.size(); ++i) {
        vertices.push_back({{"id", i}, {"genus", g.vertex(i).genus}, {"euler", g.vertex(i).euler}});
    }
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
    return {{"vertices", vertices}, {"edges", edges}};
}

inline std::string write_graph(const PlumbingGraph& g) { return graph_to_json(g).dump(2) + "\n"; }

}  // namespace milnor
