#include "mgof/graph/graph_json.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mgof::graph {

namespace {

using nlohmann::json;

std::vector<std::pair<Vertex, Vertex>> read_pairs(const json& doc, const char* key, const MDag& names) {
    std::vector<std::pair<Vertex, Vertex>> out;
    if (!doc.contains(key)) return out;
    const auto& list = doc.at(key);
    if (!list.is_array()) throw std::invalid_argument(std::string("'") + key + "' must be a list");
    for (const auto& item : list) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_string() || !item[1].is_string())
            throw std::invalid_argument(std::string("entries of '") + key + "' must be pairs of vertex names");
        out.emplace_back(names.vertex(item[0].get<std::string>()), names.vertex(item[1].get<std::string>()));
    }
    return out;
}

}  // namespace

std::vector<std::size_t> parse_order(const MDag& g, const std::vector<std::string>& names) {
    std::vector<std::size_t> order;
    for (const auto& n : names) {
        auto idx = g.variable_index(n);
        if (!idx) throw std::invalid_argument("order names unknown variable '" + n + "'");
        if (std::find(order.begin(), order.end(), *idx) != order.end())
            throw std::invalid_argument("order lists '" + n + "' twice");
        order.push_back(*idx);
    }
    if (order.size() != g.variable_count())
        throw std::invalid_argument("order must list every variable exactly once");
    return order;
}

GraphFile parse_graph_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("graph JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("variables") || !doc["variables"].is_array())
        throw std::invalid_argument("graph JSON needs a 'variables' list");
    std::vector<std::string> variables;
    for (const auto& v : doc["variables"]) {
        if (!v.is_string()) throw std::invalid_argument("variable names must be strings");
        variables.push_back(v.get<std::string>());
    }
    const MDag names(variables);

    std::vector<Edge> edges;
    for (auto [a, b] : read_pairs(doc, "edges", names)) edges.push_back({a, b});
    std::vector<VertexPair> bidirected;
    for (auto [a, b] : read_pairs(doc, "bidirected", names)) bidirected.emplace_back(a, b);
    std::vector<VertexPair> undirected;
    for (auto [a, b] : read_pairs(doc, "undirected", names)) undirected.emplace_back(a, b);

    GraphFile out{MDag(std::move(variables), std::move(edges), std::move(bidirected), std::move(undirected)),
                  std::nullopt};
    if (doc.contains("order")) {
        if (!doc["order"].is_array()) throw std::invalid_argument("'order' must be a list");
        out.order = parse_order(out.graph, doc["order"].get<std::vector<std::string>>());
    }
    return out;
}

GraphFile read_graph_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open graph file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph_json(buf.str());
}

}  // namespace mgof::graph
