#pragma once

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "mgof/graph/mdag.hpp"

namespace mgof::graph {

struct GraphFile {
    MDag graph;
    std::optional<std::vector<std::size_t>> order;
};

// {"variables": [...], "edges": [["X1","X2"], ...], "bidirected": [...],
//  "undirected": [...], "order": [...]}. Only "variables" is required.
// Throws std::invalid_argument on malformed input or unknown vertex names.
// The graph is not validated; call validate_mdag for that.
GraphFile parse_graph_json(std::string_view text);
GraphFile read_graph_file(const std::filesystem::path& path);

std::vector<std::size_t> parse_order(const MDag& g, const std::vector<std::string>& names);

}  // namespace mgof::graph
