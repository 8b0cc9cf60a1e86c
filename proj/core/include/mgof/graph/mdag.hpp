#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mgof/graph/mixed_graph.hpp"

namespace mgof::graph {

enum class VertexKind : std::uint8_t { substantive, indicator, proxy };

// X_k, R_k or X*_k for the variable at position `index`.
struct Vertex {
    VertexKind kind = VertexKind::substantive;
    std::size_t index = 0;

    static constexpr Vertex x(std::size_t k) { return {VertexKind::substantive, k}; }
    static constexpr Vertex r(std::size_t k) { return {VertexKind::indicator, k}; }
    static constexpr Vertex proxy(std::size_t k) { return {VertexKind::proxy, k}; }

    auto operator<=>(const Vertex&) const = default;
};

struct Edge {
    Vertex from;
    Vertex to;
    auto operator<=>(const Edge&) const = default;
};

// Unordered pair; constructors normalise so that first <= second.
struct VertexPair {
    Vertex first;
    Vertex second;
    VertexPair() = default;
    VertexPair(Vertex a, Vertex b) : first(a < b ? a : b), second(a < b ? b : a) {}
    auto operator<=>(const VertexPair&) const = default;
};

class UnknownVertex : public std::invalid_argument {
public:
    explicit UnknownVertex(const std::string& name)
        : std::invalid_argument("unknown vertex '" + name + "'") {}
};

// Missing-data DAG over substantive variables X, indicators R and proxies X*.
//
// The deterministic edges X_k -> X*_k <- R_k are implicit and never appear
// in edges(). Values are immutable; intervene() returns a new graph.
//
// Naming: a variable "X1" has indicator "R1" and proxy "X1*". A variable
// whose name does not start with 'X' (e.g. "age") gets indicator "R_age".
class MDag {
public:
    MDag() = default;
    explicit MDag(std::vector<std::string> variables,
                  std::vector<Edge> edges = {},
                  std::vector<VertexPair> bidirected = {},
                  std::vector<VertexPair> undirected = {});

    std::size_t variable_count() const noexcept { return variables_.size(); }
    const std::vector<std::string>& variables() const noexcept { return variables_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<VertexPair>& bidirected() const noexcept { return bidirected_; }
    // Chain-graph lines R_i - R_j (no self-censoring encodings); only
    // count_parameters understands them.
    const std::vector<VertexPair>& undirected() const noexcept { return undirected_; }
    const std::vector<std::size_t>& fixed() const noexcept { return fixed_; }
    bool is_fixed(std::size_t k) const;

    std::string name(Vertex v) const;
    std::optional<Vertex> find(std::string_view name) const;
    Vertex vertex(std::string_view name) const;  // throws UnknownVertex
    std::optional<std::size_t> variable_index(std::string_view name) const;

    bool has_edge(Vertex from, Vertex to) const;
    // Parents among user edges plus the implicit proxy parents.
    std::vector<Vertex> parents(Vertex v) const;

    // Graph surgery do(R_k = 1) for every k in `indicators`: edges into the
    // fixed indicators are dropped. Merging X_k with X*_k happens when the
    // graph is lowered with to_mixed_graph().
    MDag intervene(std::span<const std::size_t> indicators) const;
    MDag with_edges(std::span<const Edge> extra) const;

    // Vertex ids: X_k -> k, R_k -> K + k, X*_k -> 2K + k.
    std::size_t id(Vertex v) const;
    Vertex from_id(std::size_t id) const;

    // Lowers to an integer graph. For fixed k, X*_k is merged into X_k
    // (its out-edges leave from X_k) and the X*_k id stays isolated.
    MixedGraph to_mixed_graph() const;
    // Maps a vertex to the id it occupies after merging.
    std::size_t merged_id(Vertex v) const;

private:
    std::vector<std::string> variables_;
    std::vector<Edge> edges_;
    std::vector<VertexPair> bidirected_;
    std::vector<VertexPair> undirected_;
    std::vector<std::size_t> fixed_;
};

std::string indicator_name(std::string_view variable);
std::string proxy_name(std::string_view variable);

// ---------------------------------------------------------------------------
// Queries and analyses

struct IndependenceQuery {
    std::vector<Vertex> left;
    std::vector<Vertex> right;
    std::vector<Vertex> given;
    std::vector<std::size_t> interventions;  // indicator positions fixed to 1
};

struct StructureReport {
    std::vector<Edge> self_censoring_edges;        // X_k -> R_k
    struct Colluder {
        std::size_t cause;       // X_i
        std::size_t collider;    // R_j
        std::size_t partner;     // R_i
        auto operator<=>(const Colluder&) const = default;
    };
    std::vector<Colluder> colluders;               // X_i -> R_j <- R_i
    std::vector<std::pair<std::size_t, std::size_t>> criss_crosses;  // i < j
    std::vector<std::vector<Vertex>> colluding_paths;

    bool empty() const {
        return self_censoring_edges.empty() && colluders.empty() && criss_crosses.empty() &&
               colluding_paths.empty();
    }
};

enum class ModelClass {
    sequential_mar,
    sequential_mnar,
    block_parallel,
    permutation,
    no_self_censoring,
    other,
};

enum class Testability { directly_testable, testable_as_verma, untestable_by_criteria };
enum class TestRoute { none, observed_independence, fixing, odds_ratio };

struct TestabilityVerdict {
    Testability verdict = Testability::untestable_by_criteria;
    TestRoute route = TestRoute::none;
    std::vector<std::size_t> fixed;  // indicators intervened on (fixing route)
    std::string reason;
};

struct ParameterCount {
    long long full_law = 0;
    long long saturated_observed = 0;
    bool constrained() const { return full_law < saturated_observed; }
};

std::vector<std::string> validate_mdag(const MDag& g);
void require_valid(const MDag& g);  // throws std::invalid_argument listing violations

bool d_separated(const MDag& g, const IndependenceQuery& q);

// `order` lists variable positions; order[0] is first under the ordering.
std::vector<IndependenceQuery> defining_separations(ModelClass cls, std::size_t variable_count,
                                                    std::span<const std::size_t> order);
ModelClass classify_model(const MDag& g, std::span<const std::size_t> order);

StructureReport detect_structures(const MDag& g);

TestabilityVerdict testability_verdict(const MDag& g, const IndependenceQuery& q);

// Cardinality 0 stands for a continuous variable and is rejected.
ParameterCount count_parameters(const MDag& g, std::span<const int> cardinalities);

std::string to_string(ModelClass c);
std::string to_string(Testability t);
std::string to_string(TestRoute r);

}  // namespace mgof::graph
