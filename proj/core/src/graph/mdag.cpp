#include "mgof/graph/mdag.hpp"

#include <algorithm>

namespace mgof::graph {

std::string indicator_name(std::string_view variable) {
    if (variable.size() > 1 && variable.front() == 'X') return "R" + std::string(variable.substr(1));
    return "R_" + std::string(variable);
}

std::string proxy_name(std::string_view variable) { return std::string(variable) + "*"; }

MDag::MDag(std::vector<std::string> variables, std::vector<Edge> edges,
           std::vector<VertexPair> bidirected, std::vector<VertexPair> undirected)
    : variables_(std::move(variables)),
      edges_(std::move(edges)),
      bidirected_(std::move(bidirected)),
      undirected_(std::move(undirected)) {
    const auto k = variables_.size();
    auto check = [k](Vertex v) {
        if (v.index >= k) throw std::out_of_range("vertex refers to a variable index out of range");
    };
    for (const auto& e : edges_) {
        check(e.from);
        check(e.to);
    }
    for (const auto& p : bidirected_) {
        check(p.first);
        check(p.second);
    }
    for (const auto& p : undirected_) {
        check(p.first);
        check(p.second);
    }
    std::vector<std::string> seen;
    for (std::size_t i = 0; i < k; ++i) {
        for (auto n : {variables_[i], indicator_name(variables_[i]), proxy_name(variables_[i])}) {
            if (std::find(seen.begin(), seen.end(), n) != seen.end())
                throw std::invalid_argument("duplicate vertex name '" + n + "'");
            seen.push_back(std::move(n));
        }
    }
}

bool MDag::is_fixed(std::size_t k) const {
    return std::find(fixed_.begin(), fixed_.end(), k) != fixed_.end();
}

std::string MDag::name(Vertex v) const {
    const auto& var = variables_.at(v.index);
    switch (v.kind) {
        case VertexKind::substantive: return var;
        case VertexKind::indicator: return indicator_name(var);
        case VertexKind::proxy: return proxy_name(var);
    }
    return var;
}

std::optional<Vertex> MDag::find(std::string_view name) const {
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (variables_[i] == name) return Vertex::x(i);
        if (indicator_name(variables_[i]) == name) return Vertex::r(i);
        if (proxy_name(variables_[i]) == name) return Vertex::proxy(i);
    }
    return std::nullopt;
}

Vertex MDag::vertex(std::string_view name) const {
    if (auto v = find(name)) return *v;
    throw UnknownVertex(std::string(name));
}

std::optional<std::size_t> MDag::variable_index(std::string_view name) const {
    auto it = std::find(variables_.begin(), variables_.end(), name);
    if (it == variables_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - variables_.begin());
}

bool MDag::has_edge(Vertex from, Vertex to) const {
    if (to.kind == VertexKind::proxy && from.index == to.index &&
        from.kind != VertexKind::proxy)
        return true;
    return std::find(edges_.begin(), edges_.end(), Edge{from, to}) != edges_.end();
}

std::vector<Vertex> MDag::parents(Vertex v) const {
    std::vector<Vertex> out;
    if (v.kind == VertexKind::proxy) {
        out.push_back(Vertex::x(v.index));
        out.push_back(Vertex::r(v.index));
    }
    for (const auto& e : edges_)
        if (e.to == v && std::find(out.begin(), out.end(), e.from) == out.end()) out.push_back(e.from);
    std::sort(out.begin(), out.end());
    return out;
}

MDag MDag::intervene(std::span<const std::size_t> indicators) const {
    MDag out = *this;
    for (auto k : indicators) {
        if (k >= variables_.size()) throw std::out_of_range("intervention on unknown indicator");
        if (!out.is_fixed(k)) out.fixed_.push_back(k);
    }
    std::sort(out.fixed_.begin(), out.fixed_.end());
    std::erase_if(out.edges_, [&](const Edge& e) {
        return e.to.kind == VertexKind::indicator && out.is_fixed(e.to.index);
    });
    std::erase_if(out.undirected_, [&](const VertexPair& p) {
        return out.is_fixed(p.first.index) || out.is_fixed(p.second.index);
    });
    return out;
}

MDag MDag::with_edges(std::span<const Edge> extra) const {
    auto edges = edges_;
    for (const auto& e : extra)
        if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
    MDag out(variables_, std::move(edges), bidirected_, undirected_);
    return out.intervene(fixed_);
}

std::size_t MDag::id(Vertex v) const {
    const auto k = variables_.size();
    switch (v.kind) {
        case VertexKind::substantive: return v.index;
        case VertexKind::indicator: return k + v.index;
        case VertexKind::proxy: return 2 * k + v.index;
    }
    return v.index;
}

Vertex MDag::from_id(std::size_t id) const {
    const auto k = variables_.size();
    if (id < k) return Vertex::x(id);
    if (id < 2 * k) return Vertex::r(id - k);
    if (id < 3 * k) return Vertex::proxy(id - 2 * k);
    throw std::out_of_range("vertex id out of range");
}

std::size_t MDag::merged_id(Vertex v) const {
    if (v.kind == VertexKind::proxy && is_fixed(v.index)) return id(Vertex::x(v.index));
    return id(v);
}

MixedGraph MDag::to_mixed_graph() const {
    const auto k = variables_.size();
    MixedGraph g(3 * k);
    for (std::size_t i = 0; i < k; ++i) {
        if (is_fixed(i)) continue;
        g.add_directed(id(Vertex::x(i)), id(Vertex::proxy(i)));
        g.add_directed(id(Vertex::r(i)), id(Vertex::proxy(i)));
    }
    for (const auto& e : edges_) {
        const auto from = merged_id(e.from);
        const auto to = merged_id(e.to);
        if (from != to) g.add_directed(from, to);
    }
    for (const auto& p : bidirected_) g.add_bidirected(merged_id(p.first), merged_id(p.second));
    return g;
}

std::string to_string(ModelClass c) {
    switch (c) {
        case ModelClass::sequential_mar: return "sequential-MAR";
        case ModelClass::sequential_mnar: return "sequential-MNAR";
        case ModelClass::block_parallel: return "block-parallel";
        case ModelClass::permutation: return "permutation";
        case ModelClass::no_self_censoring: return "no-self-censoring-compatible";
        case ModelClass::other: return "other";
    }
    return "other";
}

std::string to_string(Testability t) {
    switch (t) {
        case Testability::directly_testable: return "directly-testable";
        case Testability::testable_as_verma: return "testable-as-verma";
        case Testability::untestable_by_criteria: return "untestable-by-criteria";
    }
    return "untestable-by-criteria";
}

std::string to_string(TestRoute r) {
    switch (r) {
        case TestRoute::none: return "none";
        case TestRoute::observed_independence: return "observed-independence";
        case TestRoute::fixing: return "fixing";
        case TestRoute::odds_ratio: return "odds-ratio";
    }
    return "none";
}

}  // namespace mgof::graph
