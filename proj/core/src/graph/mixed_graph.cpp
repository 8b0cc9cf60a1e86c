#include "mgof/graph/mixed_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace mgof::graph {

namespace {

void check_vertex(const MixedGraph& g, std::size_t v) {
    if (v >= g.size()) throw std::out_of_range("vertex id out of range");
}

}  // namespace

MixedGraph::MixedGraph(std::size_t vertex_count)
    : children_(vertex_count), parents_(vertex_count), siblings_(vertex_count) {}

void MixedGraph::add_directed(std::size_t from, std::size_t to) {
    check_vertex(*this, from);
    check_vertex(*this, to);
    if (has_directed(from, to)) return;
    children_[from].push_back(to);
    parents_[to].push_back(from);
}

void MixedGraph::add_bidirected(std::size_t a, std::size_t b) {
    check_vertex(*this, a);
    check_vertex(*this, b);
    if (a == b || has_bidirected(a, b)) return;
    siblings_[a].push_back(b);
    siblings_[b].push_back(a);
}

bool MixedGraph::has_directed(std::size_t from, std::size_t to) const {
    const auto& c = children_.at(from);
    return std::find(c.begin(), c.end(), to) != c.end();
}

bool MixedGraph::has_bidirected(std::size_t a, std::size_t b) const {
    const auto& s = siblings_.at(a);
    return std::find(s.begin(), s.end(), b) != s.end();
}

std::vector<bool> MixedGraph::descendants(std::span<const std::size_t> roots) const {
    std::vector<bool> seen(size(), false);
    std::vector<std::size_t> stack(roots.begin(), roots.end());
    while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        if (seen[v]) continue;
        seen[v] = true;
        for (auto c : children_[v]) stack.push_back(c);
    }
    return seen;
}

std::vector<bool> MixedGraph::ancestors(std::span<const std::size_t> roots) const {
    std::vector<bool> seen(size(), false);
    std::vector<std::size_t> stack(roots.begin(), roots.end());
    while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        if (seen[v]) continue;
        seen[v] = true;
        for (auto p : parents_[v]) stack.push_back(p);
    }
    return seen;
}

std::vector<std::size_t> MixedGraph::find_cycle() const {
    // 0 = unvisited, 1 = on stack, 2 = done
    std::vector<int> state(size(), 0);
    std::vector<std::size_t> parent(size(), size());
    for (std::size_t root = 0; root < size(); ++root) {
        if (state[root] != 0) continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
        state[root] = 1;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next < children_[v].size()) {
                const auto c = children_[v][next++];
                if (state[c] == 1) {
                    std::vector<std::size_t> cycle{c};
                    for (auto u = v; u != c; u = parent[u]) cycle.push_back(u);
                    std::reverse(cycle.begin() + 1, cycle.end());
                    return cycle;
                }
                if (state[c] == 0) {
                    state[c] = 1;
                    parent[c] = v;
                    stack.emplace_back(c, 0);
                }
            } else {
                state[v] = 2;
                stack.pop_back();
            }
        }
    }
    return {};
}

bool d_separated(const MixedGraph& g,
                 std::span<const std::size_t> left,
                 std::span<const std::size_t> right,
                 std::span<const std::size_t> given) {
    const std::size_t n = g.size();
    std::vector<int> role(n, 0);  // 1 left, 2 right, 3 given
    auto mark = [&](std::span<const std::size_t> set, int r) {
        for (auto v : set) {
            check_vertex(g, v);
            if (role[v] != 0 && role[v] != r)
                throw std::invalid_argument("d-separation query sets must be disjoint");
            role[v] = r;
        }
    };
    mark(left, 1);
    mark(right, 2);
    mark(given, 3);
    if (left.empty() || right.empty()) return true;

    std::vector<bool> in_given(n, false);
    for (auto v : given) in_given[v] = true;
    // A collider is open iff it has a descendant in `given`, i.e. it is an
    // ancestor of `given`.
    const auto opens_collider = g.ancestors(given);

    // Traversal state: arrived at v through a tail (0) or an arrowhead (1).
    std::vector<bool> visited(2 * n, false);
    std::vector<std::pair<std::size_t, int>> stack;
    for (auto a : left) stack.emplace_back(a, 0);

    while (!stack.empty()) {
        const auto [v, head] = stack.back();
        stack.pop_back();
        if (visited[2 * v + head]) continue;
        visited[2 * v + head] = true;
        if (role[v] == 2) return false;

        const bool blocked_here = in_given[v];
        if (!head) {
            if (blocked_here) continue;
            for (auto p : g.parents(v)) stack.emplace_back(p, 0);
            for (auto c : g.children(v)) stack.emplace_back(c, 1);
            for (auto s : g.siblings(v)) stack.emplace_back(s, 1);
        } else {
            if (!blocked_here)
                for (auto c : g.children(v)) stack.emplace_back(c, 1);
            if (opens_collider[v]) {
                for (auto p : g.parents(v)) stack.emplace_back(p, 0);
                for (auto s : g.siblings(v)) stack.emplace_back(s, 1);
            }
        }
    }
    return true;
}

}  // namespace mgof::graph
