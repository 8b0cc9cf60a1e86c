#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace mgof::graph {

// Integer-labelled graph with directed (a -> b) and bidirected (a <-> b)
// edges. Bidirected edges stand for a latent common parent and carry an
// arrowhead at both ends.
class MixedGraph {
public:
    explicit MixedGraph(std::size_t vertex_count = 0);

    std::size_t size() const noexcept { return children_.size(); }

    void add_directed(std::size_t from, std::size_t to);
    void add_bidirected(std::size_t a, std::size_t b);

    const std::vector<std::size_t>& children(std::size_t v) const { return children_.at(v); }
    const std::vector<std::size_t>& parents(std::size_t v) const { return parents_.at(v); }
    const std::vector<std::size_t>& siblings(std::size_t v) const { return siblings_.at(v); }

    bool has_directed(std::size_t from, std::size_t to) const;
    bool has_bidirected(std::size_t a, std::size_t b) const;

    // Vertices reachable from `roots` along directed edges, roots included.
    std::vector<bool> descendants(std::span<const std::size_t> roots) const;
    std::vector<bool> ancestors(std::span<const std::size_t> roots) const;

    // Returns one directed cycle (as a vertex sequence) or an empty vector.
    std::vector<std::size_t> find_cycle() const;

private:
    std::vector<std::vector<std::size_t>> children_;
    std::vector<std::vector<std::size_t>> parents_;
    std::vector<std::vector<std::size_t>> siblings_;
};

// m-separation of `left` and `right` given `given`. Sets must be pairwise
// disjoint; throws std::invalid_argument otherwise.
bool d_separated(const MixedGraph& g,
                 std::span<const std::size_t> left,
                 std::span<const std::size_t> right,
                 std::span<const std::size_t> given);

}  // namespace mgof::graph
