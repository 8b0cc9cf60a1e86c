#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "mgof/graph/mdag.hpp"

namespace mgof::graph {

namespace {

bool contains(const std::vector<Vertex>& set, Vertex v) {
    return std::find(set.begin(), set.end(), v) != set.end();
}

std::string edge_text(const MDag& g, const Edge& e) { return g.name(e.from) + " -> " + g.name(e.to); }

// Number of jointly feasible configurations of a parent set, honouring the
// determinism X*_k = "?" iff R_k = 0 and X*_k = X_k otherwise.
long long parent_configurations(const std::vector<Vertex>& parents, std::span<const int> card) {
    std::map<std::size_t, std::array<bool, 3>> groups;
    for (auto v : parents) groups[v.index][static_cast<int>(v.kind)] = true;
    long long total = 1;
    for (const auto& [k, has] : groups) {
        const long long c = card[k];
        const bool x = has[0], r = has[1], xs = has[2];
        long long n = 1;
        if (xs)
            n = x ? 2 * c : c + 1;
        else if (x)
            n = r ? 2 * c : c;
        else if (r)
            n = 2;
        total *= n;
    }
    return total;
}

}  // namespace

std::vector<std::string> validate_mdag(const MDag& g) {
    std::vector<std::string> out;
    std::set<Edge> seen;
    for (const auto& e : g.edges()) {
        const auto text = edge_text(g, e);
        if (!seen.insert(e).second) out.push_back("duplicate edge " + text);
        if (e.from == e.to) {
            out.push_back("self-loop " + text);
            continue;
        }
        if (e.to.kind == VertexKind::proxy) {
            if (e.from.index == e.to.index && e.from.kind != VertexKind::proxy)
                out.push_back("deterministic edge " + text + " is implicit and must be omitted");
            else
                out.push_back("proxy " + g.name(e.to) + " may only have parents " +
                              g.name(Vertex::x(e.to.index)) + " and " + g.name(Vertex::r(e.to.index)) +
                              " (found " + text + ")");
        }
        if (e.to.kind == VertexKind::substantive && e.from.kind != VertexKind::substantive)
            out.push_back("forbidden edge " + text + ": missingness indicators and proxies cannot point into X");
    }
    for (const auto& p : g.bidirected()) {
        if (p.first.kind != VertexKind::substantive || p.second.kind != VertexKind::substantive)
            out.push_back("bidirected edge " + g.name(p.first) + " <-> " + g.name(p.second) +
                          " must join two substantive variables");
        else if (p.first == p.second)
            out.push_back("bidirected self-loop on " + g.name(p.first));
    }
    for (const auto& p : g.undirected()) {
        if (p.first.kind != VertexKind::indicator || p.second.kind != VertexKind::indicator)
            out.push_back("undirected edge " + g.name(p.first) + " - " + g.name(p.second) +
                          " must join two missingness indicators");
        else if (p.first == p.second)
            out.push_back("undirected self-loop on " + g.name(p.first));
    }
    const auto cycle = g.to_mixed_graph().find_cycle();
    if (!cycle.empty()) {
        std::string text = "directed cycle ";
        for (auto id : cycle) text += g.name(g.from_id(id)) + " -> ";
        text += g.name(g.from_id(cycle.front()));
        out.push_back(text);
    }
    return out;
}

void require_valid(const MDag& g) {
    const auto violations = validate_mdag(g);
    if (violations.empty()) return;
    std::string msg = "invalid m-DAG:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw std::invalid_argument(msg);
}

bool d_separated(const MDag& g, const IndependenceQuery& q) {
    require_valid(g);
    if (!g.undirected().empty())
        throw std::invalid_argument("d-separation is not defined for graphs with undirected R - R edges");
    const MDag h = g.intervene(q.interventions);
    auto lower = [&](const std::vector<Vertex>& set) {
        std::vector<std::size_t> ids;
        for (auto v : set) {
            if (v.index >= h.variable_count()) throw std::out_of_range("query vertex out of range");
            if (v.kind == VertexKind::indicator && h.is_fixed(v.index))
                throw std::invalid_argument("fixed indicator " + h.name(v) + " cannot appear in a query");
            ids.push_back(h.merged_id(v));
        }
        return ids;
    };
    const auto left = lower(q.left);
    const auto right = lower(q.right);
    auto given = lower(q.given);
    for (auto k : h.fixed()) given.push_back(h.id(Vertex::r(k)));
    std::sort(given.begin(), given.end());
    given.erase(std::unique(given.begin(), given.end()), given.end());
    return d_separated(h.to_mixed_graph(), left, right, given);
}

std::vector<IndependenceQuery> defining_separations(ModelClass cls, std::size_t k_count,
                                                    std::span<const std::size_t> order) {
    std::vector<IndependenceQuery> out;
    const auto k = order.size();
    if (k != k_count) throw std::invalid_argument("order must list every variable exactly once");
    auto before = [&](std::size_t p) { return std::span(order).first(p); };
    auto after = [&](std::size_t p) { return std::span(order).subspan(p + 1); };

    switch (cls) {
        case ModelClass::sequential_mar:
            for (std::size_t p = 0; p < k; ++p) {
                IndependenceQuery q{{Vertex::r(order[p])}, {}, {}, {}};
                for (std::size_t i = 0; i < k; ++i) q.right.push_back(Vertex::x(i));
                for (auto j : before(p)) {
                    q.given.push_back(Vertex::r(j));
                    q.given.push_back(Vertex::proxy(j));
                }
                out.push_back(std::move(q));
            }
            break;
        case ModelClass::sequential_mnar:
        case ModelClass::permutation:
            for (std::size_t p = 0; p < k; ++p) {
                IndependenceQuery q{{Vertex::r(order[p])}, {Vertex::x(order[p])}, {}, {}};
                for (auto j : before(p)) {
                    q.right.push_back(Vertex::x(j));
                    q.given.push_back(Vertex::r(j));
                    if (cls == ModelClass::sequential_mnar)
                        q.right.push_back(Vertex::proxy(j));
                    else
                        q.given.push_back(Vertex::proxy(j));
                }
                for (auto i : after(p)) q.given.push_back(Vertex::x(i));
                out.push_back(std::move(q));
            }
            break;
        case ModelClass::block_parallel:
            for (std::size_t i = 0; i < k; ++i) {
                IndependenceQuery q{{Vertex::r(i)}, {Vertex::x(i)}, {}, {}};
                for (std::size_t j = 0; j < k; ++j) {
                    if (j == i) continue;
                    q.right.push_back(Vertex::r(j));
                    q.given.push_back(Vertex::x(j));
                }
                out.push_back(std::move(q));
            }
            break;
        case ModelClass::no_self_censoring:
            for (std::size_t i = 0; i < k; ++i) {
                IndependenceQuery q{{Vertex::r(i)}, {Vertex::x(i)}, {}, {}};
                for (std::size_t j = 0; j < k; ++j) {
                    if (j == i) continue;
                    q.given.push_back(Vertex::r(j));
                    q.given.push_back(Vertex::x(j));
                }
                out.push_back(std::move(q));
            }
            break;
        case ModelClass::other: break;
    }
    return out;
}

ModelClass classify_model(const MDag& g, std::span<const std::size_t> order) {
    std::vector<std::size_t> sorted(order.begin(), order.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> expected(g.variable_count());
    std::iota(expected.begin(), expected.end(), std::size_t{0});
    if (sorted != expected) throw std::invalid_argument("order must list every variable exactly once");
    require_valid(g);

    // Most specific first; the class sets only shrink as edges are added.
    for (auto cls : {ModelClass::sequential_mar, ModelClass::sequential_mnar, ModelClass::block_parallel,
                     ModelClass::permutation, ModelClass::no_self_censoring}) {
        const auto seps = defining_separations(cls, g.variable_count(), order);
        if (std::all_of(seps.begin(), seps.end(), [&](const auto& q) { return d_separated(g, q); }))
            return cls;
    }
    return ModelClass::other;
}

StructureReport detect_structures(const MDag& g) {
    StructureReport rep;
    const auto k = g.variable_count();
    for (const auto& e : g.edges())
        if (e.from.kind == VertexKind::substantive && e.to.kind == VertexKind::indicator &&
            e.from.index == e.to.index)
            rep.self_censoring_edges.push_back(e);
    std::sort(rep.self_censoring_edges.begin(), rep.self_censoring_edges.end());

    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < k; ++i)
            if (i != j && g.has_edge(Vertex::x(i), Vertex::r(j)) && g.has_edge(Vertex::r(i), Vertex::r(j)))
                rep.colluders.push_back({i, j, i});

    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (g.has_edge(Vertex::x(i), Vertex::r(j)) && g.has_edge(Vertex::x(j), Vertex::r(i)) &&
                (g.has_edge(Vertex::r(i), Vertex::r(j)) || g.has_edge(Vertex::r(j), Vertex::r(i))))
                rep.criss_crosses.emplace_back(i, j);

    // Collider paths X_i *-> V1 <-> ... <-* R_i; every intermediate vertex has
    // arrowheads on both sides. Proxies are excluded as intermediates, which
    // drops only the deterministic X_i -> X*_i <- R_i.
    const auto mg = g.to_mixed_graph();
    for (std::size_t i = 0; i < k; ++i) {
        const auto src = g.id(Vertex::x(i));
        const auto dst = g.id(Vertex::r(i));
        std::vector<std::size_t> path{src};
        std::vector<bool> on_path(mg.size(), false);
        on_path[src] = true;

        // `v` is an intermediate already entered through an arrowhead.
        std::function<void(std::size_t)> extend = [&](std::size_t v) {
            // Leaving v must also put an arrowhead at v: v <- w or v <-> w.
            for (auto w : mg.parents(v)) {
                if (w == dst) {
                    std::vector<Vertex> p;
                    for (auto id : path) p.push_back(g.from_id(id));
                    p.push_back(g.from_id(dst));
                    rep.colluding_paths.push_back(std::move(p));
                }
            }
            for (auto w : mg.siblings(v)) {
                if (on_path[w] || g.from_id(w).kind == VertexKind::proxy) continue;
                if (w == dst) continue;  // R vertices carry no bidirected edges
                on_path[w] = true;
                path.push_back(w);
                extend(w);
                path.pop_back();
                on_path[w] = false;
            }
        };
        auto enter = [&](std::size_t v) {
            if (on_path[v] || v == dst || g.from_id(v).kind == VertexKind::proxy) return;
            on_path[v] = true;
            path.push_back(v);
            extend(v);
            path.pop_back();
            on_path[v] = false;
        };
        for (auto c : mg.children(src)) enter(c);
        for (auto s : mg.siblings(src)) enter(s);
    }
    return rep;
}

TestabilityVerdict testability_verdict(const MDag& g, const IndependenceQuery& q) {
    TestabilityVerdict out;
    if (!d_separated(g, q)) {
        out.reason = "the independence is not a d-separation of the graph";
        return out;
    }
    const MDag base = g.intervene(q.interventions);
    std::vector<Vertex> all;
    all.insert(all.end(), q.left.begin(), q.left.end());
    all.insert(all.end(), q.right.begin(), q.right.end());
    all.insert(all.end(), q.given.begin(), q.given.end());

    std::vector<std::size_t> needed;
    for (auto v : all) {
        if (v.kind != VertexKind::substantive || base.is_fixed(v.index)) continue;
        if (contains(q.given, Vertex::r(v.index))) continue;
        if (std::find(needed.begin(), needed.end(), v.index) == needed.end()) needed.push_back(v.index);
    }
    std::sort(needed.begin(), needed.end());
    const bool indicator_in_query = std::any_of(needed.begin(), needed.end(), [&](std::size_t m) {
        return contains(q.left, Vertex::r(m)) || contains(q.right, Vertex::r(m));
    });

    if (!indicator_in_query) {
        IndependenceQuery augmented = q;
        for (auto m : needed) augmented.given.push_back(Vertex::r(m));
        if (d_separated(g, augmented)) {
            out.verdict = Testability::directly_testable;
            out.route = TestRoute::observed_independence;
            out.reason = needed.empty() ? "all variables involved are fully observed"
                                        : "indicators can be added to the separating set";
            return out;
        }
        IndependenceQuery fixed = q;
        fixed.interventions.insert(fixed.interventions.end(), needed.begin(), needed.end());
        if (d_separated(g, fixed)) {
            const auto s = detect_structures(g);
            std::string blocked;
            for (auto m : needed) {
                const bool self = g.has_edge(Vertex::x(m), Vertex::r(m));
                const bool colluder = std::any_of(s.colluders.begin(), s.colluders.end(),
                                                  [m](const auto& c) { return c.collider == m; });
                const bool path = std::any_of(s.colluding_paths.begin(), s.colluding_paths.end(),
                                              [m](const auto& p) { return p.back().index == m; });
                if (self || colluder || path) blocked += (blocked.empty() ? "" : ", ") + g.name(Vertex::r(m));
            }
            if (blocked.empty()) {
                out.verdict = Testability::testable_as_verma;
                out.route = TestRoute::fixing;
                out.fixed = needed;
                out.reason = "holds after intervening on the listed indicators, whose propensities are identified";
                return out;
            }
            out.reason = "propensity not identified for " + blocked;
        } else {
            out.reason = "fixing the required indicators spoils the separation";
        }
    }

    // Odds-ratio route: R_k _||_ R_j | X with no self-censoring at k and j.
    if (q.left.size() == 1 && q.right.size() == 1 && q.interventions.empty() &&
        q.left[0].kind == VertexKind::indicator && q.right[0].kind == VertexKind::indicator) {
        const auto k = q.left[0].index;
        const auto j = q.right[0].index;
        const auto n = g.variable_count();
        bool conditions_on_x = true;
        bool only_x_or_r = true;
        for (std::size_t i = 0; i < n; ++i)
            if (!contains(q.given, Vertex::x(i))) conditions_on_x = false;
        for (auto v : q.given)
            if (v.kind == VertexKind::proxy ||
                (v.kind == VertexKind::indicator && (v.index == k || v.index == j)))
                only_x_or_r = false;
        if (conditions_on_x && only_x_or_r) {
            IndependenceQuery with_rest{{Vertex::r(k)}, {Vertex::r(j)}, {}, {}};
            for (std::size_t i = 0; i < n; ++i) {
                with_rest.given.push_back(Vertex::x(i));
                if (i != k && i != j) with_rest.given.push_back(Vertex::r(i));
            }
            auto no_self_censoring = [&](std::size_t m) {
                IndependenceQuery nsc{{Vertex::r(m)}, {Vertex::x(m)}, {}, {}};
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == m) continue;
                    nsc.given.push_back(Vertex::x(i));
                    nsc.given.push_back(Vertex::r(i));
                }
                return d_separated(g, nsc);
            };
            if (d_separated(g, with_rest) && no_self_censoring(k) && no_self_censoring(j)) {
                out.verdict = Testability::testable_as_verma;
                out.route = TestRoute::odds_ratio;
                out.fixed.clear();
                out.reason = "fixing the pair is impossible; the odds ratio OR(" + g.name(Vertex::r(k)) + ", " +
                             g.name(Vertex::r(j)) + " | X_-kj, R_-kj = 1) is an observed-data restriction";
                return out;
            }
        }
    }
    if (out.reason.empty()) out.reason = "an indicator that would need fixing appears in the query";
    return out;
}

ParameterCount count_parameters(const MDag& g, std::span<const int> cardinalities) {
    require_valid(g);
    const auto k = g.variable_count();
    if (cardinalities.size() != k) throw std::invalid_argument("one cardinality per variable is required");
    for (auto c : cardinalities)
        if (c < 2) throw std::invalid_argument("parameter counting needs finite cardinalities >= 2");
    if (!g.bidirected().empty())
        throw std::invalid_argument("parameter counting is not defined with bidirected edges");
    if (!g.fixed().empty()) throw std::invalid_argument("parameter counting needs an unsurgered graph");
    if (k > 20) throw std::invalid_argument("parameter counting supports at most 20 variables");

    ParameterCount out;
    for (std::size_t i = 0; i < k; ++i)
        out.full_law += (cardinalities[i] - 1) * parent_configurations(g.parents(Vertex::x(i)), cardinalities);

    // Indicators: one Bernoulli parameter per parent configuration. Indicators
    // joined by undirected lines use the odds-ratio parameterisation: the
    // baseline conditionals p(R_i = 1 | R_-i = 1, pa) plus one interaction term
    // per clique, varying with the clique's parents other than its own X's.
    std::vector<std::vector<bool>> adj(k, std::vector<bool>(k, false));
    for (const auto& p : g.undirected()) {
        adj[p.first.index][p.second.index] = true;
        adj[p.second.index][p.first.index] = true;
    }
    for (std::size_t i = 0; i < k; ++i)
        out.full_law += parent_configurations(g.parents(Vertex::r(i)), cardinalities);
    if (!g.undirected().empty()) {
        for (unsigned mask = 0; mask < (1u << k); ++mask) {
            if (std::popcount(mask) < 2) continue;
            std::vector<std::size_t> members;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (1u << i)) members.push_back(i);
            bool clique = true;
            for (std::size_t a = 0; a < members.size() && clique; ++a)
                for (std::size_t b = a + 1; b < members.size(); ++b)
                    if (!adj[members[a]][members[b]]) {
                        clique = false;
                        break;
                    }
            if (!clique) continue;
            std::vector<Vertex> pa;
            for (auto m : members)
                for (auto v : g.parents(Vertex::r(m))) {
                    const bool own_x = v.kind == VertexKind::substantive && (mask & (1u << v.index));
                    const bool own_r = v.kind == VertexKind::indicator && (mask & (1u << v.index));
                    if (!own_x && !own_r && !contains(pa, v)) pa.push_back(v);
                }
            out.full_law += parent_configurations(pa, cardinalities);
        }
    }

    // Pattern mixture: p(R) plus p(X* | R = r) over the observed coordinates.
    out.saturated_observed = (1LL << k) - 1;
    for (unsigned r = 0; r < (1u << k); ++r) {
        long long cells = 1;
        for (std::size_t i = 0; i < k; ++i)
            if (r & (1u << i)) cells *= cardinalities[i];
        out.saturated_observed += cells - 1;
    }
    return out;
}

}  // namespace mgof::graph
