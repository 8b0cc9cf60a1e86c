#include <gtest/gtest.h>

#include <random>

#include "mgof/graph/graph_json.hpp"
#include "mgof/graph/mdag.hpp"
#include "oracles.hpp"

using namespace mgof::graph;

namespace {

GraphFile load(const std::string& name) { return read_graph_file(std::string(MGOF_TEST_DATA) + "/" + name + ".json"); }

ModelClass classify_file(const std::string& name) {
    const auto f = load(name);
    std::vector<std::size_t> order(f.graph.variable_count());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    return classify_model(f.graph, f.order ? *f.order : order);
}

ParameterCount count(const std::string& name) {
    const auto f = load(name);
    std::vector<int> card(f.graph.variable_count(), 2);
    return count_parameters(f.graph, card);
}

}  // namespace

TEST(Validate, ReferenceGraphsAreClean) {
    for (auto name : {"mar2", "permutation2", "mar3", "mnar3", "mnar2", "crisscross2", "block_parallel2"})
        EXPECT_TRUE(validate_mdag(load(name).graph).empty()) << name;
}

TEST(Validate, IndicatorIntoSubstantive) {
    MDag g({"X1", "X2"}, {{Vertex::r(0), Vertex::x(0)}});
    const auto v = validate_mdag(g);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_NE(v[0].find("R1"), std::string::npos);
    EXPECT_NE(v[0].find("X1"), std::string::npos);
}

TEST(Validate, ExtraProxyParent) {
    MDag g({"X1", "X2"}, {{Vertex::x(1), Vertex::proxy(0)}});
    EXPECT_EQ(validate_mdag(g).size(), 1u);
}

TEST(Validate, BadFixtureListsBoth) { EXPECT_EQ(validate_mdag(load("bad_edges").graph).size(), 2u); }

TEST(Validate, CycleAndBidirectedOnIndicator) {
    MDag cyc({"X1", "X2"}, {{Vertex::x(0), Vertex::x(1)}, {Vertex::x(1), Vertex::x(0)}});
    EXPECT_FALSE(validate_mdag(cyc).empty());
    MDag bi({"X1", "X2"}, {}, {{Vertex::r(0), Vertex::x(1)}});
    EXPECT_FALSE(validate_mdag(bi).empty());
}

TEST(Validate, ProxyToOtherIndicatorAllowed) {
    MDag g({"X1", "X2"}, {{Vertex::proxy(0), Vertex::r(1)}});
    EXPECT_TRUE(validate_mdag(g).empty());
}

TEST(MixedGraphDsep, ChainForkCollider) {
    MixedGraph chain(3);
    chain.add_directed(0, 1);
    chain.add_directed(1, 2);
    std::vector<std::size_t> a{0}, b{2}, mid{1}, none;
    EXPECT_FALSE(d_separated(chain, a, b, none));
    EXPECT_TRUE(d_separated(chain, a, b, mid));

    MixedGraph coll(4);
    coll.add_directed(0, 1);
    coll.add_directed(2, 1);
    coll.add_directed(1, 3);
    std::vector<std::size_t> c{2}, desc{3};
    EXPECT_TRUE(d_separated(coll, a, c, none));
    EXPECT_FALSE(d_separated(coll, a, c, mid));
    EXPECT_FALSE(d_separated(coll, a, c, desc));

    MixedGraph bi(3);
    bi.add_bidirected(0, 1);
    bi.add_bidirected(1, 2);
    EXPECT_TRUE(d_separated(bi, a, b, none));
    EXPECT_FALSE(d_separated(bi, a, b, mid));
}

TEST(MixedGraphDsep, OverlappingSetsThrow) {
    MixedGraph g(2);
    std::vector<std::size_t> a{0};
    EXPECT_THROW(d_separated(g, a, a, {}), std::invalid_argument);
}

TEST(Dsep, OpenColliderWithoutIntervention) {
    const auto g = load("mar2").graph;
    IndependenceQuery q{{Vertex::r(0)}, {Vertex::x(1)}, {Vertex::r(1)}, {}};
    EXPECT_FALSE(d_separated(g, q));
}

TEST(Dsep, HoldsAfterFixingR2) {
    const auto g = load("mar2").graph;
    IndependenceQuery q{{Vertex::r(0)}, {Vertex::x(1)}, {}, {1}};
    EXPECT_TRUE(d_separated(g, q));
}

TEST(Dsep, FixedIndicatorInQueryThrows) {
    const auto g = load("mar2").graph;
    IndependenceQuery q{{Vertex::r(1)}, {Vertex::x(1)}, {}, {1}};
    EXPECT_THROW(d_separated(g, q), std::invalid_argument);
}

TEST(Intervene, DropsEdgesIntoFixed) {
    const auto g = load("mar2").graph;
    const std::vector<std::size_t> fix{1};
    const auto h = g.intervene(fix);
    EXPECT_TRUE(h.parents(Vertex::r(1)).empty());
    EXPECT_TRUE(h.is_fixed(1));
    EXPECT_EQ(g.edges().size(), 3u);
    EXPECT_EQ(h.edges().size(), 1u);
}

TEST(GraphJson, UnknownVertexThrows) {
    EXPECT_THROW(parse_graph_json(R"({"variables":["X1"],"edges":[["X1","R9"]]})"), std::invalid_argument);
    EXPECT_THROW(parse_graph_json(R"({"edges":[]})"), std::invalid_argument);
}

TEST(Classify, ReferenceGraphs) {
    EXPECT_EQ(classify_file("mar2"), ModelClass::sequential_mar);
    EXPECT_EQ(classify_file("permutation2"), ModelClass::permutation);
    EXPECT_EQ(classify_file("mar3"), ModelClass::sequential_mar);
    EXPECT_EQ(classify_file("permutation3_from_mar"), ModelClass::permutation);
    EXPECT_EQ(classify_file("mnar3"), ModelClass::sequential_mnar);
    EXPECT_EQ(classify_file("mnar2"), ModelClass::sequential_mnar);
    EXPECT_EQ(classify_file("crisscross2"), ModelClass::other);
    EXPECT_EQ(classify_file("block_parallel2"), ModelClass::block_parallel);
}

TEST(Structures, CrissCrossWithColluder) {
    const auto s = detect_structures(load("crisscross2").graph);
    ASSERT_EQ(s.criss_crosses.size(), 1u);
    EXPECT_EQ(s.criss_crosses[0], std::make_pair(std::size_t{0}, std::size_t{1}));
    ASSERT_EQ(s.colluders.size(), 1u);
    EXPECT_EQ(s.colluders[0].cause, 0u);
    EXPECT_EQ(s.colluders[0].collider, 1u);
    EXPECT_EQ(s.colluders[0].partner, 0u);
    EXPECT_TRUE(s.self_censoring_edges.empty());
}

TEST(Structures, SequentialMarIsClean) { EXPECT_TRUE(detect_structures(load("mar3").graph).empty()); }

TEST(Structures, SelfCensoringAndColludingPath) {
    MDag sc({"X1", "X2"}, {{Vertex::x(0), Vertex::r(0)}});
    EXPECT_EQ(detect_structures(sc).self_censoring_edges.size(), 1u);

    // X1 -> R2 <- R1 has a single interior vertex, which is a collider
    MDag cp({"X1", "X2"}, {{Vertex::x(0), Vertex::r(1)}, {Vertex::r(0), Vertex::r(1)}});
    const auto paths = detect_structures(cp).colluding_paths;
    ASSERT_EQ(paths.size(), 1u);
    EXPECT_EQ(paths[0].front(), Vertex::x(0));
    EXPECT_EQ(paths[0].back(), Vertex::r(0));
}

TEST(Structures, ReportedEdgesExist) {
    std::mt19937_64 gen(11);
    for (int t = 0; t < 300; ++t) {
        const auto m = oracle::random_mdag(3, 0.4, gen);
        std::vector<Edge> edges;
        MDag probe({"X1", "X2", "X3"});
        for (auto [a, b] : m.directed) edges.push_back({probe.from_id(a), probe.from_id(b)});
        MDag g({"X1", "X2", "X3"}, edges);
        const auto s = detect_structures(g);
        for (const auto& e : s.self_censoring_edges) EXPECT_TRUE(g.has_edge(e.from, e.to));
        for (const auto& c : s.colluders) {
            EXPECT_TRUE(g.has_edge(Vertex::x(c.cause), Vertex::r(c.collider)));
            EXPECT_TRUE(g.has_edge(Vertex::r(c.partner), Vertex::r(c.collider)));
        }
        for (auto [i, j] : s.criss_crosses) {
            EXPECT_TRUE(g.has_edge(Vertex::x(i), Vertex::r(j)));
            EXPECT_TRUE(g.has_edge(Vertex::x(j), Vertex::r(i)));
        }
    }
}

TEST(CountParameters, BinaryCounts) {
    const auto a = count("mar2");
    EXPECT_EQ(a.full_law, 7);
    EXPECT_EQ(a.saturated_observed, 8);
    EXPECT_TRUE(a.constrained());
    const auto b = count("permutation2");
    EXPECT_EQ(b.full_law, 8);
    EXPECT_EQ(b.saturated_observed, 8);
    const auto nsc = count("nsc2");
    EXPECT_EQ(nsc.full_law, 8);
    EXPECT_EQ(nsc.saturated_observed, 8);
    const auto nsc3 = count("nsc3");
    EXPECT_EQ(nsc3.full_law, nsc3.saturated_observed);
}

TEST(CountParameters, ContinuousRejected) {
    const auto f = load("mar2");
    std::vector<int> card{2, 0};
    EXPECT_THROW(count_parameters(f.graph, card), std::invalid_argument);
}

TEST(Testability, Routes) {
    const auto a = load("mar2").graph;
    const auto v = testability_verdict(a, {{Vertex::r(0)}, {Vertex::x(1)}, {}, {}});
    EXPECT_EQ(v.verdict, Testability::testable_as_verma);
    EXPECT_EQ(v.route, TestRoute::fixing);

    const auto d = load("block_parallel2").graph;
    const auto w = testability_verdict(d, {{Vertex::r(0)}, {Vertex::r(1)}, {Vertex::x(0), Vertex::x(1)}, {}});
    EXPECT_EQ(w.route, TestRoute::odds_ratio);

    const auto b = load("permutation2").graph;
    const auto u = testability_verdict(b, {{Vertex::r(0)}, {Vertex::x(1)}, {}, {}});
    EXPECT_EQ(u.verdict, Testability::untestable_by_criteria);
}

TEST(DsepOracle, RandomMixedGraphs) {
    std::mt19937_64 gen(2024);
    std::uniform_int_distribution<int> size(2, 6);
    std::uniform_int_distribution<int> role(0, 3);
    int checked = 0;
    for (int t = 0; checked < 10000; ++t) {
        const int n = size(gen);
        const auto e = oracle::random_mixed_graph(n, 0.4, 0.15, gen);
        std::vector<int> x, y, z;
        for (int v = 0; v < n; ++v) {
            switch (role(gen)) {
                case 0: x.push_back(v); break;
                case 1: y.push_back(v); break;
                case 2: z.push_back(v); break;
                default: break;
            }
        }
        if (x.empty() || y.empty()) continue;
        MixedGraph g(static_cast<std::size_t>(n));
        for (auto [a, b] : e.directed) g.add_directed(a, b);
        for (auto [a, b] : e.bidirected) g.add_bidirected(a, b);
        std::vector<std::size_t> gx(x.begin(), x.end()), gy(y.begin(), y.end()), gz(z.begin(), z.end());
        ASSERT_EQ(d_separated(g, gx, gy, gz), oracle::dsep_bruteforce(e, x, y, z)) << "instance " << t;
        ++checked;
    }
}

TEST(DsepOracle, RandomMdagsWithInterventions) {
    std::mt19937_64 gen(77);
    std::uniform_int_distribution<int> role(0, 4);
    std::bernoulli_distribution coin(0.3);
    int checked = 0;
    for (int t = 0; t < 10000; ++t) {
        const auto m = oracle::random_mdag(2, 0.5, gen);
        MDag probe({"X1", "X2"});
        std::vector<Edge> edges;
        std::vector<VertexPair> bi;
        for (auto [a, b] : m.directed) edges.push_back({probe.from_id(a), probe.from_id(b)});
        for (auto [a, b] : m.bidirected) bi.emplace_back(probe.from_id(a), probe.from_id(b));
        MDag g({"X1", "X2"}, edges, bi);

        std::vector<int> fixed;
        for (int k = 0; k < 2; ++k)
            if (coin(gen)) fixed.push_back(k);
        const auto [sg, map] = oracle::surgered(m, fixed);

        IndependenceQuery q;
        for (int k : fixed) q.interventions.push_back(static_cast<std::size_t>(k));
        std::vector<int> x, y, z;
        std::vector<int> seen(6, -1);
        bool clash = false;
        for (int v = 0; v < 6; ++v) {
            if (v >= 2 && v < 4 && std::find(fixed.begin(), fixed.end(), v - 2) != fixed.end()) continue;
            const int r = role(gen);
            if (r > 2) continue;
            if (seen[map[v]] >= 0 && seen[map[v]] != r) clash = true;
            seen[map[v]] = r;
            auto& dst = r == 0 ? q.left : r == 1 ? q.right : q.given;
            dst.push_back(g.from_id(static_cast<std::size_t>(v)));
            (r == 0 ? x : r == 1 ? y : z).push_back(map[v]);
        }
        if (clash || x.empty() || y.empty()) continue;
        for (int k : fixed) z.push_back(2 + k);
        ASSERT_EQ(d_separated(g, q), oracle::dsep_bruteforce(sg, x, y, z)) << "instance " << t;
        ++checked;
    }
    EXPECT_GT(checked, 3000);
}
