#include <benchmark/benchmark.h>

#include <random>

#include "mgof/estimate/odds_ratio.hpp"
#include "mgof/gof/sequential.hpp"
#include "mgof/graph/mixed_graph.hpp"
#include "mgof/numerics/logistic.hpp"
#include "mgof/simulate/scenario.hpp"

using namespace mgof;

namespace {

est::ObservedDataset dataset(sim::Scenario s, Eigen::Index n) {
    sim::ScenarioConfig c;
    c.scenario = s;
    c.n = n;
    auto rng = num::Rng::child(1, 0);
    return sim::simulate_dataset(c, rng);
}

}  // namespace

static void BM_LogisticFit(benchmark::State& state) {
    const auto n = state.range(0);
    std::mt19937_64 gen(4);
    std::normal_distribution<double> z;
    Eigen::MatrixXd x(n, 5);
    Eigen::VectorXd y(n), w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        x(i, 0) = 1.0;
        double eta = 0.2;
        for (int j = 1; j < 5; ++j) eta += 0.3 * (x(i, j) = z(gen));
        y[i] = std::bernoulli_distribution(num::expit(eta))(gen);
        w[i] = 1.0 + 0.5 * std::abs(z(gen));
    }
    const num::DesignMatrix d({"(intercept)", "a", "b", "c", "d"}, x);
    for (auto _ : state) benchmark::DoNotOptimize(num::fit_weighted_logistic(d, y, w));
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_LogisticFit)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

static void BM_DSeparation(benchmark::State& state) {
    // chain with a collider every third vertex
    const auto n = static_cast<std::size_t>(state.range(0));
    graph::MixedGraph g(n);
    for (std::size_t v = 0; v + 1 < n; ++v) {
        if (v % 3 == 2)
            g.add_directed(v + 1, v);
        else
            g.add_directed(v, v + 1);
    }
    const std::vector<std::size_t> x{0}, y{n - 1}, z{n / 2};
    for (auto _ : state) benchmark::DoNotOptimize(graph::d_separated(g, x, y, z));
}
BENCHMARK(BM_DSeparation)->Arg(12)->Arg(120)->Arg(1200);

static void BM_SequentialMar(benchmark::State& state) {
    const auto d = dataset(sim::Scenario::mar_null, state.range(0));
    const std::vector<std::size_t> order{0, 1, 2, 3};
    for (auto _ : state) benchmark::DoNotOptimize(gof::test_sequential_mar(d, order));
}
BENCHMARK(BM_SequentialMar)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_OddsRatioBootstrap(benchmark::State& state) {
    const auto d = dataset(sim::Scenario::bp_null, 10000);
    est::OddsRatioOptions o;
    o.n_bootstrap = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(est::estimate_odds_ratio(d, 0, 1, o));
}
BENCHMARK(BM_OddsRatioBootstrap)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
