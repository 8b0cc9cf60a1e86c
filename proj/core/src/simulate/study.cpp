#include "mgof/simulate/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "mgof/estimate/odds_ratio.hpp"
#include "mgof/gof/sequential.hpp"
#include "mgof/numerics/parallel.hpp"

namespace mgof::sim {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

ReplicationResult run_replication(const ScenarioConfig& config, int replication) {
    auto rng = num::Rng::child(config.seed, static_cast<std::uint64_t>(replication));
    const auto data = simulate_dataset(config, rng);
    ReplicationResult out;
    out.complete_case = data.complete_case_fraction();

    if (is_block_parallel(config.scenario)) {
        est::OddsRatioOptions opt;
        opt.alpha = config.alpha;
        opt.n_bootstrap = config.n_bootstrap;
        opt.seed = rng();
        const auto e = est::estimate_odds_ratio(data, 0, 1, opt);
        out.theta = e.theta_hat;
        out.ci_lower = e.ci_lower;
        out.ci_upper = e.ci_upper;
        if (!e.ok || e.n_bootstrap * 2 < config.n_bootstrap)
            out.verdict = gof::Verdict::inconclusive;
        else
            out.verdict = (e.ci_lower <= 1.0 && 1.0 <= e.ci_upper) ? gof::Verdict::accepted : gof::Verdict::rejected;
        return out;
    }

    std::vector<std::size_t> order(config.k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    gof::SequentialOptions opt;
    opt.alpha = config.alpha;
    opt.calibration = config.calibration;
    const bool mar = config.scenario == Scenario::mar_null || config.scenario == Scenario::mar_alt;
    const auto report = mar ? gof::test_sequential_mar(data, order, opt) : gof::test_sequential_mnar(data, order, opt);
    out.verdict = report.verdict;
    for (const auto& s : report.steps)
        if (s.decision == gof::Decision::reject) out.rejected_step = s.k.front();
    return out;
}

StudyResult run_study(const ScenarioConfig& config) {
    validate(config);
    StudyResult out;
    out.config = config;
    out.replications.resize(static_cast<std::size_t>(config.reps));
    num::parallel_for(out.replications.size(), config.threads,
                      [&](std::size_t r) { out.replications[r] = run_replication(config, static_cast<int>(r)); });

    out.step_rejections.assign(config.k, 0);
    std::vector<double> thetas;
    double cc = 0.0;
    for (const auto& r : out.replications) {
        cc += r.complete_case;
        switch (r.verdict) {
            case gof::Verdict::accepted: ++out.accepted; break;
            case gof::Verdict::rejected: ++out.rejected; break;
            case gof::Verdict::inconclusive: ++out.inconclusive; break;
        }
        if (r.rejected_step > 0) ++out.step_rejections[r.rejected_step - 1];
        if (std::isfinite(r.theta) && is_block_parallel(config.scenario)) thetas.push_back(r.theta);
    }
    const int decided = out.accepted + out.rejected;
    out.acceptance_rate = decided > 0 ? static_cast<double>(out.accepted) / decided : std::nan("");
    out.mean_complete_case = cc / static_cast<double>(config.reps);
    if (!thetas.empty()) {
        std::sort(thetas.begin(), thetas.end());
        const auto m = thetas.size();
        out.median_theta = m % 2 ? thetas[m / 2] : 0.5 * (thetas[m / 2 - 1] + thetas[m / 2]);
    } else {
        out.median_theta = std::nan("");
    }
    return out;
}

std::uint64_t grid_seed(std::uint64_t seed, Eigen::Index n) {
    std::uint64_t state = seed ^ (static_cast<std::uint64_t>(n) * 0x9e3779b97f4a7c15ULL);
    return num::splitmix64(state);
}

std::vector<CurvePoint> sweep_curve(const ScenarioConfig& config, const std::vector<Eigen::Index>& n_grid) {
    if (n_grid.empty()) throw std::invalid_argument("sample-size grid is empty");
    std::vector<CurvePoint> out;
    for (auto n : n_grid) {
        auto c = config;
        c.n = n;
        c.seed = grid_seed(config.seed, n);
        const auto s = run_study(c);
        out.push_back({n, s.acceptance_rate, 100.0 * s.mean_complete_case, s.inconclusive});
    }
    return out;
}

std::string curve_csv(const std::vector<CurvePoint>& curve) {
    std::ostringstream out;
    out << "n,acceptance_rate,complete_case_pct,inconclusive\n";
    for (const auto& p : curve)
        out << p.n << ',' << fmt(p.acceptance_rate) << ',' << fmt(p.complete_case_pct) << ',' << p.inconclusive << '\n';
    return out.str();
}

std::string theta_csv_header() { return "n,rep,theta,ci_lower,ci_upper,complete_case\n"; }

std::string theta_csv(const StudyResult& study) {
    std::ostringstream out;
    for (std::size_t r = 0; r < study.replications.size(); ++r) {
        const auto& x = study.replications[r];
        out << study.config.n << ',' << r << ',' << fmt(x.theta) << ',' << fmt(x.ci_lower) << ',' << fmt(x.ci_upper) << ','
            << fmt(x.complete_case) << '\n';
    }
    return out.str();
}

}  // namespace mgof::sim
