#include "mgof/gof/block_parallel.hpp"

#include <cmath>

namespace mgof::gof {

TestReport test_block_parallel(const est::ObservedDataset& data, const est::OddsRatioOptions& opt) {
    if (!(opt.alpha > 0.0 && opt.alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    TestReport report;
    report.model = "block-parallel";
    report.alpha = opt.alpha;
    report.order = data.names();
    const auto k = data.variable_count();
    std::uint64_t pair = 0;
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b, ++pair) {
            auto o = opt;
            o.seed = opt.seed + pair;
            const auto est = est::estimate_odds_ratio(data, a, b, o);
            StepRecord rec;
            rec.k = {a + 1, b + 1};
            rec.variables = {data.names()[a], data.names()[b]};
            rec.statistic_name = "theta";
            rec.statistic = est.theta_hat;
            rec.ci = std::make_pair(est.ci_lower, est.ci_upper);
            rec.p_value = est.p_value;
            rec.diagnostics["bootstrap"] = est.n_bootstrap;
            rec.diagnostics["failed_resamples"] = est.failed_resamples;
            // Too few usable resamples to trust the interval.
            if (!est.ok || est.n_bootstrap * 2 < opt.n_bootstrap) {
                rec.decision = Decision::inconclusive;
                rec.note = est.ok ? "more than half of the bootstrap resamples failed" : est.failure;
            } else {
                rec.decision = (est.ci_lower > 1.0 || est.ci_upper < 1.0) ? Decision::reject : Decision::accept;
                if (est.ci_excludes_estimate) rec.note = "percentile interval does not contain the point estimate";
            }
            report.steps.push_back(std::move(rec));
        }
    }
    report.verdict = combine(report.steps);
    return report;
}

}  // namespace mgof::gof
