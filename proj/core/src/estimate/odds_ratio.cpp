#include "mgof/estimate/odds_ratio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mgof/estimate/features.hpp"
#include "mgof/graph/mdag.hpp"
#include "mgof/numerics/parallel.hpp"
#include "mgof/numerics/random.hpp"

namespace mgof::est {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

// Empirical quantile with linear interpolation between order statistics.
double quantile(const std::vector<double>& sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

double odds_ratio_equation(const Eigen::MatrixXd& r, std::size_t k, std::size_t j, const Eigen::VectorXd& wk,
                           const Eigen::VectorXd& wj, const Eigen::VectorXd& v) {
    if (k == j) throw std::invalid_argument("odds ratio needs two distinct indicators");
    if (k > j) return odds_ratio_equation(r, j, k, wj, wk, v);
    const auto n = r.rows();
    const auto kk = static_cast<Eigen::Index>(k);
    const auto jj = static_cast<Eigen::Index>(j);
    double num = 0.0, den = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        bool rest = true;
        for (Eigen::Index m = 0; m < r.cols() && rest; ++m)
            if (m != kk && m != jj && r(i, m) != 1.0) rest = false;
        if (!rest) continue;
        const bool rk = r(i, kk) == 1.0, rj = r(i, jj) == 1.0;
        if (!rk && !rj) num += v[i];
        if (rk && rj) den += v[i] * ((1.0 - wk[i]) / wk[i]) * ((1.0 - wj[i]) / wj[i]);
    }
    if (den == 0.0 || !std::isfinite(den)) return nan;
    return num / den;
}

OddsRatioPoint odds_ratio_point(const ObservedDataset& data, std::size_t k, std::size_t j,
                                const num::FitOptions& opt) {
    const auto kv = data.variable_count();
    if (k >= kv || j >= kv || k == j) throw std::invalid_argument("odds ratio needs two distinct variables");
    const auto n = data.rows();
    OddsRatioPoint out;

    auto propensity = [&](std::size_t target, Eigen::VectorXd& w) -> bool {
        FeatureSpec spec;
        for (std::size_t m = 0; m < kv; ++m)
            if (m != target) spec.counterfactuals.push_back(m);
        Features f;
        try {
            f = build_features(data, target, spec);
        } catch (const EmptySupport& e) {
            out.failure = e.what();
            return false;
        }
        w = Eigen::VectorXd::Constant(n, nan);
        if (f.outcome.minCoeff() == f.outcome.maxCoeff()) {
            for (auto i : f.rows) w[i] = f.outcome[0];
            return true;
        }
        const auto fit = num::fit_weighted_logistic(f.design, f.outcome, Eigen::VectorXd::Ones(f.design.rows()), opt);
        if (!fit.converged) {
            out.failure = "propensity for " + graph::indicator_name(data.names()[target]) +
                          " failed: " + num::to_string(fit.status);
            return false;
        }
        const Eigen::VectorXd p = fit.predict(f.design.values);
        for (std::size_t r = 0; r < f.rows.size(); ++r) w[f.rows[r]] = p[static_cast<Eigen::Index>(r)];
        return true;
    };

    Eigen::VectorXd wk, wj;
    if (!propensity(k, wk) || !propensity(j, wj)) return out;
    out.theta = odds_ratio_equation(data.indicators(), k, j, wk, wj, Eigen::VectorXd::Ones(n));
    if (!std::isfinite(out.theta) || out.theta <= 0.0) {
        out.failure = std::isfinite(out.theta) ? "no rows with both indicators 0" : "zero denominator";
        return out;
    }
    out.ok = true;
    return out;
}

OddsRatioEstimate estimate_odds_ratio(const ObservedDataset& data, std::size_t k, std::size_t j,
                                      const OddsRatioOptions& opt) {
    if (!(opt.alpha > 0.0 && opt.alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    if (opt.n_bootstrap < 1) throw std::invalid_argument("at least one bootstrap resample is required");
    OddsRatioEstimate out;
    out.k = k;
    out.j = j;
    const auto point = odds_ratio_point(data, k, j, opt.fit);
    if (!point.ok) {
        out.failure = point.failure;
        out.theta_hat = nan;
        out.ci_lower = out.ci_upper = out.p_value = nan;
        return out;
    }
    out.theta_hat = point.theta;

    const auto n = data.rows();
    std::vector<double> draws(static_cast<std::size_t>(opt.n_bootstrap), nan);
    num::parallel_for(draws.size(), opt.threads, [&](std::size_t b) {
        auto rng = num::Rng::child(opt.seed, b);
        std::vector<Eigen::Index> rows(static_cast<std::size_t>(n));
        for (auto& r : rows) r = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
        const auto res = odds_ratio_point(data.select_rows(rows), k, j, opt.fit);
        if (res.ok) draws[b] = res.theta;
    });

    std::vector<double> ok;
    for (double d : draws)
        if (std::isfinite(d)) ok.push_back(d);
    out.n_bootstrap = static_cast<int>(ok.size());
    out.failed_resamples = opt.n_bootstrap - out.n_bootstrap;
    if (ok.empty()) {
        out.failure = "every bootstrap resample failed";
        out.ci_lower = out.ci_upper = out.p_value = nan;
        return out;
    }
    std::sort(ok.begin(), ok.end());
    out.ci_lower = quantile(ok, opt.alpha / 2.0);
    out.ci_upper = quantile(ok, 1.0 - opt.alpha / 2.0);
    const auto below = static_cast<double>(std::count_if(ok.begin(), ok.end(), [](double t) { return t <= 1.0; }));
    const auto above = static_cast<double>(std::count_if(ok.begin(), ok.end(), [](double t) { return t >= 1.0; }));
    out.p_value = std::min(1.0, 2.0 * std::min(below, above) / static_cast<double>(ok.size()));
    out.ci_excludes_estimate = out.theta_hat < out.ci_lower || out.theta_hat > out.ci_upper;
    out.ok = true;
    return out;
}

}  // namespace mgof::est
