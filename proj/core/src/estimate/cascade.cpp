#include "mgof/estimate/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mgof::est {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

void check_order(const ObservedDataset& data, std::span<const std::size_t> order) {
    std::vector<std::size_t> sorted(order.begin(), order.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> expected(data.variable_count());
    std::iota(expected.begin(), expected.end(), std::size_t{0});
    if (sorted != expected) throw std::invalid_argument("order must list every variable exactly once");
}

bool constant(const Eigen::VectorXd& y) { return y.size() == 0 || y.minCoeff() == y.maxCoeff(); }

// Propensity of R = 1 per dataset row from a fitted model; constant
// outcomes give the degenerate propensity exactly.
Eigen::VectorXd spread(const Features& f, const num::PropensityFit& fit, Eigen::Index n) {
    Eigen::VectorXd out = Eigen::VectorXd::Constant(n, nan);
    const bool degenerate = constant(f.outcome);
    const Eigen::VectorXd p = degenerate ? Eigen::VectorXd() : fit.predict(f.design.values);
    for (std::size_t r = 0; r < f.rows.size(); ++r) {
        const auto i = static_cast<Eigen::Index>(r);
        out[f.rows[r]] = degenerate ? f.outcome[0] : p[i];
    }
    return out;
}

double inverse_clipped(double p, int& clipped) {
    if (p < propensity_floor) {
        ++clipped;
        p = propensity_floor;
    }
    return 1.0 / std::min(p, 1.0);
}

std::string failed(const std::string& what, const ObservedDataset& data, std::size_t v,
                   const num::PropensityFit& fit) {
    return what + " for " + graph::indicator_name(data.names()[v]) + " failed: " + num::to_string(fit.status);
}

// Fits null and alternative on identical rows and weights and fills the
// statistic, or records why that was impossible.
void test_step(CascadeStep& step, const ObservedDataset& data, const Features& null, const Features& alt,
               const Eigen::VectorXd& w, const num::FitOptions& opt) {
    step.null_test = num::fit_weighted_logistic(null.design, null.outcome, w, opt);
    step.alt_fit = num::fit_weighted_logistic(alt.design, alt.outcome, w, opt);
    if (constant(alt.outcome)) {
        step.constant_outcome = true;
        const int df = static_cast<int>(alt.design.cols() - null.design.cols());
        step.statistic = LrStatistic{0.0, 0.0, df, 1.0, static_cast<double>(df)};
        return;
    }
    if (!step.null_test.converged) {
        step.failure = failed("null fit", data, step.variable, step.null_test);
        return;
    }
    if (!step.alt_fit.converged) {
        step.failure = failed("alternative fit", data, step.variable, step.alt_fit);
        return;
    }
    try {
        step.statistic = weighted_lr_stat(step.null_test, null.design, step.alt_fit, alt.design, alt.outcome, w);
    } catch (const std::invalid_argument& e) {
        step.failure = e.what();
    }
}

bool report(PropensityCascade& out, const CascadeOptions& opt) {
    const auto& step = out.steps.back();
    if (!step.tested && step.failure.empty()) return true;
    const bool go_on = opt.on_step ? opt.on_step(step) : step.failure.empty();
    if (!go_on || !step.failure.empty()) {
        out.stopped_early = true;
        return false;
    }
    return true;
}

}  // namespace

PropensityCascade fit_cascade_mar(const ObservedDataset& data, std::span<const std::size_t> order,
                                  const CascadeOptions& opt) {
    check_order(data, order);
    PropensityCascade out;
    out.kind = CascadeKind::sequential_mar;
    out.order.assign(order.begin(), order.end());
    const auto n = data.rows();
    const auto k = order.size();
    std::vector<Eigen::VectorXd> prop(k);

    for (std::size_t p = k; p-- > 0;) {
        CascadeStep step;
        step.position = p;
        step.variable = order[p];
        step.tested = p + 1 < k;
        const std::vector<std::size_t> before(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(p));
        const std::vector<std::size_t> after(order.begin() + static_cast<std::ptrdiff_t>(p) + 1, order.end());
        step.null_spec = {before, before, {}, {}};
        step.alt_spec = {before, before, after, {}};
        try {
            // Observed-data null on all rows; its propensities weight every
            // earlier step that involves this index.
            const auto obs = build_features(data, step.variable, step.null_spec);
            step.null_fit = num::fit_weighted_logistic(obs.design, obs.outcome, Eigen::VectorXd::Ones(n), opt.fit);
            if (!constant(obs.outcome) && !step.null_fit.converged)
                step.failure = failed("null fit", data, step.variable, step.null_fit);
            else
                prop[p] = spread(obs, step.null_fit, n);

            if (step.tested && step.failure.empty()) {
                const auto alt = build_features(data, step.variable, step.alt_spec);
                auto restricted = step.null_spec;
                restricted.require_observed = after;
                const auto null = build_features(data, step.variable, restricted);
                Eigen::VectorXd w(alt.rows.size());
                int clipped = 0;
                for (std::size_t r = 0; r < alt.rows.size(); ++r) {
                    double weight = 1.0;
                    for (std::size_t q = p + 1; q < k; ++q) weight *= inverse_clipped(prop[q][alt.rows[r]], clipped);
                    w[static_cast<Eigen::Index>(r)] = weight;
                }
                step.weights = describe_weights(w, clipped);
                test_step(step, data, null, alt, w, opt.fit);
            }
        } catch (const EmptySupport& e) {
            step.failure = e.what();
        }
        step.propensity = prop[p].size() ? prop[p] : Eigen::VectorXd::Constant(n, nan);
        out.steps.push_back(std::move(step));
        if (!report(out, opt)) break;
    }
    return out;
}

PropensityCascade fit_cascade_mnar(const ObservedDataset& data, std::span<const std::size_t> order,
                                   const CascadeOptions& opt, const graph::MDag* declared) {
    check_order(data, order);
    if (declared) {
        auto s = graph::detect_structures(*declared);
        if (!s.colluders.empty() || !s.criss_crosses.empty())
            throw StructureRefusal("the declared graph has a colluder or criss-cross structure, so the "
                                   "propensities needed by the sequential MNAR test are not identified",
                                   std::move(s));
    }
    PropensityCascade out;
    out.kind = CascadeKind::sequential_mnar;
    out.order.assign(order.begin(), order.end());
    const auto n = data.rows();
    const auto k = order.size();
    Eigen::VectorXd omega = Eigen::VectorXd::Ones(n);
    int clipped = 0;

    for (std::size_t p = k; p-- > 1;) {
        CascadeStep step;
        step.position = p;
        step.variable = order[p];
        step.tested = true;
        const std::vector<std::size_t> before(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(p));
        const std::vector<std::size_t> after(order.begin() + static_cast<std::ptrdiff_t>(p) + 1, order.end());
        step.null_spec = {before, {}, after, {}};
        step.alt_spec = {before, before, after, {}};
        try {
            const auto null = build_features(data, step.variable, step.null_spec);
            const auto alt = build_features(data, step.variable, step.alt_spec);
            Eigen::VectorXd w(null.rows.size());
            for (std::size_t r = 0; r < null.rows.size(); ++r) w[static_cast<Eigen::Index>(r)] = omega[null.rows[r]];
            step.weights = describe_weights(w, clipped);
            test_step(step, data, null, alt, w, opt.fit);
            step.null_fit = step.null_test;
            if (step.failure.empty()) {
                step.propensity = spread(null, step.null_fit, n);
                clipped = 0;
                for (auto i : null.rows)
                    if (data.observed(i, step.variable)) omega[i] *= inverse_clipped(step.propensity[i], clipped);
            }
        } catch (const EmptySupport& e) {
            step.failure = e.what();
        }
        if (step.propensity.size() == 0) step.propensity = Eigen::VectorXd::Constant(n, nan);
        out.steps.push_back(std::move(step));
        if (!report(out, opt)) break;
    }
    return out;
}

}  // namespace mgof::est
