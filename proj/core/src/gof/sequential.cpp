#include "mgof/gof/sequential.hpp"

#include <cmath>
#include <limits>

#include "mgof/graph/mdag.hpp"
#include "mgof/numerics/chisq.hpp"

namespace mgof::gof {

namespace {

StepRecord record(const est::ObservedDataset& data, const est::CascadeStep& step, double alpha,
                  Calibration calibration) {
    StepRecord rec;
    rec.k = {step.position + 1};
    rec.variables = {data.names()[step.variable]};
    rec.statistic_name = "2rho";
    rec.diagnostics["rows"] = static_cast<double>(step.weights.rows);
    rec.diagnostics["weight_sum"] = step.weights.sum;
    rec.diagnostics["weight_min"] = step.weights.min;
    rec.diagnostics["weight_max"] = step.weights.max;
    rec.diagnostics["effective_n"] = step.weights.effective_n;
    rec.diagnostics["clipped"] = step.weights.clipped;
    rec.diagnostics["null_iterations"] = step.null_test.iterations;
    rec.diagnostics["alt_iterations"] = step.alt_fit.iterations;
    if (!step.failure.empty() || !step.statistic) {
        rec.statistic = std::numeric_limits<double>::quiet_NaN();
        rec.p_value = std::numeric_limits<double>::quiet_NaN();
        rec.decision = Decision::inconclusive;
        rec.note = step.failure;
        return rec;
    }
    const auto& s = *step.statistic;
    rec.statistic = s.two_rho;
    rec.df = s.df;
    rec.diagnostics["design_effect"] = s.scale;
    rec.diagnostics["scaled_df"] = s.scaled_df;
    if (s.df <= 0)
        rec.p_value = 1.0;
    else if (calibration == Calibration::raw)
        rec.p_value = num::chisq_sf(std::max(0.0, s.two_rho), s.df);
    else
        rec.p_value = num::gamma_q(0.5 * s.scaled_df, 0.5 * std::max(0.0, s.two_rho / s.scale));
    rec.decision = rec.p_value < alpha ? Decision::reject : Decision::accept;
    if (step.constant_outcome)
        rec.note = graph::indicator_name(data.names()[step.variable]) + " is constant on the step's rows";
    return rec;
}

template <class Fit>
TestReport run(const char* model, const est::ObservedDataset& data, std::span<const std::size_t> order,
               const SequentialOptions& opt, Fit fit) {
    if (!(opt.alpha > 0.0 && opt.alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    TestReport report;
    report.model = model;
    report.alpha = opt.alpha;
    for (auto k : order) {
        if (k >= data.variable_count()) throw std::invalid_argument("order refers to an unknown variable");
        report.order.push_back(data.names()[k]);
    }
    est::CascadeOptions copt;
    copt.fit = opt.fit;
    copt.on_step = [&](const est::CascadeStep& step) {
        report.steps.push_back(record(data, step, opt.alpha, opt.calibration));
        return report.steps.back().decision == Decision::accept;
    };
    fit(copt);
    report.verdict = combine(report.steps);
    return report;
}

}  // namespace

Calibration parse_calibration(const std::string& s) {
    if (s == "raw") return Calibration::raw;
    if (s == "rao-scott") return Calibration::rao_scott;
    throw std::invalid_argument("unknown calibration '" + s + "' (expected raw or rao-scott)");
}

std::string to_string(Calibration c) { return c == Calibration::raw ? "raw" : "rao-scott"; }

TestReport test_sequential_mar(const est::ObservedDataset& data, std::span<const std::size_t> order,
                               const SequentialOptions& opt) {
    return run("seq-mar", data, order, opt,
               [&](const est::CascadeOptions& c) { est::fit_cascade_mar(data, order, c); });
}

TestReport test_sequential_mnar(const est::ObservedDataset& data, std::span<const std::size_t> order,
                                const SequentialOptions& opt) {
    return run("seq-mnar", data, order, opt,
               [&](const est::CascadeOptions& c) { est::fit_cascade_mnar(data, order, c, opt.declared); });
}

}  // namespace mgof::gof
