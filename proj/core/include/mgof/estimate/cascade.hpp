#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mgof/estimate/features.hpp"
#include "mgof/estimate/propensity.hpp"
#include "mgof/graph/mdag.hpp"

namespace mgof::est {

enum class CascadeKind { sequential_mar, sequential_mnar };

struct CascadeStep {
    std::size_t position = 0;  // 0-based position in the order
    std::size_t variable = 0;  // dataset column
    bool tested = false;       // false for the MAR step that only supplies weights

    FeatureSpec null_spec;
    FeatureSpec alt_spec;
    // Model whose propensities enter the weights of later steps. For MAR it
    // is fitted unweighted on all rows; for MNAR it equals null_test.
    num::PropensityFit null_fit;
    // Null and alternative fitted on the same rows with the same weights.
    num::PropensityFit null_test;
    num::PropensityFit alt_fit;
    std::optional<LrStatistic> statistic;
    WeightDiagnostics weights;

    bool constant_outcome = false;  // R_variable constant on the step's rows
    std::string failure;            // why the step could not be evaluated

    // P(R_variable = 1 | null regressors) for every dataset row, NaN where
    // the regressors are unavailable.
    Eigen::VectorXd propensity;
};

struct PropensityCascade {
    CascadeKind kind = CascadeKind::sequential_mar;
    std::vector<std::size_t> order;
    std::vector<CascadeStep> steps;  // execution order
    bool stopped_early = false;
};

// Called after each tested (or failed) step; returning false stops the cascade.
using StepHook = std::function<bool(const CascadeStep&)>;

struct CascadeOptions {
    num::FitOptions fit;
    StepHook on_step;
};

class StructureRefusal : public std::invalid_argument {
public:
    StructureRefusal(const std::string& what, graph::StructureReport report)
        : std::invalid_argument(what), report_(std::move(report)) {}
    const graph::StructureReport& report() const { return report_; }

private:
    graph::StructureReport report_;
};

PropensityCascade fit_cascade_mar(const ObservedDataset& data, std::span<const std::size_t> order,
                                  const CascadeOptions& options = {});

// `declared`, when given, is checked for colluders and criss-crosses first;
// their presence raises StructureRefusal.
PropensityCascade fit_cascade_mnar(const ObservedDataset& data, std::span<const std::size_t> order,
                                   const CascadeOptions& options = {}, const graph::MDag* declared = nullptr);

}  // namespace mgof::est
