#pragma once

#include <Eigen/Dense>

#include "mgof/numerics/logistic.hpp"

namespace mgof::est {

// Fitted propensities are clipped to [propensity_floor, 1] before inversion.
inline constexpr double propensity_floor = 1e-6;

struct LrStatistic {
    double rho = 0.0;
    double two_rho = 0.0;
    int df = 0;
    // Satterthwaite match of 2 rho to scale * chi2_{scaled_df}, from the
    // eigenvalues of the design effect for the added columns. With unit
    // design effects, scale = 1 and scaled_df = df.
    double scale = 1.0;
    double scaled_df = 0.0;
};

// rho = sum_i w_i (log l_alt(i) - log l_null(i)) over the rows of the
// designs, where l is the Bernoulli likelihood of the observed outcome.
// df is the difference in numerical rank (the column difference for
// full-rank designs). Throws std::invalid_argument if either fit did not
// converge, shapes disagree, or df <= 0.
// Also fills `scale` from the sandwich variance of the alternative score at
// the null fit, matching alternative columns to null columns by name.
LrStatistic weighted_lr_stat(const num::PropensityFit& null, const num::DesignMatrix& null_design,
                             const num::PropensityFit& alt, const num::DesignMatrix& alt_design,
                             const Eigen::VectorXd& outcome, const Eigen::VectorXd& weights);

struct WeightDiagnostics {
    Eigen::Index rows = 0;
    double sum = 0.0;
    double min = 0.0;
    double max = 0.0;
    double effective_n = 0.0;  // (sum w)^2 / sum w^2
    int clipped = 0;           // propensities raised to the floor
};

WeightDiagnostics describe_weights(const Eigen::VectorXd& weights, int clipped);

}  // namespace mgof::est
