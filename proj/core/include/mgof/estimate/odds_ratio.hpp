#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "mgof/estimate/dataset.hpp"
#include "mgof/numerics/logistic.hpp"

namespace mgof::est {

// Estimating-equation form of OR(R_k, R_j | X_-kj, R_-kj = 1):
//   sum_i v_i [R_-kj = 1, R_k = R_j = 0]
//   ------------------------------------------------------
//   sum_i v_i [R = 1] (1 - W_k)(1 - W_j) / (W_k W_j)
// `r` is n x K with 0/1 entries, `wk`/`wj` the propensities
// P(R_k = 1 | R_-k = 1, X_-k) per row and `v` row weights (frequencies or
// probabilities). Propensities are only read on complete rows. Returns NaN
// when the denominator is zero. Symmetric in (k, j) to the last bit.
double odds_ratio_equation(const Eigen::MatrixXd& r, std::size_t k, std::size_t j, const Eigen::VectorXd& wk,
                           const Eigen::VectorXd& wj, const Eigen::VectorXd& v);

struct OddsRatioPoint {
    double theta = 0.0;
    bool ok = false;
    std::string failure;
};

// Fits W_k and W_j by logistic regression on [1, X_-k] over rows with
// R_-k = 1, then evaluates the estimating equation.
OddsRatioPoint odds_ratio_point(const ObservedDataset& data, std::size_t k, std::size_t j,
                                const num::FitOptions& fit = {});

struct OddsRatioOptions {
    double alpha = 0.05;
    int n_bootstrap = 200;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    num::FitOptions fit;
};

struct OddsRatioEstimate {
    std::size_t k = 0;
    std::size_t j = 0;
    double theta_hat = 0.0;
    double ci_lower = 0.0;
    double ci_upper = 0.0;
    int n_bootstrap = 0;
    int failed_resamples = 0;
    // Two-sided bootstrap p-value for theta = 1.
    double p_value = 1.0;
    bool ok = false;
    bool ci_excludes_estimate = false;  // percentile interval missed theta_hat
    std::string failure;
};

// Percentile bootstrap over row resamples; propensities are refit in every
// resample. Resample b draws from Rng::child(seed, b).
OddsRatioEstimate estimate_odds_ratio(const ObservedDataset& data, std::size_t k, std::size_t j,
                                      const OddsRatioOptions& options = {});

}  // namespace mgof::est
