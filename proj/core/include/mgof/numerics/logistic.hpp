#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mgof::num {

double expit(double x);
double log_expit(double x);  // log(expit(x)) without overflow
double logit(double p);

// Regressors for one propensity model. The first column is the intercept.
struct DesignMatrix {
    std::vector<std::string> names;
    Eigen::MatrixXd values;

    DesignMatrix() = default;
    // Validates finiteness, unique names, and an all-ones first column.
    DesignMatrix(std::vector<std::string> names, Eigen::MatrixXd values);

    Eigen::Index rows() const { return values.rows(); }
    Eigen::Index cols() const { return values.cols(); }
};

enum class FitStatus { converged, max_iterations, separation, degenerate_outcome, stalled };

struct FitOptions {
    double tolerance = 1e-8;        // max-norm of the weighted score
    int max_iterations = 100;
    double separation_bound = 30.0; // |beta|_inf beyond this flags separation
    // Accepted as converged when step halving can no longer raise the
    // likelihood and the score is already below this.
    double stall_tolerance = 1e-6;
};

struct PropensityFit {
    Eigen::VectorXd coefficients;
    bool converged = false;
    FitStatus status = FitStatus::max_iterations;
    int iterations = 0;
    double weighted_loglik = 0.0;
    double n_effective = 0.0;  // sum of weights
    double score_norm = 0.0;
    Eigen::Index rank = 0;     // numerical rank of the weighted information matrix

    // Fitted P(y = 1 | x) for each row of `x`.
    Eigen::VectorXd predict(const Eigen::MatrixXd& x) const;
};

// Newton-Raphson on the weighted Bernoulli likelihood with step halving.
// Solves sum_i w_i (y_i - expit(x_i' beta)) x_i = 0. Rank-deficient
// designs get the minimum-norm Newton step. Failures are flagged in the
// result; only malformed input throws.
PropensityFit fit_weighted_logistic(const DesignMatrix& design, const Eigen::VectorXd& outcome,
                                    const Eigen::VectorXd& weights, const FitOptions& options = {});

double weighted_loglik(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& w,
                       const Eigen::VectorXd& beta);
Eigen::VectorXd weighted_score(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& w,
                               const Eigen::VectorXd& beta);

std::string to_string(FitStatus s);

}  // namespace mgof::num
