#pragma once

#include <Eigen/Dense>

#include "mgof/numerics/random.hpp"

namespace mgof::num {

// Factor L with L L' = covariance for a symmetric positive semi-definite
// matrix. Throws std::invalid_argument otherwise.
Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& covariance);

// n x K matrix of i.i.d. N(mean, covariance) rows.
Eigen::MatrixXd sample_mvn(Eigen::Index n, const Eigen::VectorXd& mean, const Eigen::MatrixXd& covariance, Rng& rng);

}  // namespace mgof::num
