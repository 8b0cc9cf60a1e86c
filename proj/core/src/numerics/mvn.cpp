#include "mgof/numerics/mvn.hpp"

#include <stdexcept>

namespace mgof::num {

Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& cov) {
    if (cov.rows() != cov.cols()) throw std::invalid_argument("covariance must be square");
    if (!cov.allFinite()) throw std::invalid_argument("covariance has non-finite entries");
    const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
    if (!cov.isApprox(cov.transpose(), 1e-12) && (cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("covariance must be symmetric");
    const Eigen::Index k = cov.rows();
    if (k == 0) return cov;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(cov);
    if (ldlt.info() != Eigen::Success) throw std::invalid_argument("covariance factorisation failed");
    Eigen::VectorXd d = ldlt.vectorD();
    for (Eigen::Index i = 0; i < k; ++i) {
        if (d[i] < -1e-10 * scale) throw std::invalid_argument("covariance is not positive semi-definite");
        d[i] = d[i] > 0.0 ? std::sqrt(d[i]) : 0.0;
    }
    // cov = P' L D L' P, so P' L sqrt(D) is a square root.
    Eigen::MatrixXd l = ldlt.matrixL();
    Eigen::MatrixXd factor = ldlt.transpositionsP().transpose() * (l * d.asDiagonal());
    return factor;
}

Eigen::MatrixXd sample_mvn(Eigen::Index n, const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov, Rng& rng) {
    if (n < 0) throw std::invalid_argument("sample size must be nonnegative");
    if (mean.size() != cov.rows()) throw std::invalid_argument("mean and covariance dimensions differ");
    const Eigen::MatrixXd factor = psd_factor(cov);
    const Eigen::Index k = mean.size();
    Eigen::MatrixXd z(n, k);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < k; ++j) z(i, j) = rng.normal();
    Eigen::MatrixXd out = z * factor.transpose();
    out.rowwise() += mean.transpose();
    return out;
}

}  // namespace mgof::num
