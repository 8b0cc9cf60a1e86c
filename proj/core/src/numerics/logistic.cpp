#include "mgof/numerics/logistic.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace mgof::num {

double expit(double x) {
    if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double log_expit(double x) {
    if (x >= 0) return -std::log1p(std::exp(-x));
    return x - std::log1p(std::exp(x));
}

double logit(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("logit needs p in (0, 1)");
    return std::log(p / (1.0 - p));
}

DesignMatrix::DesignMatrix(std::vector<std::string> n, Eigen::MatrixXd v)
    : names(std::move(n)), values(std::move(v)) {
    if (values.cols() < 1) throw std::invalid_argument("design matrix needs at least the intercept column");
    if (static_cast<Eigen::Index>(names.size()) != values.cols())
        throw std::invalid_argument("one name per design column is required");
    std::unordered_set<std::string> seen;
    for (const auto& name : names)
        if (!seen.insert(name).second) throw std::invalid_argument("duplicate feature name '" + name + "'");
    if (!values.allFinite()) throw std::invalid_argument("design matrix has non-finite entries");
    if ((values.col(0).array() != 1.0).any()) throw std::invalid_argument("first design column must be the intercept");
}

Eigen::VectorXd PropensityFit::predict(const Eigen::MatrixXd& x) const {
    Eigen::VectorXd eta = x * coefficients;
    return eta.unaryExpr([](double e) { return expit(e); });
}

double weighted_loglik(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& w,
                       const Eigen::VectorXd& beta) {
    const Eigen::VectorXd eta = x * beta;
    double ll = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
        if (w[i] == 0.0) continue;
        ll += w[i] * (y[i] > 0.5 ? log_expit(eta[i]) : log_expit(-eta[i]));
    }
    return ll;
}

Eigen::VectorXd weighted_score(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& w,
                               const Eigen::VectorXd& beta) {
    const Eigen::VectorXd eta = x * beta;
    Eigen::VectorXd resid(eta.size());
    for (Eigen::Index i = 0; i < eta.size(); ++i) resid[i] = w[i] * (y[i] - expit(eta[i]));
    return x.transpose() * resid;
}

PropensityFit fit_weighted_logistic(const DesignMatrix& design, const Eigen::VectorXd& y,
                                    const Eigen::VectorXd& w, const FitOptions& opt) {
    const auto& x = design.values;
    const auto n = x.rows();
    const auto p = x.cols();
    if (y.size() != n || w.size() != n) throw std::invalid_argument("design, outcome and weights differ in length");
    double w1 = 0.0, w0 = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(w[i] >= 0.0) || !std::isfinite(w[i])) throw std::invalid_argument("weights must be finite and nonnegative");
        if (y[i] == 1.0)
            w1 += w[i];
        else if (y[i] == 0.0)
            w0 += w[i];
        else
            throw std::invalid_argument("outcome must be 0 or 1");
    }

    PropensityFit fit;
    fit.coefficients = Eigen::VectorXd::Zero(p);
    fit.n_effective = w0 + w1;
    if (w0 == 0.0 || w1 == 0.0) {
        fit.status = FitStatus::degenerate_outcome;
        fit.weighted_loglik = 0.0;
        return fit;
    }

    // Start from the intercept-only MLE.
    fit.coefficients[0] = std::log(w1 / w0);
    double ll = weighted_loglik(x, y, w, fit.coefficients);
    Eigen::VectorXd score = weighted_score(x, y, w, fit.coefficients);

    for (int iter = 0;; ++iter) {
        fit.iterations = iter;
        fit.score_norm = score.lpNorm<Eigen::Infinity>();
        if (fit.score_norm < opt.tolerance) {
            fit.status = FitStatus::converged;
            break;
        }
        if (iter == opt.max_iterations) {
            fit.status = FitStatus::max_iterations;
            break;
        }
        const Eigen::VectorXd eta = x * fit.coefficients;
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double pi = expit(eta[i]);
            v[i] = w[i] * pi * (1.0 - pi);
        }
        const Eigen::MatrixXd info = x.transpose() * v.asDiagonal() * x;
        const Eigen::VectorXd step = info.completeOrthogonalDecomposition().solve(score);

        // Near the optimum the likelihood change drops below rounding error,
        // so a decrease within that noise still counts as progress.
        const double slack = 1e-12 * (1.0 + std::abs(ll));
        double t = 1.0;
        Eigen::VectorXd next;
        double next_ll = 0.0;
        bool improved = false;
        for (int h = 0; h < 40; ++h, t *= 0.5) {
            next = fit.coefficients + t * step;
            next_ll = weighted_loglik(x, y, w, next);
            if (next_ll >= ll - slack) {
                improved = true;
                break;
            }
        }
        if (!improved) {
            fit.status = fit.score_norm < opt.stall_tolerance ? FitStatus::converged : FitStatus::stalled;
            break;
        }
        fit.coefficients = next;
        ll = next_ll;
        score = weighted_score(x, y, w, fit.coefficients);
        if (fit.coefficients.lpNorm<Eigen::Infinity>() > opt.separation_bound) {
            fit.iterations = iter + 1;
            fit.score_norm = score.lpNorm<Eigen::Infinity>();
            fit.status = FitStatus::separation;
            break;
        }
    }
    fit.converged = fit.status == FitStatus::converged;
    fit.weighted_loglik = ll;

    const Eigen::VectorXd eta = x * fit.coefficients;
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double pi = expit(eta[i]);
        v[i] = w[i] * pi * (1.0 - pi);
    }
    fit.rank = (x.transpose() * v.asDiagonal() * x).eval().completeOrthogonalDecomposition().rank();
    return fit;
}

std::string to_string(FitStatus s) {
    switch (s) {
        case FitStatus::converged: return "converged";
        case FitStatus::max_iterations: return "iteration limit reached";
        case FitStatus::separation: return "separation (diverging coefficients)";
        case FitStatus::degenerate_outcome: return "outcome constant under positive weight";
        case FitStatus::stalled: return "line search stalled";
    }
    return "unknown";
}

}  // namespace mgof::num
