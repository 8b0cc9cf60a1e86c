#include "mgof/estimate/propensity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mgof::est {

namespace {

// Eigenvalues of M = H_gg.b Sigma_gg enter through tr(M) and tr(M^2);
// H is the weighted information and Sigma = H^+ V H^+ the sandwich
// covariance, both at the null fit.
void design_effect(LrStatistic& out, const Eigen::VectorXd& eta0, const num::DesignMatrix& null_design,
                     const num::DesignMatrix& alt_design, const Eigen::VectorXd& y, const Eigen::VectorXd& w,
                     int df) {
    out.scale = 1.0;
    out.scaled_df = df;
    const auto p = alt_design.cols();
    std::vector<Eigen::Index> added;
    for (Eigen::Index c = 0; c < p; ++c) {
        const auto& nm = alt_design.names[static_cast<std::size_t>(c)];
        if (std::find(null_design.names.begin(), null_design.names.end(), nm) == null_design.names.end())
            added.push_back(c);
    }
    if (added.empty()) return;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(p, p);
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (w[i] == 0.0) continue;
        const double mu = num::expit(eta0[i]);
        const auto x = alt_design.values.row(i).transpose();
        const double e = w[i] * (y[i] - mu);
        h.selfadjointView<Eigen::Lower>().rankUpdate(x, w[i] * mu * (1.0 - mu));
        v.selfadjointView<Eigen::Lower>().rankUpdate(x, e * e);
    }
    h = h.selfadjointView<Eigen::Lower>();
    v = v.selfadjointView<Eigen::Lower>();
    const Eigen::MatrixXd hinv = h.completeOrthogonalDecomposition().pseudoInverse();
    const Eigen::MatrixXd sigma = hinv * v * hinv;
    const auto g = static_cast<Eigen::Index>(added.size());
    Eigen::MatrixXd hg(g, g), sg(g, g);
    for (Eigen::Index a = 0; a < g; ++a)
        for (Eigen::Index b = 0; b < g; ++b) {
            hg(a, b) = hinv(added[a], added[b]);
            sg(a, b) = sigma(added[a], added[b]);
        }
    const Eigen::MatrixXd info = hg.completeOrthogonalDecomposition().pseudoInverse();
    const Eigen::MatrixXd m = info * sg;
    const double t1 = m.trace();
    const double t2 = (m * m).trace();
    if (!(std::isfinite(t1) && std::isfinite(t2) && t1 > 0.0 && t2 > 0.0)) return;
    out.scale = t2 / t1;
    out.scaled_df = t1 * t1 / t2;
}

}  // namespace

LrStatistic weighted_lr_stat(const num::PropensityFit& null, const num::DesignMatrix& null_design,
                             const num::PropensityFit& alt, const num::DesignMatrix& alt_design,
                             const Eigen::VectorXd& y, const Eigen::VectorXd& w) {
    if (!null.converged || !alt.converged) throw std::invalid_argument("likelihood ratio needs converged fits");
    const auto n = y.size();
    if (null_design.rows() != n || alt_design.rows() != n || w.size() != n)
        throw std::invalid_argument("null and alternative must share rows, outcome and weights");
    if (null.coefficients.size() != null_design.cols() || alt.coefficients.size() != alt_design.cols())
        throw std::invalid_argument("coefficients do not match their design");

    LrStatistic out;
    out.df = static_cast<int>(alt.rank - null.rank);
    if (out.df <= 0) throw std::invalid_argument("alternative must have more free parameters than the null");

    const Eigen::VectorXd eta0 = null_design.values * null.coefficients;
    const Eigen::VectorXd eta1 = alt_design.values * alt.coefficients;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (w[i] == 0.0) continue;
        const double s = y[i] > 0.5 ? 1.0 : -1.0;
        out.rho += w[i] * (num::log_expit(s * eta1[i]) - num::log_expit(s * eta0[i]));
    }
    out.two_rho = 2.0 * out.rho;
    design_effect(out, eta0, null_design, alt_design, y, w, out.df);
    return out;
}

WeightDiagnostics describe_weights(const Eigen::VectorXd& w, int clipped) {
    WeightDiagnostics d;
    d.rows = w.size();
    d.clipped = clipped;
    if (w.size() == 0) return d;
    d.sum = w.sum();
    d.min = w.minCoeff();
    d.max = w.maxCoeff();
    const double sq = w.squaredNorm();
    d.effective_n = sq > 0.0 ? d.sum * d.sum / sq : 0.0;
    return d;
}

}  // namespace mgof::est
