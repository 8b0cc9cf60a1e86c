#include "mgof/estimate/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mgof::est {

ObservedDataset::ObservedDataset(std::vector<std::string> names, Eigen::MatrixXd proxies)
    : names_(std::move(names)), proxies_(std::move(proxies)) {
    if (static_cast<Eigen::Index>(names_.size()) != proxies_.cols())
        throw std::invalid_argument("one name per data column is required");
    for (std::size_t a = 0; a < names_.size(); ++a)
        for (std::size_t b = a + 1; b < names_.size(); ++b)
            if (names_[a] == names_[b]) throw std::invalid_argument("duplicate variable name '" + names_[a] + "'");
    indicators_.resize(proxies_.rows(), proxies_.cols());
    for (Eigen::Index i = 0; i < proxies_.rows(); ++i)
        for (Eigen::Index k = 0; k < proxies_.cols(); ++k) {
            const double v = proxies_(i, k);
            if (std::isinf(v)) throw std::invalid_argument("data contain an infinite value");
            indicators_(i, k) = std::isnan(v) ? 0.0 : 1.0;
        }
}

ObservedDataset ObservedDataset::from_full(std::vector<std::string> names, const Eigen::MatrixXd& x,
                                           const Eigen::MatrixXi& r) {
    if (x.rows() != r.rows() || x.cols() != r.cols()) throw std::invalid_argument("X and R shapes differ");
    Eigen::MatrixXd masked = x;
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index k = 0; k < x.cols(); ++k) {
            if (r(i, k) != 0 && r(i, k) != 1) throw std::invalid_argument("indicators must be 0 or 1");
            if (!std::isfinite(x(i, k))) throw std::invalid_argument("full data must be finite");
            if (r(i, k) == 0) masked(i, k) = std::numeric_limits<double>::quiet_NaN();
        }
    return ObservedDataset(std::move(names), std::move(masked));
}

std::size_t ObservedDataset::index_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw std::invalid_argument("unknown variable '" + name + "'");
    return static_cast<std::size_t>(it - names_.begin());
}

ObservedDataset ObservedDataset::reorder(std::span<const std::size_t> order) const {
    if (order.size() != names_.size()) throw std::invalid_argument("order must list every variable exactly once");
    std::vector<bool> seen(names_.size(), false);
    std::vector<std::string> names;
    Eigen::MatrixXd proxies(rows(), proxies_.cols());
    for (std::size_t p = 0; p < order.size(); ++p) {
        const auto k = order[p];
        if (k >= names_.size() || seen[k]) throw std::invalid_argument("order must list every variable exactly once");
        seen[k] = true;
        names.push_back(names_[k]);
        proxies.col(static_cast<Eigen::Index>(p)) = proxies_.col(static_cast<Eigen::Index>(k));
    }
    return ObservedDataset(std::move(names), std::move(proxies));
}

ObservedDataset ObservedDataset::select_rows(std::span<const Eigen::Index> rows) const {
    Eigen::MatrixXd proxies(static_cast<Eigen::Index>(rows.size()), proxies_.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) proxies.row(static_cast<Eigen::Index>(i)) = proxies_.row(rows[i]);
    ObservedDataset out;
    out.names_ = names_;
    out.proxies_ = std::move(proxies);
    out.indicators_.resize(out.proxies_.rows(), out.proxies_.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        out.indicators_.row(static_cast<Eigen::Index>(i)) = indicators_.row(rows[i]);
    return out;
}

double ObservedDataset::complete_case_fraction() const {
    if (rows() == 0) return 0.0;
    Eigen::Index complete = 0;
    for (Eigen::Index i = 0; i < rows(); ++i)
        if (indicators_.row(i).minCoeff() == 1.0) ++complete;
    return static_cast<double>(complete) / static_cast<double>(rows());
}

Eigen::Index ObservedDataset::observed_count(std::size_t k) const {
    return static_cast<Eigen::Index>(indicators_.col(static_cast<Eigen::Index>(k)).sum());
}

}  // namespace mgof::est
