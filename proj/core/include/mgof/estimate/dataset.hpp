#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mgof::est {

// n rows of (R_k, X*_k) per variable. Missing proxies are stored as NaN and
// R_k is derived from them, so X*_k is missing exactly when R_k = 0.
class ObservedDataset {
public:
    ObservedDataset() = default;
    // `proxies` is n x K with NaN marking missing cells.
    ObservedDataset(std::vector<std::string> names, Eigen::MatrixXd proxies);
    // Masks a full data matrix with 0/1 indicators.
    static ObservedDataset from_full(std::vector<std::string> names, const Eigen::MatrixXd& x,
                                     const Eigen::MatrixXi& r);

    Eigen::Index rows() const { return proxies_.rows(); }
    std::size_t variable_count() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }

    bool observed(Eigen::Index row, std::size_t k) const { return indicators_(row, k) == 1.0; }
    double indicator(Eigen::Index row, std::size_t k) const { return indicators_(row, k); }
    double proxy(Eigen::Index row, std::size_t k) const { return proxies_(row, k); }
    const Eigen::MatrixXd& indicators() const { return indicators_; }
    const Eigen::MatrixXd& proxies() const { return proxies_; }

    std::size_t index_of(const std::string& name) const;  // throws std::invalid_argument
    // Columns permuted so that column p holds variable order[p].
    ObservedDataset reorder(std::span<const std::size_t> order) const;
    ObservedDataset select_rows(std::span<const Eigen::Index> rows) const;

    double complete_case_fraction() const;
    Eigen::Index observed_count(std::size_t k) const;

private:
    std::vector<std::string> names_;
    Eigen::MatrixXd proxies_;
    Eigen::MatrixXd indicators_;
};

}  // namespace mgof::est
