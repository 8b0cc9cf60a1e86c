#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "mgof/estimate/dataset.hpp"
#include "mgof/numerics/logistic.hpp"

namespace mgof::est {

// Regressor blocks of one propensity model for R_target.
//   indicators      R_j
//   proxies         R_j * X*_j, with X*_j zero-imputed where R_j = 0
//   counterfactuals X_j, available only on rows with R_j = 1
// `require_observed` restricts rows to R_j = 1 without adding columns.
struct FeatureSpec {
    std::vector<std::size_t> indicators;
    std::vector<std::size_t> proxies;
    std::vector<std::size_t> counterfactuals;
    std::vector<std::size_t> require_observed;
};

struct Features {
    num::DesignMatrix design;        // rows restricted to `rows`
    std::vector<Eigen::Index> rows;  // dataset rows kept by the mask
    Eigen::VectorXd outcome;         // R_target on those rows
};

class EmptySupport : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Throws EmptySupport when no row survives the mask.
Features build_features(const ObservedDataset& data, std::size_t target, const FeatureSpec& spec);

}  // namespace mgof::est
