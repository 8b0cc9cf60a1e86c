#include "mgof/estimate/features.hpp"

#include <algorithm>

#include "mgof/graph/mdag.hpp"

namespace mgof::est {

Features build_features(const ObservedDataset& data, std::size_t target, const FeatureSpec& spec) {
    const auto k = data.variable_count();
    auto check = [k](const std::vector<std::size_t>& list) {
        for (auto j : list)
            if (j >= k) throw std::out_of_range("feature refers to an unknown variable");
    };
    if (target >= k) throw std::out_of_range("target variable out of range");
    check(spec.indicators);
    check(spec.proxies);
    check(spec.counterfactuals);
    check(spec.require_observed);
    for (auto j : spec.counterfactuals)
        if (j == target) throw std::invalid_argument("a propensity model cannot condition on its own variable");

    std::vector<std::size_t> need = spec.counterfactuals;
    need.insert(need.end(), spec.require_observed.begin(), spec.require_observed.end());

    Features out;
    for (Eigen::Index i = 0; i < data.rows(); ++i)
        if (std::all_of(need.begin(), need.end(), [&](std::size_t j) { return data.observed(i, j); }))
            out.rows.push_back(i);
    if (out.rows.empty())
        throw EmptySupport("no rows left for the propensity of " + graph::indicator_name(data.names()[target]));

    const auto& names = data.names();
    std::vector<std::string> cols{"(intercept)"};
    for (auto j : spec.indicators) cols.push_back(graph::indicator_name(names[j]));
    for (auto j : spec.proxies) cols.push_back(graph::indicator_name(names[j]) + ":" + graph::proxy_name(names[j]));
    for (auto j : spec.counterfactuals) cols.push_back(names[j]);

    const auto n = static_cast<Eigen::Index>(out.rows.size());
    Eigen::MatrixXd x(n, static_cast<Eigen::Index>(cols.size()));
    out.outcome.resize(n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const auto i = out.rows[static_cast<std::size_t>(r)];
        Eigen::Index c = 0;
        x(r, c++) = 1.0;
        for (auto j : spec.indicators) x(r, c++) = data.indicator(i, j);
        for (auto j : spec.proxies) x(r, c++) = data.observed(i, j) ? data.proxy(i, j) : 0.0;
        for (auto j : spec.counterfactuals) x(r, c++) = data.proxy(i, j);
        out.outcome[r] = data.indicator(i, target);
    }
    out.design = num::DesignMatrix(std::move(cols), std::move(x));
    return out;
}

}  // namespace mgof::est
