#pragma once

#include <span>
#include <string>

#include "mgof/estimate/cascade.hpp"
#include "mgof/estimate/dataset.hpp"
#include "mgof/gof/report.hpp"

namespace mgof::gof {

// raw refers 2 rho itself to chi2_df; rao_scott refers it to
// scale * chi2_{scaled_df}, the second-order Rao-Scott approximation of
// its law under inverse-probability weights.
enum class Calibration { raw, rao_scott };

Calibration parse_calibration(const std::string& s);
std::string to_string(Calibration c);

struct SequentialOptions {
    double alpha = 0.05;
    Calibration calibration = Calibration::rao_scott;
    num::FitOptions fit;
    const graph::MDag* declared = nullptr;  // MNAR only: structure gate
};

// Backward loop over the order; each step refers 2 rho (calibrated) to chi2_df and the
// run stops at the first rejection or inconclusive step.
TestReport test_sequential_mar(const est::ObservedDataset& data, std::span<const std::size_t> order,
                               const SequentialOptions& options = {});
TestReport test_sequential_mnar(const est::ObservedDataset& data, std::span<const std::size_t> order,
                                const SequentialOptions& options = {});

}  // namespace mgof::gof
