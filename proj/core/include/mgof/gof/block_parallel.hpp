#pragma once

#include "mgof/estimate/dataset.hpp"
#include "mgof/estimate/odds_ratio.hpp"
#include "mgof/gof/report.hpp"

namespace mgof::gof {

// Every pair (k, j), k < j, is evaluated; a pair rejects when its bootstrap
// interval excludes 1. Pair (k, j) bootstraps from seed + pair index.
TestReport test_block_parallel(const est::ObservedDataset& data, const est::OddsRatioOptions& options = {});

}  // namespace mgof::gof
