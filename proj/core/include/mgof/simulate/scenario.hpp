#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "mgof/estimate/dataset.hpp"
#include "mgof/gof/sequential.hpp"
#include "mgof/numerics/random.hpp"

namespace mgof::sim {

enum class Scenario { mar_null, mar_alt, mnar_null, mnar_alt, bp_null, bp_alt };
enum class Distribution { gaussian, binary };

struct ScenarioConfig {
    Scenario scenario = Scenario::mar_null;
    Distribution dist = Distribution::binary;
    std::size_t k = 4;
    Eigen::Index n = 1000;
    int reps = 100;
    double lo = 0.0;  // coefficient range of the missingness models
    double hi = 2.0;
    double alpha = 0.05;
    gof::Calibration calibration = gof::Calibration::rao_scott;
    std::uint64_t seed = 0;
    int n_bootstrap = 200;  // block-parallel scenarios
    unsigned threads = 1;
};

void validate(const ScenarioConfig& config);  // throws std::invalid_argument

Scenario parse_scenario(const std::string& name);
Distribution parse_distribution(const std::string& name);
std::string to_string(Scenario s);
std::string to_string(Distribution d);
bool is_block_parallel(Scenario s);

// Binary chain P(X_k = 1 | X_<k) = expit(a0_k + sum_{j<k} a(k, j) X_j).
struct BinaryChain {
    Eigen::VectorXd a0;
    Eigen::MatrixXd a;  // strictly lower triangular
};

// Coefficients drawn from U(-1, 1).
BinaryChain draw_binary_chain(std::size_t k, num::Rng& rng);
Eigen::MatrixXd generate_binary(Eigen::Index n, const BinaryChain& chain, num::Rng& rng);
// sigma_ij = 1 - |i - j| / 4, mean zero.
Eigen::MatrixXd banded_covariance(std::size_t k);
Eigen::MatrixXd generate_full_data(const ScenarioConfig& config, num::Rng& rng);

// Missingness model coefficients, all drawn from U(lo, hi). Row k holds the
// coefficients of R_k: b on R_j (or X_j in the block-parallel null), c on
// R_j X*_j, d on X_i.
struct MissingnessModel {
    Scenario scenario = Scenario::mar_null;
    Eigen::VectorXd a0;
    Eigen::MatrixXd b;
    Eigen::MatrixXd c;
    Eigen::MatrixXd d;
};

MissingnessModel draw_missingness(const ScenarioConfig& config, num::Rng& rng);

// P(R_k = 1 | ...) for one row, reading only the entries of `x` and `r`
// the scenario's formula uses (entries of r for indicators not yet drawn
// are ignored).
double missingness_probability(const MissingnessModel& model, std::size_t k, const Eigen::RowVectorXd& x,
                               const Eigen::RowVectorXi& r);

// Draw order: k = 1..K except the block-parallel alternative, which
// runs k = K..1 because R_k depends on R_>k.
Eigen::MatrixXi generate_missingness(const Eigen::MatrixXd& x, const MissingnessModel& model, num::Rng& rng);

std::vector<std::string> default_names(std::size_t k);  // X1, ..., XK

// Full data, coefficients and masking in one call.
est::ObservedDataset simulate_dataset(const ScenarioConfig& config, num::Rng& rng);

}  // namespace mgof::sim
