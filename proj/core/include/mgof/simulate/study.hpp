#pragma once

#include <string>
#include <vector>

#include "mgof/gof/report.hpp"
#include "mgof/simulate/scenario.hpp"

namespace mgof::sim {

struct ReplicationResult {
    gof::Verdict verdict = gof::Verdict::inconclusive;
    double complete_case = 0.0;
    // Sequential scenarios: 1-based position of the rejecting step, 0 if none.
    std::size_t rejected_step = 0;
    // Block-parallel scenarios: estimate for the pair (R1, R2).
    double theta = 0.0;
    double ci_lower = 0.0;
    double ci_upper = 0.0;
};

struct StudyResult {
    ScenarioConfig config;
    std::vector<ReplicationResult> replications;
    int accepted = 0;
    int rejected = 0;
    int inconclusive = 0;
    // accepted / (accepted + rejected); inconclusive replications are
    // reported separately and left out of the denominator.
    double acceptance_rate = 0.0;
    double mean_complete_case = 0.0;
    std::vector<int> step_rejections;  // indexed by 0-based position
    double median_theta = 0.0;         // block-parallel scenarios only
};

// Replication r draws everything from Rng::child(config.seed, r), so the
// result does not depend on config.threads.
StudyResult run_study(const ScenarioConfig& config);
ReplicationResult run_replication(const ScenarioConfig& config, int replication);

struct CurvePoint {
    Eigen::Index n = 0;
    double acceptance_rate = 0.0;
    double complete_case_pct = 0.0;
    int inconclusive = 0;
};

// Seed of the study at grid point n.
std::uint64_t grid_seed(std::uint64_t seed, Eigen::Index n);

// One study per grid point; point n runs with grid_seed(seed, n).
std::vector<CurvePoint> sweep_curve(const ScenarioConfig& config, const std::vector<Eigen::Index>& n_grid);

std::string curve_csv(const std::vector<CurvePoint>& curve);
// One row per replication, without the header: n,rep,theta,ci_lower,ci_upper,complete_case.
std::string theta_csv_header();
std::string theta_csv(const StudyResult& study);

}  // namespace mgof::sim
