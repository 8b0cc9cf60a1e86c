#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "mgof/estimate/odds_ratio.hpp"
#include "mgof/numerics/logistic.hpp"
#include "mgof/simulate/scenario.hpp"
#include "mgof/simulate/study.hpp"
#include "law_enumeration.hpp"

using namespace mgof;
using oracle::brute_propensity;
using oracle::enumerate;

namespace {

sim::ScenarioConfig small(sim::Scenario s) {
    sim::ScenarioConfig c;
    c.scenario = s;
    c.n = 600;
    c.reps = 6;
    c.seed = 21;
    c.n_bootstrap = 20;
    return c;
}

}  // namespace

TEST(Scenario, MarNullLawNormalisesAndInverseWeightsRecoverOne) {
    const int k = 3;
    num::Rng rng(3);
    const auto ch = sim::draw_binary_chain(k, rng);
    sim::ScenarioConfig c;
    c.k = k;
    const auto m = sim::draw_missingness(c, rng);
    const auto e = enumerate(ch, m, k);
    EXPECT_NEAR(e.p.sum(), 1.0, 1e-12);

    // sum over complete rows of p(x, R = 1) / prod_k P(R_k = 1 | r_<k = 1, x*_<k)
    double ipw = 0.0;
    for (Eigen::Index i = 0; i < e.p.size(); ++i) {
        if (e.r.row(i).sum() != k) continue;
        double w = 1.0;
        for (int j = 0; j < k; ++j)
            w *= sim::missingness_probability(m, j, e.x.row(i), e.r.row(i).cast<int>());
        ipw += e.p[i] / w;
    }
    EXPECT_NEAR(ipw, 1.0, 1e-12);
}

TEST(Scenario, BlockParallelNullOddsRatioIsOne) {
    const int k = 4;
    num::Rng rng(5);
    const auto ch = sim::draw_binary_chain(k, rng);
    auto c = small(sim::Scenario::bp_null);
    c.lo = -1.0;
    c.hi = 1.0;
    const auto m = sim::draw_missingness(c, rng);
    const auto e = enumerate(ch, m, k);
    const auto w0 = brute_propensity(e, 0);
    const auto w1 = brute_propensity(e, 1);
    EXPECT_NEAR(est::odds_ratio_equation(e.r, 0, 1, w0, w1, e.p), 1.0, 1e-12);
}

TEST(Scenario, BlockParallelAltOddsRatioMatchesCoefficient) {
    const int k = 4;
    num::Rng rng(6);
    const auto ch = sim::draw_binary_chain(k, rng);
    auto c = small(sim::Scenario::bp_alt);
    c.lo = -1.0;
    c.hi = 1.0;
    const auto m = sim::draw_missingness(c, rng);
    const auto e = enumerate(ch, m, k);
    const auto w0 = brute_propensity(e, 0);
    const auto w1 = brute_propensity(e, 1);
    EXPECT_NEAR(est::odds_ratio_equation(e.r, 0, 1, w0, w1, e.p), std::exp(m.b(0, 1)), 1e-10);
}

TEST(Scenario, GeneratedMasksFollowTheModel) {
    auto c = small(sim::Scenario::mnar_null);
    c.n = 40000;
    num::Rng rng(8);
    const auto x = sim::generate_full_data(c, rng);
    const auto m = sim::draw_missingness(c, rng);
    const auto r = sim::generate_missingness(x, m, rng);
    // first indicator: frequency against the averaged model probability
    double expected = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        expected += sim::missingness_probability(m, 0, x.row(i), Eigen::RowVectorXi::Zero(4));
    expected /= static_cast<double>(x.rows());
    EXPECT_NEAR(r.col(0).cast<double>().mean(), expected, 0.01);
}

TEST(Scenario, CovarianceAndBinaryData) {
    const auto s = sim::banded_covariance(4);
    EXPECT_DOUBLE_EQ(s(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(s(0, 1), 0.75);
    EXPECT_DOUBLE_EQ(s(0, 3), 0.25);
    num::Rng rng(1);
    sim::ScenarioConfig c;
    c.n = 200;
    const auto x = sim::generate_full_data(c, rng);
    EXPECT_TRUE(((x.array() == 0.0) || (x.array() == 1.0)).all());
}

TEST(Scenario, ParseAndValidate) {
    for (auto s : {sim::Scenario::mar_null, sim::Scenario::mar_alt, sim::Scenario::mnar_null, sim::Scenario::mnar_alt,
                   sim::Scenario::bp_null, sim::Scenario::bp_alt})
        EXPECT_EQ(sim::parse_scenario(sim::to_string(s)), s);
    EXPECT_EQ(sim::parse_distribution("gaussian"), sim::Distribution::gaussian);
    EXPECT_THROW(sim::parse_scenario("mcar"), std::invalid_argument);
    sim::ScenarioConfig c;
    c.lo = 1.0;
    c.hi = 1.0;
    EXPECT_THROW(sim::validate(c), std::invalid_argument);
    c = {};
    c.scenario = sim::Scenario::bp_null;
    c.k = 1;
    EXPECT_THROW(sim::validate(c), std::invalid_argument);
    c = {};
    c.n = 0;
    EXPECT_THROW(sim::validate(c), std::invalid_argument);
}

TEST(Study, ThreadCountDoesNotChangeResults) {
    for (auto s : {sim::Scenario::mar_alt, sim::Scenario::bp_alt}) {
        auto c = small(s);
        const auto one = sim::run_study(c);
        c.threads = 3;
        const auto three = sim::run_study(c);
        ASSERT_EQ(one.replications.size(), three.replications.size());
        for (std::size_t r = 0; r < one.replications.size(); ++r) {
            EXPECT_EQ(one.replications[r].verdict, three.replications[r].verdict);
            const double a = one.replications[r].theta, b = three.replications[r].theta;
            EXPECT_TRUE(a == b || (std::isnan(a) && std::isnan(b)));
            EXPECT_EQ(one.replications[r].complete_case, three.replications[r].complete_case);
        }
        EXPECT_EQ(sim::theta_csv(one), sim::theta_csv(three));
    }
}

TEST(Study, ReplicationMatchesStudyEntry) {
    const auto c = small(sim::Scenario::mnar_alt);
    const auto s = sim::run_study(c);
    const auto r = sim::run_replication(c, 4);
    EXPECT_EQ(s.replications[4].verdict, r.verdict);
    EXPECT_EQ(s.replications[4].complete_case, r.complete_case);
}

TEST(Study, CountsAndRateExcludeInconclusive) {
    auto c = small(sim::Scenario::mar_null);
    c.n = 40;  // small enough that some steps fail to fit
    c.reps = 30;
    const auto s = sim::run_study(c);
    EXPECT_EQ(s.accepted + s.rejected + s.inconclusive, c.reps);
    if (s.accepted + s.rejected > 0)
        EXPECT_DOUBLE_EQ(s.acceptance_rate, static_cast<double>(s.accepted) / (s.accepted + s.rejected));
    double cc = 0.0;
    for (const auto& r : s.replications) {
        EXPECT_GE(r.complete_case, 0.0);
        EXPECT_LE(r.complete_case, 1.0);
        cc += r.complete_case;
    }
    EXPECT_NEAR(s.mean_complete_case, cc / c.reps, 1e-12);
}

TEST(Study, GridSeedsAndCsv) {
    EXPECT_NE(sim::grid_seed(7, 100), sim::grid_seed(7, 200));
    EXPECT_NE(sim::grid_seed(7, 100), sim::grid_seed(8, 100));
    EXPECT_EQ(sim::grid_seed(7, 100), sim::grid_seed(7, 100));

    auto c = small(sim::Scenario::mar_null);
    c.reps = 3;
    const auto curve = sim::sweep_curve(c, {200, 400});
    ASSERT_EQ(curve.size(), 2u);
    const auto csv = sim::curve_csv(curve);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "n,acceptance_rate,complete_case_pct,inconclusive");
    std::getline(in, line);
    EXPECT_EQ(line.rfind("200,", 0), 0u);
    EXPECT_THROW(sim::sweep_curve(c, {}), std::invalid_argument);

    auto b = small(sim::Scenario::bp_null);
    b.reps = 2;
    const auto study = sim::run_study(b);
    const auto rows = sim::theta_csv(study);
    EXPECT_EQ(std::count(rows.begin(), rows.end(), '\n'), 2);
    EXPECT_EQ(rows.rfind("600,0,", 0), 0u);
    EXPECT_EQ(sim::theta_csv_header(), "n,rep,theta,ci_lower,ci_upper,complete_case\n");
}

TEST(Study, CompleteCasesGrowAcrossRanges) {
    for (auto s : {sim::Scenario::mar_null, sim::Scenario::mnar_null}) {
        double last = 0.0;
        for (auto [lo, hi] : {std::pair{-1.0, 1.0}, std::pair{-0.5, 1.5}, std::pair{0.0, 2.0}}) {
            double sum = 0.0;
            const int reps = 60;
            for (int r = 0; r < reps; ++r) {
                sim::ScenarioConfig c;
                c.scenario = s;
                c.n = 500;
                c.lo = lo;
                c.hi = hi;
                auto rng = num::Rng::child(31, static_cast<std::uint64_t>(r));
                sum += sim::simulate_dataset(c, rng).complete_case_fraction();
            }
            EXPECT_GT(sum / reps, last) << sim::to_string(s) << " at (" << lo << ", " << hi << ")";
            last = sum / reps;
        }
    }
}
