#include "mgof/simulate/scenario.hpp"

#include <stdexcept>

#include "mgof/numerics/logistic.hpp"
#include "mgof/numerics/mvn.hpp"

namespace mgof::sim {

void validate(const ScenarioConfig& c) {
    if (c.k < 1) throw std::invalid_argument("need at least one variable");
    if (c.n < 1) throw std::invalid_argument("sample size must be at least 1");
    if (c.reps < 1) throw std::invalid_argument("need at least one replication");
    if (!(c.lo < c.hi)) throw std::invalid_argument("parameter range needs lo < hi");
    if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    if (is_block_parallel(c.scenario) && c.k < 2) throw std::invalid_argument("block-parallel scenarios need K >= 2");
    if (c.n_bootstrap < 1) throw std::invalid_argument("need at least one bootstrap resample");
}

Scenario parse_scenario(const std::string& name) {
    if (name == "mar-null") return Scenario::mar_null;
    if (name == "mar-alt") return Scenario::mar_alt;
    if (name == "mnar-null") return Scenario::mnar_null;
    if (name == "mnar-alt") return Scenario::mnar_alt;
    if (name == "bp-null") return Scenario::bp_null;
    if (name == "bp-alt") return Scenario::bp_alt;
    throw std::invalid_argument("unknown scenario '" + name + "'");
}

Distribution parse_distribution(const std::string& name) {
    if (name == "gaussian") return Distribution::gaussian;
    if (name == "binary") return Distribution::binary;
    throw std::invalid_argument("unknown distribution '" + name + "'");
}

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::mar_null: return "mar-null";
        case Scenario::mar_alt: return "mar-alt";
        case Scenario::mnar_null: return "mnar-null";
        case Scenario::mnar_alt: return "mnar-alt";
        case Scenario::bp_null: return "bp-null";
        case Scenario::bp_alt: return "bp-alt";
    }
    return "mar-null";
}

std::string to_string(Distribution d) { return d == Distribution::gaussian ? "gaussian" : "binary"; }

bool is_block_parallel(Scenario s) { return s == Scenario::bp_null || s == Scenario::bp_alt; }

BinaryChain draw_binary_chain(std::size_t k, num::Rng& rng) {
    const auto kk = static_cast<Eigen::Index>(k);
    BinaryChain chain{Eigen::VectorXd(kk), Eigen::MatrixXd::Zero(kk, kk)};
    for (Eigen::Index i = 0; i < kk; ++i) {
        chain.a0[i] = rng.uniform(-1.0, 1.0);
        for (Eigen::Index j = 0; j < i; ++j) chain.a(i, j) = rng.uniform(-1.0, 1.0);
    }
    return chain;
}

Eigen::MatrixXd generate_binary(Eigen::Index n, const BinaryChain& chain, num::Rng& rng) {
    const auto k = chain.a0.size();
    Eigen::MatrixXd x(n, k);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index c = 0; c < k; ++c) {
            double eta = chain.a0[c];
            for (Eigen::Index j = 0; j < c; ++j) eta += chain.a(c, j) * x(i, j);
            x(i, c) = rng.bernoulli(num::expit(eta));
        }
    return x;
}

Eigen::MatrixXd banded_covariance(std::size_t k) {
    const auto kk = static_cast<Eigen::Index>(k);
    Eigen::MatrixXd s(kk, kk);
    for (Eigen::Index i = 0; i < kk; ++i)
        for (Eigen::Index j = 0; j < kk; ++j) s(i, j) = 1.0 - static_cast<double>(std::abs(i - j)) * 0.25;
    return s;
}

Eigen::MatrixXd generate_full_data(const ScenarioConfig& c, num::Rng& rng) {
    if (c.dist == Distribution::gaussian) {
        const auto k = static_cast<Eigen::Index>(c.k);
        return num::sample_mvn(c.n, Eigen::VectorXd::Zero(k), banded_covariance(c.k), rng);
    }
    return generate_binary(c.n, draw_binary_chain(c.k, rng), rng);
}

MissingnessModel draw_missingness(const ScenarioConfig& c, num::Rng& rng) {
    const auto k = static_cast<Eigen::Index>(c.k);
    MissingnessModel m{c.scenario, Eigen::VectorXd(k), Eigen::MatrixXd::Zero(k, k), Eigen::MatrixXd::Zero(k, k),
                       Eigen::MatrixXd::Zero(k, k)};
    for (Eigen::Index i = 0; i < k; ++i) {
        m.a0[i] = rng.uniform(c.lo, c.hi);
        for (Eigen::Index j = 0; j < k; ++j) {
            if (i == j) continue;
            m.b(i, j) = rng.uniform(c.lo, c.hi);
            m.c(i, j) = rng.uniform(c.lo, c.hi);
            m.d(i, j) = rng.uniform(c.lo, c.hi);
        }
    }
    return m;
}

double missingness_probability(const MissingnessModel& m, std::size_t k, const Eigen::RowVectorXd& x,
                               const Eigen::RowVectorXi& r) {
    const auto kk = static_cast<Eigen::Index>(k);
    const auto n = m.a0.size();
    double eta = m.a0[kk];
    switch (m.scenario) {
        case Scenario::mar_null:
        case Scenario::mar_alt:
            for (Eigen::Index j = 0; j < kk; ++j) eta += r[j] * (m.b(kk, j) + m.c(kk, j) * x[j]);
            if (m.scenario == Scenario::mar_alt)
                for (Eigen::Index i = kk + 1; i < n; ++i) eta += m.d(kk, i) * x[i];
            break;
        case Scenario::mnar_null:
        case Scenario::mnar_alt:
            for (Eigen::Index i = kk + 1; i < n; ++i) eta += m.d(kk, i) * x[i];
            for (Eigen::Index j = 0; j < kk; ++j) {
                eta += m.b(kk, j) * r[j];
                if (m.scenario == Scenario::mnar_alt) eta += m.c(kk, j) * r[j] * x[j];
            }
            break;
        case Scenario::bp_null:
            for (Eigen::Index j = 0; j < n; ++j)
                if (j != kk) eta += m.b(kk, j) * x[j];
            break;
        case Scenario::bp_alt:
            for (Eigen::Index j = kk + 1; j < n; ++j) eta += m.b(kk, j) * r[j];
            for (Eigen::Index i = 0; i < kk; ++i) eta += m.d(kk, i) * x[i];
            break;
    }
    return num::expit(eta);
}

Eigen::MatrixXi generate_missingness(const Eigen::MatrixXd& x, const MissingnessModel& m, num::Rng& rng) {
    const auto n = x.rows();
    const auto k = x.cols();
    if (m.a0.size() != k) throw std::invalid_argument("missingness model and data differ in K");
    Eigen::MatrixXi r = Eigen::MatrixXi::Zero(n, k);
    const bool backward = m.scenario == Scenario::bp_alt;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::RowVectorXd xi = x.row(i);
        Eigen::RowVectorXi ri = Eigen::RowVectorXi::Zero(k);
        for (Eigen::Index s = 0; s < k; ++s) {
            const auto c = backward ? k - 1 - s : s;
            ri[c] = rng.bernoulli(missingness_probability(m, static_cast<std::size_t>(c), xi, ri));
        }
        r.row(i) = ri;
    }
    return r;
}

std::vector<std::string> default_names(std::size_t k) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= k; ++i) out.push_back("X" + std::to_string(i));
    return out;
}

est::ObservedDataset simulate_dataset(const ScenarioConfig& c, num::Rng& rng) {
    validate(c);
    const auto x = generate_full_data(c, rng);
    const auto model = draw_missingness(c, rng);
    const auto r = generate_missingness(x, model, rng);
    return est::ObservedDataset::from_full(default_names(c.k), x, r);
}

}  // namespace mgof::sim
