#include <gtest/gtest.h>

#include <cmath>

#include "support/test_util.hpp"
#include "tvgc/errors.hpp"
#include "tvgc/procedures.hpp"
#include "tvgc/simulation.hpp"

using namespace tvgc;

namespace {

double correlation(const std::vector<double>& x, const std::vector<double>& y,
                   std::size_t first, std::size_t last) {
    double mx = 0.0;
    double my = 0.0;
    const double n = static_cast<double>(last - first + 1);
    for (std::size_t t = first; t <= last; ++t) {
        mx += x[t];
        my += y[t];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t t = first; t <= last; ++t) {
        sxy += (x[t] - mx) * (y[t] - my);
        sxx += (x[t] - mx) * (x[t] - mx);
        syy += (y[t] - my) * (y[t] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

} // namespace

TEST(SimulateDgp, DeterministicInSeed) {
    SwitchDgp dgp = SwitchDgp::diagonal(300, 0.2, 0.5, 91);
    dgp.causal_coeff = 0.7;
    dgp.causal_start = 100;
    dgp.causal_end = 200;
    const AlignedDataset a = simulate_dgp(dgp);
    const AlignedDataset b = simulate_dgp(dgp);
    EXPECT_EQ(a.returns, b.returns);
    EXPECT_EQ(a.attention, b.attention);
    EXPECT_EQ(a.dates.front(), Date::from_ymd(2020, 1, 1));

    dgp.seed = 92;
    const AlignedDataset c = simulate_dgp(dgp);
    EXPECT_NE(a.returns, c.returns);
}

TEST(SimulateDgp, RejectsUnstableBase) {
    SwitchDgp dgp = SwitchDgp::diagonal(200, 1.01, 0.5, 1);
    try {
        simulate_dgp(dgp);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("spectral radius"), std::string::npos);
    }
}

TEST(SimulateDgp, RejectsBaseCausality) {
    SwitchDgp dgp = SwitchDgp::diagonal(200, 0.3, 0.5, 1);
    dgp.base_coefficients[0](0, 1) = 0.2; // attention -> returns must be zero
    EXPECT_THROW(simulate_dgp(dgp), ValidationError);
}

TEST(SimulateDgp, RejectsBadCausalWindow) {
    SwitchDgp dgp = SwitchDgp::diagonal(200, 0.3, 0.5, 1);
    dgp.causal_coeff = 0.5;
    dgp.causal_start = 150;
    dgp.causal_end = 250; // past the end
    EXPECT_THROW(simulate_dgp(dgp), ValidationError);
    dgp.causal_start = 0; // before the lag order
    dgp.causal_end = 100;
    EXPECT_THROW(simulate_dgp(dgp), ValidationError);
}

TEST(SimulateDgp, CausalWindowCarriesTheCrossCorrelation) {
    SwitchDgp dgp = SwitchDgp::diagonal(600, 0.1, 0.5, 93);
    dgp.causal_coeff = 1.2;
    dgp.causal_start = 200;
    dgp.causal_end = 400;
    const AlignedDataset data = simulate_dgp(dgp);

    std::vector<double> lagged_attention(data.size(), 0.0);
    for (std::size_t t = 1; t < data.size(); ++t) lagged_attention[t] = data.attention[t - 1];
    const double inside = correlation(data.returns, lagged_attention, 201, 400);
    const double before = correlation(data.returns, lagged_attention, 1, 199);
    const double after = correlation(data.returns, lagged_attention, 402, 599);
    EXPECT_GT(inside, 0.5);
    EXPECT_LT(std::abs(before), 0.3);
    EXPECT_LT(std::abs(after), 0.3);
}

TEST(SimulateDgp, SpectralRadiusMatchesConstruction) {
    SwitchDgp dgp = SwitchDgp::diagonal(100, 0.3, 0.5, 1);
    EXPECT_NEAR(base_spectral_radius(dgp), 0.5, 1e-12);
}

// Noise-free null input: the simulated series is deterministic, and the
// pipeline reports the degenerate input as a clean error instead of a
// statistic built from 0/0.
TEST(SimulateDgp, NoiselessDegenerateInputFailsCleanly) {
    SwitchDgp dgp = SwitchDgp::diagonal(120, 0.5, 0.6, 7);
    dgp.intercept << 0.1, 2.0;
    dgp.noise.sd = 0.0;
    const AlignedDataset data = simulate_dgp(dgp);
    EXPECT_THROW(window_statistic(data, 1, false, {0, data.size() - 1}), NumericalError);
    const StatSequence seq = rolling_sequence(data, 1, false, 30);
    EXPECT_EQ(seq.failure_count(), seq.points.size());
    EXPECT_FALSE(seq.points.front().error.empty());
}

TEST(SimulateDgp, ArchNoiseClustersVolatility) {
    SwitchDgp dgp = SwitchDgp::diagonal(4000, 0.1, 0.3, 97);
    dgp.noise.kind = NoiseSpec::Kind::arch;
    dgp.noise.alpha0 = 0.2;
    dgp.noise.alpha1 = 0.8;
    const AlignedDataset data = simulate_dgp(dgp);

    // First-order autocorrelation of squared returns is positive under ARCH.
    std::vector<double> squared;
    for (double r : data.returns) squared.push_back(r * r);
    std::vector<double> lagged(squared.size(), 0.0);
    for (std::size_t t = 1; t < squared.size(); ++t) lagged[t] = squared[t - 1];
    EXPECT_GT(correlation(squared, lagged, 1, squared.size() - 1), 0.15);

    SwitchDgp gaussian = dgp;
    gaussian.noise = NoiseSpec{};
    const AlignedDataset flat = simulate_dgp(gaussian);
    std::vector<double> squared_flat;
    for (double r : flat.returns) squared_flat.push_back(r * r);
    std::vector<double> lagged_flat(squared_flat.size(), 0.0);
    for (std::size_t t = 1; t < squared_flat.size(); ++t) lagged_flat[t] = squared_flat[t - 1];
    EXPECT_LT(std::abs(correlation(squared_flat, lagged_flat, 1, squared_flat.size() - 1)), 0.1);
}

TEST(Experiment, SingleTrialTableIsReproducible) {
    ExperimentCell cell;
    cell.name = "null-smoke";
    cell.dgp = SwitchDgp::diagonal(80, 0.2, 0.5, 0);
    cell.test.algorithm = Algorithm::rolling;
    cell.test.bootstrap.replications = 49;
    cell.test.bootstrap.min_window = 30;
    cell.test.bootstrap.control_window = 30;

    const ExperimentTable a = run_experiment({cell}, 1, 12345);
    const ExperimentTable b = run_experiment({cell}, 1, 12345, /*threads=*/2);
    EXPECT_EQ(a.to_csv(), b.to_csv());
    ASSERT_EQ(a.rows.size(), 1u);
    EXPECT_EQ(a.rows[0].trials, 1);
    EXPECT_EQ(a.rows[0].failures, 0);

    const ExperimentTable c = run_experiment({cell}, 1, 54321);
    EXPECT_EQ(c.rows[0].trials, 1); // different seed still runs clean
}

TEST(Experiment, FailingCellIsAbortedNotFatal) {
    ExperimentCell degenerate;
    degenerate.name = "noise-free";
    degenerate.dgp = SwitchDgp::diagonal(80, 0.2, 0.5, 0);
    degenerate.dgp.noise.sd = 0.0; // every trial fails in the pipeline
    degenerate.test.algorithm = Algorithm::rolling;
    degenerate.test.bootstrap.replications = 9;
    degenerate.test.bootstrap.min_window = 30;
    degenerate.test.bootstrap.control_window = 30;

    ExperimentCell healthy = degenerate;
    healthy.name = "healthy";
    healthy.dgp.noise.sd = 1.0;

    const ExperimentTable table = run_experiment({degenerate, healthy}, 5, 7);
    ASSERT_EQ(table.rows.size(), 2u);
    EXPECT_TRUE(table.rows[0].aborted);
    EXPECT_EQ(table.rows[0].failures, 5);
    EXPECT_TRUE(std::isnan(table.rows[0].rejection_rate));
    EXPECT_FALSE(table.rows[1].aborted);
    EXPECT_EQ(table.rows[1].failures, 0);
    EXPECT_NE(table.summary().find("aborted"), std::string::npos);
}

// Detection sharpens with the sample: the fraction of the true causal
// window covered by dated episodes is monotone over T = 200, 400, 800 in
// this seeded experiment.
TEST(Experiment, EpisodeCoverageGrowsWithSampleSize) {
    double previous = -1.0;
    for (std::size_t length : {200u, 400u, 800u}) {
        ExperimentCell cell;
        cell.name = "coverage-" + std::to_string(length);
        cell.dgp = SwitchDgp::diagonal(length, 0.2, 0.5, 0);
        cell.dgp.causal_coeff = 1.5;
        cell.dgp.causal_start = length / 4;
        cell.dgp.causal_end = 3 * length / 4;
        cell.test.algorithm = Algorithm::rolling;
        cell.test.bootstrap.replications = 99;
        cell.test.bootstrap.min_window = 60;
        cell.test.bootstrap.control_window = 60;

        const ExperimentTable table = run_experiment({cell}, 5, 2026, /*threads=*/2);
        ASSERT_FALSE(table.rows[0].aborted);
        EXPECT_GE(table.rows[0].mean_coverage, previous) << "length " << length;
        previous = table.rows[0].mean_coverage;
    }
    EXPECT_GT(previous, 0.5);
}
