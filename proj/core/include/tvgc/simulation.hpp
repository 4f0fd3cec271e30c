#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "tvgc/bootstrap.hpp"
#include "tvgc/dating.hpp"
#include "tvgc/procedures.hpp"
#include "tvgc/series.hpp"

namespace tvgc {

/// Innovation process for the synthetic DGPs. `gaussian` draws independent
/// N(0, sd^2) innovations per equation. `arch` draws both equations from a
/// shared ARCH(1) volatility factor
///   h_t^2 = alpha0 + alpha1 * (eps_{1,t-1}^2 + eps_{2,t-1}^2) / 2,
/// so attention levels carry information about the conditional variance of
/// return shocks; that cross-linkage is what separates the robust and
/// homoskedastic Wald tests in finite samples.
struct NoiseSpec {
    enum class Kind { gaussian, arch };
    Kind kind = Kind::gaussian;
    double sd = 1.0;      // gaussian
    double alpha0 = 0.2;  // arch
    double alpha1 = 0.5;  // arch
};

/// Bivariate VAR with a time-localized attention -> returns block: the
/// returns equation gains coefficient `causal_coeff` on every attention lag
/// for observations in [causal_start, causal_end]; outside that window the
/// attention -> returns block is zero by construction.
struct SwitchDgp {
    std::size_t length = 400;
    int lag_order = 1;
    Eigen::Vector2d intercept = Eigen::Vector2d::Zero();
    /// One matrix per lag; row 0 is the returns equation. The (0,1) entries
    /// (attention -> returns) must be zero; the causal window adds them.
    std::vector<Eigen::Matrix2d> base_coefficients;
    double causal_coeff = 0.0;
    std::size_t causal_start = 0; // 0-based observation index, >= lag_order
    std::size_t causal_end = 0;   // inclusive, < length
    NoiseSpec noise;
    std::uint64_t seed = 0;

    /// Convenience: diagonal AR(1)-per-variable base with own coefficients
    /// (returns_own, attention_own) and no cross terms.
    static SwitchDgp diagonal(std::size_t length, double returns_own, double attention_own,
                              std::uint64_t seed);
};

/// Spectral radius of the companion matrix of the base coefficients.
double base_spectral_radius(const SwitchDgp& dgp);

/// Simulates the DGP (100-observation burn-in, synthetic daily dates from a
/// fixed epoch). Deterministic in dgp.seed. Rejects unstable base dynamics
/// and invalid causal windows.
AlignedDataset simulate_dgp(const SwitchDgp& dgp);

struct ExperimentTestConfig {
    Algorithm algorithm = Algorithm::recursive_evolving;
    bool robust = false;
    BootstrapConfig bootstrap;   // seed is derived per trial, ignore its field
    std::size_t min_duration = 1;
};

struct ExperimentCell {
    std::string name;
    SwitchDgp dgp;               // seed is derived per trial, ignore its field
    ExperimentTestConfig test;
};

struct ExperimentCellResult {
    std::string name;
    Algorithm algorithm = Algorithm::recursive_evolving;
    bool robust = false;
    int trials = 0;
    int failures = 0;
    bool aborted = false;         // more than 20% of trials failed
    double rejection_rate = 0.0;  // episode opening inside the control window
    double detection_rate = 0.0;  // any episode anywhere in the sample
    double mean_origination_bias = 0.0; // first episode start - causal_start
    double mean_termination_bias = 0.0; // last episode end - causal_end
    double mean_coverage = 0.0;   // fraction of the true causal window covered
    double mean_episode_count = 0.0;
};

struct ExperimentTable {
    std::vector<ExperimentCellResult> rows;
    std::string to_csv() const;
    std::string summary() const;
};

/// Runs `trials` end-to-end pipelines (simulate -> bootstrap cv -> sequence
/// -> dating) per cell and aggregates. Per-trial seeds derive from
/// (seed, cell index, trial), so the table is reproducible bit-exactly for
/// any thread count. Individual trial failures are counted, not fatal; a
/// cell is marked aborted when more than 20% of its trials fail.
ExperimentTable run_experiment(const std::vector<ExperimentCell>& grid, int trials,
                               std::uint64_t seed, int threads = 1);

} // namespace tvgc
