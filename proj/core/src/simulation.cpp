#include "tvgc/simulation.hpp"

#include <cmath>
#include <sstream>

#include "tvgc/csv.hpp"
#include "tvgc/errors.hpp"
#include "tvgc/parallel.hpp"

namespace tvgc {

SwitchDgp SwitchDgp::diagonal(std::size_t length, double returns_own, double attention_own,
                              std::uint64_t seed) {
    SwitchDgp dgp;
    dgp.length = length;
    dgp.lag_order = 1;
    Eigen::Matrix2d phi;
    phi << returns_own, 0.0, 0.0, attention_own;
    dgp.base_coefficients = {phi};
    dgp.seed = seed;
    return dgp;
}

double base_spectral_radius(const SwitchDgp& dgp) {
    const int p = dgp.lag_order;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(2 * p, 2 * p);
    for (int lag = 0; lag < p; ++lag) {
        companion.block<2, 2>(0, 2 * lag) = dgp.base_coefficients[static_cast<std::size_t>(lag)];
    }
    if (p > 1) {
        companion.block(2, 0, 2 * (p - 1), 2 * (p - 1)) =
            Eigen::MatrixXd::Identity(2 * (p - 1), 2 * (p - 1));
    }
    return companion.eigenvalues().cwiseAbs().maxCoeff();
}

AlignedDataset simulate_dgp(const SwitchDgp& dgp) {
    const int p = dgp.lag_order;
    if (p < 1) throw ValidationError("simulate_dgp: lag order must be >= 1");
    if (dgp.base_coefficients.size() != static_cast<std::size_t>(p)) {
        throw ValidationError("simulate_dgp: need one coefficient matrix per lag");
    }
    for (const Eigen::Matrix2d& phi : dgp.base_coefficients) {
        if (phi(0, 1) != 0.0) {
            throw ValidationError(
                "simulate_dgp: base attention->returns coefficients must be zero; causality "
                "enters only through the causal window");
        }
    }
    if (dgp.length < static_cast<std::size_t>(p) + 2) {
        throw ValidationError("simulate_dgp: length too short for the lag order");
    }
    const bool causal = dgp.causal_coeff != 0.0;
    if (causal) {
        if (dgp.causal_start < static_cast<std::size_t>(p) || dgp.causal_end >= dgp.length ||
            dgp.causal_start > dgp.causal_end) {
            throw ValidationError("simulate_dgp: causal window [" +
                                  std::to_string(dgp.causal_start) + ", " +
                                  std::to_string(dgp.causal_end) +
                                  "] invalid for length " + std::to_string(dgp.length));
        }
    }
    const double radius = base_spectral_radius(dgp);
    if (!(radius < 1.0)) {
        std::ostringstream msg;
        msg << "simulate_dgp: unstable base dynamics (spectral radius " << radius << ")";
        throw ValidationError(msg.str());
    }
    if (dgp.noise.kind == NoiseSpec::Kind::arch &&
        !(dgp.noise.alpha0 >= 0.0 && dgp.noise.alpha1 >= 0.0 && dgp.noise.alpha1 < 1.0)) {
        throw ValidationError("simulate_dgp: arch noise needs alpha0 >= 0, 0 <= alpha1 < 1");
    }

    constexpr int kBurnIn = 100;
    RngStream stream(dgp.seed, /*stream=*/0);

    // ARCH volatility state, initialized at the unconditional variance.
    double h2 = dgp.noise.kind == NoiseSpec::Kind::arch
                    ? dgp.noise.alpha0 / std::max(1e-12, 1.0 - dgp.noise.alpha1)
                    : 0.0;

    std::vector<Eigen::Vector2d> path;
    path.reserve(kBurnIn + dgp.length);
    for (int i = 0; i < p; ++i) path.push_back(Eigen::Vector2d::Zero());

    const std::size_t total = kBurnIn + dgp.length;
    for (std::size_t step = static_cast<std::size_t>(p); step < total; ++step) {
        // Observation index in the output sample; negative during burn-in.
        const std::ptrdiff_t t = static_cast<std::ptrdiff_t>(step) - kBurnIn;
        Eigen::Vector2d innovation;
        if (dgp.noise.kind == NoiseSpec::Kind::gaussian) {
            innovation << dgp.noise.sd * stream.normal(), dgp.noise.sd * stream.normal();
        } else {
            const double h = std::sqrt(h2);
            innovation << h * stream.normal(), h * stream.normal();
            h2 = dgp.noise.alpha0 +
                 dgp.noise.alpha1 * 0.5 * (innovation(0) * innovation(0) +
                                           innovation(1) * innovation(1));
        }
        Eigen::Vector2d y = dgp.intercept;
        const bool in_causal_window =
            causal && t >= static_cast<std::ptrdiff_t>(dgp.causal_start) &&
            t <= static_cast<std::ptrdiff_t>(dgp.causal_end);
        for (int lag = 1; lag <= p; ++lag) {
            const Eigen::Vector2d& past = path[step - static_cast<std::size_t>(lag)];
            y += dgp.base_coefficients[static_cast<std::size_t>(lag - 1)] * past;
            if (in_causal_window) y(0) += dgp.causal_coeff * past(1);
        }
        y += innovation;
        path.push_back(y);
    }

    AlignedDataset out;
    out.country = "synthetic";
    out.meta["dgp"] = causal ? "switch" : "null";
    out.meta["causal_coeff"] = csv::format_double(dgp.causal_coeff);
    if (causal) {
        out.meta["causal_start"] = std::to_string(dgp.causal_start);
        out.meta["causal_end"] = std::to_string(dgp.causal_end);
    }
    const Date epoch = Date::from_ymd(2020, 1, 1);
    out.dates.reserve(dgp.length);
    out.returns.reserve(dgp.length);
    out.attention.reserve(dgp.length);
    // The first p output observations are the last p burn-in states, so the
    // sample starts in-distribution.
    for (std::size_t t = 0; t < dgp.length; ++t) {
        const Eigen::Vector2d& y = path[kBurnIn + t];
        out.dates.push_back(epoch + static_cast<std::int32_t>(t));
        out.returns.push_back(y(0));
        out.attention.push_back(y(1));
    }
    return out;
}

namespace {

struct TrialMetrics {
    bool ok = false;
    std::string error;
    bool rejected = false;      // episode opened inside the control window
    bool detected = false;      // any episode
    bool has_bias = false;
    double origination_bias = 0.0;
    double termination_bias = 0.0;
    double coverage = 0.0;
    std::size_t episode_count = 0;
};

TrialMetrics run_trial(const ExperimentCell& cell, std::uint64_t base_seed,
                       std::size_t cell_index, int trial) {
    TrialMetrics metrics;
    try {
        SwitchDgp dgp = cell.dgp;
        dgp.seed = derive_seed(base_seed, 2 * cell_index, static_cast<std::uint64_t>(trial));
        const AlignedDataset data = simulate_dgp(dgp);

        BootstrapConfig cfg = cell.test.bootstrap;
        cfg.seed = derive_seed(base_seed, 2 * cell_index + 1, static_cast<std::uint64_t>(trial));

        const int p = dgp.lag_order;
        const CriticalValueSequence cv =
            critical_values(data, p, cell.test.algorithm, cell.test.robust, cfg);
        const StatSequence stats =
            compute_sequence(data, cell.test.algorithm, p, cell.test.robust, cfg.min_window);
        const std::vector<CausalEpisode> episodes =
            date_episodes(stats, cv, cell.test.min_duration);

        metrics.ok = true;
        metrics.episode_count = episodes.size();
        metrics.detected = !episodes.empty();
        const std::size_t control_last = cfg.min_window - 1 + cfg.control_window - 1;
        for (const CausalEpisode& episode : episodes) {
            if (episode.start_index <= control_last) metrics.rejected = true;
        }
        if (dgp.causal_coeff != 0.0 && !episodes.empty()) {
            metrics.has_bias = true;
            metrics.origination_bias = static_cast<double>(episodes.front().start_index) -
                                       static_cast<double>(dgp.causal_start);
            metrics.termination_bias = static_cast<double>(episodes.back().end_index) -
                                       static_cast<double>(dgp.causal_end);
            std::size_t covered = 0;
            for (std::size_t t = dgp.causal_start; t <= dgp.causal_end; ++t) {
                for (const CausalEpisode& episode : episodes) {
                    if (t >= episode.start_index && t <= episode.end_index) {
                        ++covered;
                        break;
                    }
                }
            }
            metrics.coverage = static_cast<double>(covered) /
                               static_cast<double>(dgp.causal_end - dgp.causal_start + 1);
        }
    } catch (const std::exception& e) {
        metrics.ok = false;
        metrics.error = e.what();
    }
    return metrics;
}

} // namespace

ExperimentTable run_experiment(const std::vector<ExperimentCell>& grid, int trials,
                               std::uint64_t seed, int threads) {
    if (trials < 1) throw ValidationError("run_experiment: trials must be >= 1");
    ExperimentTable table;
    table.rows.reserve(grid.size());

    for (std::size_t cell_index = 0; cell_index < grid.size(); ++cell_index) {
        const ExperimentCell& cell = grid[cell_index];
        std::vector<TrialMetrics> metrics(static_cast<std::size_t>(trials));
        detail::parallel_for_index(metrics.size(), threads, [&](std::size_t trial) {
            metrics[trial] = run_trial(cell, seed, cell_index, static_cast<int>(trial));
        });

        ExperimentCellResult row;
        row.name = cell.name;
        row.algorithm = cell.test.algorithm;
        row.robust = cell.test.robust;
        row.trials = trials;
        int successes = 0;
        int rejections = 0;
        int detections = 0;
        int bias_trials = 0;
        double orig_bias = 0.0;
        double term_bias = 0.0;
        double coverage = 0.0;
        double episode_count = 0.0;
        for (const TrialMetrics& m : metrics) {
            if (!m.ok) {
                ++row.failures;
                continue;
            }
            ++successes;
            rejections += m.rejected ? 1 : 0;
            detections += m.detected ? 1 : 0;
            episode_count += static_cast<double>(m.episode_count);
            if (m.has_bias) {
                ++bias_trials;
                orig_bias += m.origination_bias;
                term_bias += m.termination_bias;
                coverage += m.coverage;
            }
        }
        row.aborted = row.failures * 5 > trials; // >20% failed
        if (row.aborted || successes == 0) {
            const double nan = std::nan("");
            row.rejection_rate = nan;
            row.detection_rate = nan;
            row.mean_origination_bias = nan;
            row.mean_termination_bias = nan;
            row.mean_coverage = nan;
            row.mean_episode_count = nan;
        } else {
            row.rejection_rate = static_cast<double>(rejections) / successes;
            row.detection_rate = static_cast<double>(detections) / successes;
            row.mean_episode_count = episode_count / successes;
            if (bias_trials > 0) {
                row.mean_origination_bias = orig_bias / bias_trials;
                row.mean_termination_bias = term_bias / bias_trials;
                row.mean_coverage = coverage / bias_trials;
            }
        }
        table.rows.push_back(row);
    }
    return table;
}

std::string ExperimentTable::to_csv() const {
    std::ostringstream out;
    out << "name,algorithm,robust,trials,failures,aborted,rejection_rate,detection_rate,"
           "mean_origination_bias,mean_termination_bias,mean_coverage,mean_episode_count\n";
    for (const ExperimentCellResult& row : rows) {
        out << row.name << ',' << algorithm_name(row.algorithm) << ','
            << (row.robust ? "true" : "false") << ',' << row.trials << ',' << row.failures << ','
            << (row.aborted ? "true" : "false") << ',' << csv::format_double(row.rejection_rate)
            << ',' << csv::format_double(row.detection_rate) << ','
            << csv::format_double(row.mean_origination_bias) << ','
            << csv::format_double(row.mean_termination_bias) << ','
            << csv::format_double(row.mean_coverage) << ','
            << csv::format_double(row.mean_episode_count) << '\n';
    }
    return out.str();
}

std::string ExperimentTable::summary() const {
    std::ostringstream out;
    for (const ExperimentCellResult& row : rows) {
        out << row.name << " (" << algorithm_name(row.algorithm)
            << (row.robust ? ", robust" : ", homoskedastic") << "): ";
        if (row.aborted) {
            out << "aborted, " << row.failures << "/" << row.trials << " trials failed\n";
            continue;
        }
        out << "rejection " << 100.0 * row.rejection_rate << "%, detection "
            << 100.0 * row.detection_rate << "%";
        if (row.mean_coverage > 0.0) {
            out << ", origination bias " << row.mean_origination_bias << " obs, coverage "
                << 100.0 * row.mean_coverage << "%";
        }
        if (row.failures > 0) out << ", " << row.failures << " failed trials";
        out << "\n";
    }
    return out.str();
}

} // namespace tvgc
