#include "commands.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tvgc/artifacts.hpp"
#include "tvgc/bootstrap.hpp"
#include "tvgc/dating.hpp"
#include "tvgc/digest.hpp"
#include "tvgc/errors.hpp"
#include "tvgc/manifest.hpp"
#include "tvgc/procedures.hpp"
#include "tvgc/series.hpp"
#include "tvgc/simulation.hpp"
#include "tvgc/stationarity.hpp"
#include "tvgc/var.hpp"

namespace tvgc::cli {
namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

namespace fs = std::filesystem;

std::uint64_t resolve_seed(const CLI::Option* seed_option, std::uint64_t flag_value) {
    // Flags win over the environment; the environment wins over the default.
    if (seed_option->count() > 0) return flag_value;
    if (const char* env = std::getenv("TVGC_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ValidationError("TVGC_SEED is not an unsigned integer: '" +
                                  std::string(env) + "'");
        }
    }
    return flag_value;
}

RunManifest start_manifest(const std::string& command, std::uint64_t seed) {
    RunManifest manifest;
    manifest.command = command;
    manifest.artifact_version = kVersion;
    manifest.timestamp = utc_timestamp_now();
    manifest.seed = seed;
    return manifest;
}

struct IngestOptions {
    std::string prices_path;
    std::vector<std::string> gsvi_paths;
    std::string country;
    std::vector<std::string> meta; // key=value pairs
    bool rescale_overlap = false;
    int max_gap_days = 3;
    std::size_t min_window = 90;
    std::string out;
};

int run_ingest(const IngestOptions& opt) {
    const RawSeries prices = read_raw_series_csv(opt.prices_path, "prices", "prices");
    std::vector<RawSeries> segments;
    for (std::size_t i = 0; i < opt.gsvi_paths.size(); ++i) {
        segments.push_back(read_raw_series_csv(opt.gsvi_paths[i], "gsvi",
                                               "gsvi-segment-" + std::to_string(i + 1)));
    }
    const StitchResult stitched = stitch_gsvi(
        segments, {.rescale_overlap = opt.rescale_overlap, .max_gap_days = opt.max_gap_days});
    if (opt.rescale_overlap) {
        for (std::size_t i = 0; i < stitched.scale_factors.size(); ++i) {
            if (stitched.scale_factors[i] != 1.0) {
                std::fprintf(stderr, "ingest: segment %zu rescaled by factor %.6f\n", i + 1,
                             stitched.scale_factors[i]);
            }
        }
    }
    const RawSeries returns = log_returns(prices);
    AlignedDataset data = align(stitched.series, returns, opt.country, opt.min_window);
    for (const std::string& pair : opt.meta) {
        const auto eq = pair.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ValidationError("ingest: --meta expects key=value, got '" + pair + "'");
        }
        data.meta[pair.substr(0, eq)] = pair.substr(eq + 1);
    }

    const fs::path out_path =
        opt.out.empty() ? fs::path("aligned_" + opt.country + ".csv") : fs::path(opt.out);
    write_aligned_csv(data, out_path);

    RunManifest manifest = start_manifest("ingest", 0);
    manifest.config["country"] = opt.country;
    manifest.config["rescale_overlap"] = opt.rescale_overlap ? "true" : "false";
    manifest.config["max_gap_days"] = std::to_string(opt.max_gap_days);
    manifest.config["min_window"] = std::to_string(opt.min_window);
    manifest.inputs[opt.prices_path] = sha256_file_hex(opt.prices_path);
    for (const std::string& path : opt.gsvi_paths) {
        manifest.inputs[path] = sha256_file_hex(path);
    }
    manifest.outputs[out_path.string()] = sha256_file_hex(out_path);
    write_manifest(manifest, out_path.string() + ".manifest.json");

    std::printf("ingest: wrote %s (%zu rows, %s to %s)\n", out_path.string().c_str(),
                data.size(), data.dates.front().to_string().c_str(),
                data.dates.back().to_string().c_str());
    return kExitOk;
}

struct StationarityOptions {
    std::string data_path;
    int max_lag = 12;
    int bandwidth = -1;
};

int run_stationarity(const StationarityOptions& opt) {
    const AlignedDataset data = read_aligned_csv(opt.data_path);
    struct RowSpec {
        const char* series_name;
        const std::vector<double>* values;
    };
    const RowSpec rows[] = {{"returns", &data.returns}, {"attention", &data.attention}};
    std::printf("%-10s %-4s %12s  %-10s %s\n", "series", "test", "statistic", "band",
                "lags/bandwidth");
    for (const RowSpec& row : rows) {
        const UnitRootResult adf = adf_test(*row.values, opt.max_lag);
        std::printf("%-10s %-4s %12.4f  %-10s %d\n", row.series_name, "ADF", adf.statistic,
                    band_name(adf.band).c_str(), adf.lags_or_bandwidth);
        const UnitRootResult pp = pp_test(*row.values, opt.bandwidth);
        std::printf("%-10s %-4s %12.4f  %-10s %d\n", row.series_name, "PP", pp.statistic,
                    band_name(pp.band).c_str(), pp.lags_or_bandwidth);
    }
    return kExitOk;
}

struct TestOptions {
    std::string data_path;
    std::string algorithm = "recursive-evolving";
    bool robust = false;
    std::string scheme; // empty = paired default
    std::size_t min_window = 90;
    std::size_t control_window = 90;
    int replications = 499;
    double size = 0.05;
    int max_lag = 12;
    std::size_t min_duration = 1;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out = "tvgc_out";
};

int run_test(const TestOptions& opt) {
    const AlignedDataset data = read_aligned_csv(opt.data_path);
    const Algorithm algorithm = parse_algorithm(opt.algorithm);
    const int threads = opt.threads > 0
                            ? opt.threads
                            : static_cast<int>(std::thread::hardware_concurrency());

    BootstrapConfig cfg;
    cfg.replications = opt.replications;
    cfg.size = opt.size;
    cfg.min_window = opt.min_window;
    cfg.control_window = opt.control_window;
    cfg.seed = opt.seed;
    cfg.scheme = opt.scheme.empty()
                     ? (opt.robust ? BootstrapScheme::wild_rademacher
                                   : BootstrapScheme::iid_residual)
                     : parse_scheme(opt.scheme);

    const int lag = select_lag_bic(data, {0, data.size() - 1}, opt.max_lag);
    std::printf("test: selected lag order %d (BIC, max %d)\n", lag, opt.max_lag);

    const CriticalValueSequence cv =
        critical_values(data, lag, algorithm, opt.robust, cfg, threads);
    for (const std::string& warning : cv.warnings) {
        std::fprintf(stderr, "test: warning: %s\n", warning.c_str());
    }
    if (cv.discarded_replications > 0) {
        std::fprintf(stderr, "test: %d explosive replications redrawn\n",
                     cv.discarded_replications);
    }

    const StatSequence stats =
        compute_sequence(data, algorithm, lag, opt.robust, opt.min_window, threads);
    const std::vector<CausalEpisode> episodes = date_episodes(stats, cv, opt.min_duration);
    const EpisodeReport report = episode_report(episodes, data);

    fs::create_directories(opt.out);
    const fs::path stats_path = fs::path(opt.out) / "stats.csv";
    const fs::path cv_path = fs::path(opt.out) / "cv.csv";
    const fs::path episodes_path = fs::path(opt.out) / "episodes.jsonl";
    write_stat_sequence_csv(stats, data, stats_path);
    write_critical_values_csv(cv, data, cv_path);
    {
        std::ofstream out(episodes_path);
        out << episodes_to_jsonl(report);
    }

    RunManifest manifest = start_manifest("test", opt.seed);
    manifest.config["data"] = opt.data_path;
    manifest.config["algorithm"] = opt.algorithm;
    manifest.config["robust"] = opt.robust ? "true" : "false";
    manifest.config["scheme"] = scheme_name(cfg.scheme);
    manifest.config["min_window"] = std::to_string(opt.min_window);
    manifest.config["control_window"] = std::to_string(opt.control_window);
    manifest.config["replications"] = std::to_string(opt.replications);
    manifest.config["size"] = std::to_string(opt.size);
    manifest.config["max_lag"] = std::to_string(opt.max_lag);
    manifest.config["selected_lag"] = std::to_string(lag);
    manifest.config["min_duration"] = std::to_string(opt.min_duration);
    manifest.inputs[opt.data_path] = sha256_file_hex(opt.data_path);
    manifest.outputs[stats_path.string()] = sha256_file_hex(stats_path);
    manifest.outputs[cv_path.string()] = sha256_file_hex(cv_path);
    manifest.outputs[episodes_path.string()] = sha256_file_hex(episodes_path);
    write_manifest(manifest, fs::path(opt.out) / "manifest.json");

    std::printf("test: %s, %s Wald, threshold %.4f\n", algorithm_name(algorithm).c_str(),
                opt.robust ? "robust" : "homoskedastic", cv.threshold);
    std::fputs(report.text.c_str(), stdout);

    const double failure_density = static_cast<double>(stats.failure_count()) /
                                   static_cast<double>(stats.points.size());
    if (failure_density > 0.10) {
        std::fprintf(stderr, "test: %.1f%% of sequence points failed numerically\n",
                     100.0 * failure_density);
        return kExitNumerical;
    }
    return kExitOk;
}

struct PlotOptions {
    std::string stats_path;
    std::string cv_path;
    std::string out;
    std::string svg;
};

int run_plot_data(const PlotOptions& opt) {
    const auto [stats, dates] = read_stat_sequence_csv(opt.stats_path);
    const auto [cv, cv_dates] = read_critical_values_csv(opt.cv_path);
    const PlotSeries series = merge_plot_series(stats, dates, cv);

    {
        std::ofstream out(opt.out);
        if (!out) throw ValidationError("cannot write '" + opt.out + "'");
        out << plot_series_csv(series);
    }
    RunManifest manifest = start_manifest("plot-data", 0);
    manifest.inputs[opt.stats_path] = sha256_file_hex(opt.stats_path);
    manifest.inputs[opt.cv_path] = sha256_file_hex(opt.cv_path);
    manifest.outputs[opt.out] = sha256_file_hex(opt.out);
    if (!opt.svg.empty()) {
        std::ofstream out(opt.svg);
        if (!out) throw ValidationError("cannot write '" + opt.svg + "'");
        out << plot_series_svg(series);
        out.close();
        manifest.outputs[opt.svg] = sha256_file_hex(opt.svg);
    }
    write_manifest(manifest, opt.out + ".manifest.json");
    std::printf("plot-data: wrote %s (%zu rows, %zu episodes)%s%s\n", opt.out.c_str(),
                series.dates.size(), series.episode_rows.size(),
                opt.svg.empty() ? "" : " and ", opt.svg.c_str());
    return kExitOk;
}

struct SimulateOptions {
    std::string grid_path;
    int trials = 100;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out = "tvgc_experiment";
};

SwitchDgp dgp_from_json(const nlohmann::json& j) {
    SwitchDgp dgp;
    dgp.length = j.at("length").get<std::size_t>();
    dgp.lag_order = j.value("lag_order", 1);
    if (j.contains("intercept")) {
        dgp.intercept << j["intercept"].at(0).get<double>(), j["intercept"].at(1).get<double>();
    }
    if (j.contains("base")) {
        for (const auto& matrix : j["base"]) {
            Eigen::Matrix2d phi;
            phi << matrix.at(0).at(0).get<double>(), matrix.at(0).at(1).get<double>(),
                matrix.at(1).at(0).get<double>(), matrix.at(1).at(1).get<double>();
            dgp.base_coefficients.push_back(phi);
        }
    } else {
        dgp.base_coefficients.assign(static_cast<std::size_t>(dgp.lag_order),
                                     Eigen::Matrix2d::Zero());
        if (dgp.lag_order == 1) {
            dgp.base_coefficients[0] << 0.2, 0.0, 0.0, 0.5;
        }
    }
    dgp.causal_coeff = j.value("causal_coeff", 0.0);
    dgp.causal_start = j.value("causal_start", std::size_t{0});
    dgp.causal_end = j.value("causal_end", std::size_t{0});
    if (j.contains("noise")) {
        const auto& noise = j["noise"];
        const std::string kind = noise.value("kind", "gaussian");
        if (kind == "gaussian") {
            dgp.noise.kind = NoiseSpec::Kind::gaussian;
            dgp.noise.sd = noise.value("sd", 1.0);
        } else if (kind == "arch") {
            dgp.noise.kind = NoiseSpec::Kind::arch;
            dgp.noise.alpha0 = noise.value("alpha0", 0.2);
            dgp.noise.alpha1 = noise.value("alpha1", 0.5);
        } else {
            throw ValidationError("grid: unknown noise kind '" + kind + "'");
        }
    }
    return dgp;
}

int run_simulate(const SimulateOptions& opt) {
    std::ifstream in(opt.grid_path);
    if (!in) throw ValidationError("cannot open grid '" + opt.grid_path + "'");
    nlohmann::json grid_json;
    try {
        in >> grid_json;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("grid: invalid JSON: " + std::string(e.what()));
    }
    if (!grid_json.is_array() || grid_json.empty()) {
        throw ValidationError("grid: expected a non-empty JSON array of cells");
    }

    std::vector<ExperimentCell> grid;
    for (const auto& cell_json : grid_json) {
        ExperimentCell cell;
        cell.name = cell_json.value("name", "cell-" + std::to_string(grid.size()));
        cell.dgp = dgp_from_json(cell_json.at("dgp"));
        const auto& test = cell_json.at("test");
        cell.test.algorithm = parse_algorithm(test.value("algorithm", "recursive-evolving"));
        cell.test.robust = test.value("robust", false);
        cell.test.bootstrap.replications = test.value("replications", 499);
        cell.test.bootstrap.size = test.value("size", 0.05);
        cell.test.bootstrap.min_window = test.value("min_window", std::size_t{90});
        cell.test.bootstrap.control_window = test.value("control_window", std::size_t{90});
        cell.test.bootstrap.scheme =
            test.contains("scheme") ? parse_scheme(test["scheme"].get<std::string>())
                                    : (cell.test.robust ? BootstrapScheme::wild_rademacher
                                                        : BootstrapScheme::iid_residual);
        cell.test.min_duration = test.value("min_duration", std::size_t{1});
        grid.push_back(cell);
    }

    const int threads = opt.threads > 0
                            ? opt.threads
                            : static_cast<int>(std::thread::hardware_concurrency());
    const ExperimentTable table = run_experiment(grid, opt.trials, opt.seed, threads);

    fs::create_directories(opt.out);
    const fs::path table_path = fs::path(opt.out) / "experiment.csv";
    const fs::path summary_path = fs::path(opt.out) / "summary.txt";
    {
        std::ofstream out(table_path);
        out << table.to_csv();
    }
    {
        std::ofstream out(summary_path);
        out << table.summary();
    }
    RunManifest manifest = start_manifest("simulate", opt.seed);
    manifest.config["trials"] = std::to_string(opt.trials);
    manifest.config["grid"] = opt.grid_path;
    manifest.inputs[opt.grid_path] = sha256_file_hex(opt.grid_path);
    manifest.outputs[table_path.string()] = sha256_file_hex(table_path);
    manifest.outputs[summary_path.string()] = sha256_file_hex(summary_path);
    write_manifest(manifest, fs::path(opt.out) / "manifest.json");

    std::fputs(table.summary().c_str(), stdout);
    std::printf("simulate: wrote %s\n", table_path.string().c_str());
    return kExitOk;
}

} // namespace

int run(int argc, char** argv) {
    CLI::App app{"Time-varying Granger causality testing for attention and asset returns"};
    app.require_subcommand(1);

    IngestOptions ingest;
    CLI::App* ingest_cmd = app.add_subcommand(
        "ingest", "Build an aligned dataset from price and attention-index CSV files");
    ingest_cmd->add_option("--prices", ingest.prices_path, "Price CSV (date,value)")
        ->required()
        ->check(CLI::ExistingFile);
    ingest_cmd
        ->add_option("--gsvi", ingest.gsvi_paths,
                     "Attention-index segment CSVs in start-date order (repeatable)")
        ->required()
        ->check(CLI::ExistingFile);
    ingest_cmd->add_option("--country", ingest.country, "Country label for the dataset")
        ->required();
    ingest_cmd->add_option("--meta", ingest.meta,
                           "Extra key=value metadata to carry on the dataset (repeatable)");
    ingest_cmd->add_flag("--rescale-overlap", ingest.rescale_overlap,
                         "Rescale later segments to match overlap means");
    ingest_cmd
        ->add_option("--max-gap-days", ingest.max_gap_days,
                     "Maximum calendar gap between consecutive segments")
        ->capture_default_str();
    ingest_cmd
        ->add_option("--min-window", ingest.min_window,
                     "Minimum aligned length to accept (observations)")
        ->capture_default_str();
    ingest_cmd->add_option("--out", ingest.out, "Output path (default aligned_<country>.csv)");

    StationarityOptions stationarity;
    CLI::App* stationarity_cmd =
        app.add_subcommand("stationarity", "ADF and Phillips-Perron unit-root pre-tests");
    stationarity_cmd->add_option("--data", stationarity.data_path, "Aligned dataset CSV")
        ->required()
        ->check(CLI::ExistingFile);
    stationarity_cmd
        ->add_option("--max-lag", stationarity.max_lag, "Maximum ADF lag (BIC-selected)")
        ->capture_default_str();
    stationarity_cmd
        ->add_option("--bandwidth", stationarity.bandwidth,
                     "PP Bartlett bandwidth (-1 = floor(4(T/100)^(2/9)))")
        ->capture_default_str();

    TestOptions test;
    CLI::App* test_cmd = app.add_subcommand(
        "test", "Run a time-varying causality test with bootstrap critical values");
    test_cmd->add_option("--data", test.data_path, "Aligned dataset CSV")
        ->required()
        ->check(CLI::ExistingFile);
    test_cmd
        ->add_option("--algorithm", test.algorithm,
                     "forward | rolling | recursive-evolving")
        ->capture_default_str();
    test_cmd->add_flag("--robust", test.robust, "Heteroskedasticity-robust Wald statistic");
    test_cmd
        ->add_option("--scheme", test.scheme,
                     "Bootstrap scheme: iid-residual | wild-rademacher (default pairs with "
                     "the Wald variant)");
    test_cmd->add_option("--min-window", test.min_window, "Minimum window f0 in observations")
        ->capture_default_str();
    test_cmd
        ->add_option("--control-window", test.control_window,
                     "Size-control window in observations")
        ->capture_default_str();
    test_cmd->add_option("--reps", test.replications, "Bootstrap replications")
        ->capture_default_str();
    test_cmd->add_option("--size", test.size, "Nominal test size")->capture_default_str();
    test_cmd->add_option("--max-lag", test.max_lag, "Maximum BIC lag order")
        ->capture_default_str();
    test_cmd
        ->add_option("--min-duration", test.min_duration,
                     "Episodes shorter than this many observations are flagged sub-minimal")
        ->capture_default_str();
    const CLI::Option* test_seed =
        test_cmd->add_option("--seed", test.seed, "Bootstrap seed (TVGC_SEED overrides default)")
            ->capture_default_str();
    test_cmd->add_option("--threads", test.threads, "Worker threads (0 = hardware)")
        ->capture_default_str();
    test_cmd->add_option("--out", test.out, "Output directory")->capture_default_str();

    PlotOptions plot;
    CLI::App* plot_cmd = app.add_subcommand(
        "plot-data", "Merge statistic and critical-value sequences into plot files");
    plot_cmd->add_option("--stats", plot.stats_path, "stats.csv from `tvgc test`")
        ->required()
        ->check(CLI::ExistingFile);
    plot_cmd->add_option("--cv", plot.cv_path, "cv.csv from `tvgc test`")
        ->required()
        ->check(CLI::ExistingFile);
    plot_cmd->add_option("--out", plot.out, "Merged plot CSV path")->required();
    plot_cmd->add_option("--svg", plot.svg, "Optional SVG rendering path");

    SimulateOptions simulate;
    CLI::App* simulate_cmd =
        app.add_subcommand("simulate", "Monte Carlo experiments over a JSON grid of DGPs");
    simulate_cmd->add_option("--grid", simulate.grid_path, "Grid JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    simulate_cmd->add_option("--trials", simulate.trials, "Trials per cell")
        ->capture_default_str();
    const CLI::Option* simulate_seed =
        simulate_cmd
            ->add_option("--seed", simulate.seed, "Experiment seed (TVGC_SEED overrides default)")
            ->capture_default_str();
    simulate_cmd->add_option("--threads", simulate.threads, "Worker threads (0 = hardware)")
        ->capture_default_str();
    simulate_cmd->add_option("--out", simulate.out, "Output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (ingest_cmd->parsed()) return run_ingest(ingest);
        if (stationarity_cmd->parsed()) return run_stationarity(stationarity);
        if (test_cmd->parsed()) {
            test.seed = resolve_seed(test_seed, test.seed);
            return run_test(test);
        }
        if (plot_cmd->parsed()) return run_plot_data(plot);
        if (simulate_cmd->parsed()) {
            simulate.seed = resolve_seed(simulate_seed, simulate.seed);
            return run_simulate(simulate);
        }
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 1;
    }
    return kExitValidation;
}

} // namespace tvgc::cli
