#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <vector>

#include <nlohmann/json.hpp>

#include "support/test_util.hpp"
#include "tvgc/digest.hpp"
#include "tvgc/manifest.hpp"
#include "tvgc/series.hpp"

using namespace tvgc;
using tvgc::testing::CliResult;
using tvgc::testing::fixtures_dir;
using tvgc::testing::golden_dir;
using tvgc::testing::read_file;
using tvgc::testing::run_cli;
using tvgc::testing::TempDir;
using tvgc::testing::write_file;

namespace {

std::string fixture(const std::string& name) { return (fixtures_dir() / name).string(); }

std::string golden_digest(const std::string& name) {
    std::string text = read_file(golden_dir() / name);
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    return text;
}

std::vector<std::string> ingest_args(const TempDir& dir) {
    std::vector<std::string> args{"ingest", "--prices", fixture("prices_us.csv"),
                                  "--country", "US",
                                  "--meta",    "individualism=91",
                                  "--out",     (dir / "aligned_us.csv").string()};
    for (int i = 1;; ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "gsvi_us_%02d.csv", i);
        if (!std::filesystem::exists(fixtures_dir() / name)) break;
        args.push_back("--gsvi");
        args.push_back(fixture(name));
    }
    return args;
}

} // namespace

TEST(Cli, IngestReproducesBundledAlignedFixture) {
    TempDir dir("ingest");
    const CliResult result = run_cli(ingest_args(dir));
    ASSERT_EQ(result.exit_code, 0) << result.errors;
    EXPECT_NE(result.output.find("818 rows"), std::string::npos) << result.output;
    // The CLI path and the fixture generator must agree byte for byte.
    EXPECT_EQ(sha256_file_hex(dir / "aligned_us.csv"),
              sha256_file_hex(fixtures_dir() / "aligned_us.csv"));
    // A manifest with input digests lands next to the output.
    const RunManifest manifest = read_manifest((dir / "aligned_us.csv").string() +
                                               ".manifest.json");
    EXPECT_EQ(manifest.command, "ingest");
    EXPECT_FALSE(manifest.inputs.empty());
    EXPECT_EQ(manifest.outputs.size(), 1u);
}

TEST(Cli, IngestRejectsMalformedRowCitingLine) {
    TempDir dir("ingest_bad");
    write_file(dir / "prices.csv", "date,value\n2020-01-01,100\nOops-01-99,50\n2020-01-03,70\n");
    write_file(dir / "gsvi.csv", "date,value\n2020-01-02,40\n2020-01-03,41\n");
    const CliResult result = run_cli({"ingest", "--prices", (dir / "prices.csv").string(),
                                      "--gsvi", (dir / "gsvi.csv").string(), "--country", "XX",
                                      "--min-window", "2",
                                      "--out", (dir / "aligned.csv").string()});
    EXPECT_EQ(result.exit_code, 2);
    EXPECT_NE(result.errors.find(":3"), std::string::npos) << result.errors;
}

TEST(Cli, IngestLogsRescaleFactor) {
    TempDir dir("ingest_rescale");
    write_file(dir / "prices.csv",
               "date,value\n2020-01-01,100\n2020-01-02,101\n2020-01-03,99\n2020-01-04,100\n"
               "2020-01-05,102\n2020-01-06,101\n2020-01-07,103\n");
    write_file(dir / "g1.csv",
               "date,value\n2020-01-01,40\n2020-01-02,50\n2020-01-03,60\n2020-01-04,44\n"
               "2020-01-05,56\n");
    write_file(dir / "g2.csv",
               "date,value\n2020-01-03,30\n2020-01-04,22\n2020-01-05,28\n2020-01-06,35\n"
               "2020-01-07,40\n");
    const CliResult result =
        run_cli({"ingest", "--prices", (dir / "prices.csv").string(), "--gsvi",
                 (dir / "g1.csv").string(), "--gsvi", (dir / "g2.csv").string(), "--country",
                 "XX", "--rescale-overlap", "--min-window", "2", "--out",
                 (dir / "aligned.csv").string()});
    ASSERT_EQ(result.exit_code, 0) << result.errors;
    EXPECT_NE(result.errors.find("rescaled by factor 2.0"), std::string::npos) << result.errors;
}

TEST(Cli, StationarityPrintsTableForBundledFixture) {
    const CliResult result = run_cli({"stationarity", "--data", fixture("aligned_us.csv")});
    ASSERT_EQ(result.exit_code, 0) << result.errors;
    EXPECT_NE(result.output.find("ADF"), std::string::npos);
    EXPECT_NE(result.output.find("PP"), std::string::npos);
    // Both series in the strongest band, four rows in total.
    std::size_t count = 0;
    std::size_t pos = 0;
    while ((pos = result.output.find("below 1%", pos)) != std::string::npos) {
        ++count;
        pos += 1;
    }
    EXPECT_EQ(count, 4u);
}

// Golden run: white-noise fixture with the paper-default settings and a
// pinned seed detects nothing, and its artifacts are byte-stable.
TEST(Cli, TestCommandWhiteNoiseGolden) {
    TempDir dir("test_wn");
    CliResult first = run_cli({"test", "--data", fixture("aligned_whitenoise.csv"), "--seed",
                               "42", "--out", (dir / "run1").string()});
    ASSERT_EQ(first.exit_code, 0) << first.errors;
    EXPECT_NE(first.output.find("No causal episodes detected"), std::string::npos)
        << first.output;
    EXPECT_TRUE(read_file(dir / "run1" / "episodes.jsonl").empty());

    EXPECT_EQ(sha256_file_hex(dir / "run1" / "stats.csv"),
              golden_digest("whitenoise_stats.sha256"));
    EXPECT_EQ(sha256_file_hex(dir / "run1" / "cv.csv"), golden_digest("whitenoise_cv.sha256"));

    // Rerun reproducibility: identical artifacts, manifests equal except for
    // their timestamps.
    CliResult second = run_cli({"test", "--data", fixture("aligned_whitenoise.csv"), "--seed",
                                "42", "--out", (dir / "run2").string()});
    ASSERT_EQ(second.exit_code, 0) << second.errors;
    for (const char* name : {"stats.csv", "cv.csv", "episodes.jsonl"}) {
        EXPECT_EQ(sha256_file_hex(dir / "run1" / name), sha256_file_hex(dir / "run2" / name))
            << name;
    }
    const RunManifest m1 = read_manifest(dir / "run1" / "manifest.json");
    const RunManifest m2 = read_manifest(dir / "run2" / "manifest.json");
    EXPECT_EQ(m1.config, m2.config);
    EXPECT_EQ(m1.inputs, m2.inputs);
    EXPECT_EQ(m1.seed, m2.seed);
    // Output paths differ by directory; the digests must not.
    auto digests = [](const RunManifest& m) {
        std::vector<std::string> out;
        for (const auto& [path, digest] : m.outputs) out.push_back(digest);
        std::sort(out.begin(), out.end());
        return out;
    };
    EXPECT_EQ(digests(m1), digests(m2));
}

TEST(Cli, TestCommandSwitchFixtureFindsEpisodeOverTrueWindow) {
    TempDir dir("test_switch");
    const CliResult result =
        run_cli({"test", "--data", fixture("aligned_switch.csv"), "--seed", "7", "--out",
                 (dir / "out").string()});
    ASSERT_EQ(result.exit_code, 0) << result.errors;
    const std::string episodes = read_file(dir / "out" / "episodes.jsonl");
    ASSERT_FALSE(episodes.empty());
    const nlohmann::json first = nlohmann::json::parse(episodes.substr(0, episodes.find('\n')));
    // The true causal window is observations 150..250; the first detected
    // episode overlaps it.
    EXPECT_LT(first.at("start_index").get<std::size_t>(), 250u);
    EXPECT_GT(first.at("end_index").get<std::size_t>(), 150u);
}

TEST(Cli, PlotDataMergesAndRendersSvg) {
    TempDir dir("plot");
    // Three-point sequences written in the artifact format.
    write_file(dir / "stats.csv",
               "# algorithm=rolling\n# robust=false\n# lag_order=1\n# min_window=90\n"
               "# data_size=92\n"
               "date,index,statistic,argmax_start_index,argmax_f1,status\n"
               "2021-04-01,89,1.5,,,ok\n2021-04-02,90,4.5,,,ok\n2021-04-03,91,2.0,,,ok\n");
    write_file(dir / "cv.csv",
               "# algorithm=rolling\n# robust=false\n# quantile=0.95\n# threshold=3\n"
               "# replications=499\n# discarded=0\n"
               "date,index,critical_value\n"
               "2021-04-01,89,3\n2021-04-02,90,3\n2021-04-03,91,3\n");
    const CliResult result = run_cli({"plot-data", "--stats", (dir / "stats.csv").string(),
                                      "--cv", (dir / "cv.csv").string(), "--out",
                                      (dir / "plot.csv").string(), "--svg",
                                      (dir / "plot.svg").string()});
    ASSERT_EQ(result.exit_code, 0) << result.errors;

    const std::string csv = read_file(dir / "plot.csv");
    EXPECT_EQ(csv, "date,statistic,critical_value\n"
                   "2021-04-01,1.5,3\n2021-04-02,4.5,3\n2021-04-03,2,3\n");

    // One episode (the middle point) shades one region.
    const std::string svg = read_file(dir / "plot.svg");
    std::size_t shaded = 0;
    std::size_t pos = 0;
    while ((pos = svg.find("class=\"episode\"", pos)) != std::string::npos) {
        ++shaded;
        pos += 1;
    }
    EXPECT_EQ(shaded, 1u);
    EXPECT_NE(svg.find("stroke=\"black\""), std::string::npos);
    EXPECT_NE(svg.find("stroke=\"red\""), std::string::npos);
}

TEST(Cli, PlotDataRejectsDomainMismatch) {
    TempDir dir("plot_bad");
    write_file(dir / "stats.csv",
               "# algorithm=rolling\n# robust=false\n# lag_order=1\n# min_window=90\n"
               "# data_size=92\n"
               "date,index,statistic,argmax_start_index,argmax_f1,status\n"
               "2021-04-01,89,1.5,,,ok\n2021-04-02,90,4.5,,,ok\n");
    write_file(dir / "cv.csv",
               "# algorithm=rolling\n# robust=false\n# quantile=0.95\n# threshold=3\n"
               "# replications=499\n# discarded=0\n"
               "date,index,critical_value\n"
               "2021-04-01,89,3\n");
    const CliResult result =
        run_cli({"plot-data", "--stats", (dir / "stats.csv").string(), "--cv",
                 (dir / "cv.csv").string(), "--out", (dir / "plot.csv").string()});
    EXPECT_EQ(result.exit_code, 2);
    EXPECT_NE(result.errors.find("index domain"), std::string::npos) << result.errors;
}

// The deterministic SVG rendering is digest-tested against a committed
// golden (generated from the switch fixture's test output).
TEST(Cli, SvgGoldenDigestStable) {
    TempDir dir("svg_golden");
    CliResult test_run =
        run_cli({"test", "--data", fixture("aligned_switch.csv"), "--algorithm", "rolling",
                 "--reps", "199", "--seed", "11", "--out", (dir / "out").string()});
    ASSERT_EQ(test_run.exit_code, 0) << test_run.errors;
    for (int run = 0; run < 2; ++run) {
        const std::string svg_path = (dir / ("plot" + std::to_string(run) + ".svg")).string();
        const CliResult plot_run =
            run_cli({"plot-data", "--stats", (dir / "out" / "stats.csv").string(), "--cv",
                     (dir / "out" / "cv.csv").string(), "--out",
                     (dir / ("plot" + std::to_string(run) + ".csv")).string(), "--svg",
                     svg_path});
        ASSERT_EQ(plot_run.exit_code, 0) << plot_run.errors;
        EXPECT_EQ(sha256_file_hex(svg_path), golden_digest("switch_rolling_svg.sha256"));
    }
}

TEST(Cli, NumericalFailureDensityExitsThree) {
    TempDir dir("exit3");
    // Attention frozen over a long early stretch: enough rolling windows are
    // collinear to push the failure density over 10%.
    AlignedDataset data = tvgc::testing::white_noise_dataset(260, 321, 0.0, 0.0);
    for (std::size_t t = 0; t < 160; ++t) data.attention[t] = 55.0;
    for (std::size_t t = 0; t < data.size(); ++t) data.returns[t] *= 0.04;
    data.country = "frozen";
    write_aligned_csv(data, dir / "frozen.csv");
    const CliResult result =
        run_cli({"test", "--data", (dir / "frozen.csv").string(), "--algorithm", "rolling",
                 "--reps", "49", "--max-lag", "1", "--seed", "3", "--out",
                 (dir / "out").string()});
    EXPECT_EQ(result.exit_code, 3) << result.errors;
    EXPECT_NE(result.errors.find("failed numerically"), std::string::npos) << result.errors;
}

TEST(Cli, SeedEnvironmentOverrideAndFlagPrecedence) {
    TempDir dir("seed_env");
    const std::vector<std::string> base{"test",           "--data",
                                        fixture("aligned_whitenoise.csv"),
                                        "--algorithm",    "rolling",
                                        "--reps",         "99",
                                        "--min-window",   "60",
                                        "--control-window", "60"};
    auto with_out = [&](const std::string& out, const std::vector<std::string>& extra) {
        std::vector<std::string> args = base;
        args.insert(args.end(), extra.begin(), extra.end());
        args.push_back("--out");
        args.push_back((dir / out).string());
        return args;
    };

    ASSERT_EQ(run_cli(with_out("flag7", {"--seed", "7"})).exit_code, 0);
    ASSERT_EQ(run_cli(with_out("env7", {}), {"TVGC_SEED=7"}).exit_code, 0);
    ASSERT_EQ(run_cli(with_out("flag9env7", {"--seed", "9"}), {"TVGC_SEED=7"}).exit_code, 0);
    ASSERT_EQ(run_cli(with_out("flag9", {"--seed", "9"})).exit_code, 0);

    EXPECT_EQ(sha256_file_hex(dir / "flag7" / "cv.csv"),
              sha256_file_hex(dir / "env7" / "cv.csv"));
    EXPECT_EQ(sha256_file_hex(dir / "flag9env7" / "cv.csv"),
              sha256_file_hex(dir / "flag9" / "cv.csv"));
}

TEST(Cli, HelpListsPaperDefaults) {
    const CliResult help = run_cli({"test", "--help"});
    ASSERT_EQ(help.exit_code, 0);
    for (const char* needle : {"499", "90", "12", "0.05", "recursive-evolving"}) {
        EXPECT_NE(help.output.find(needle), std::string::npos) << needle << "\n" << help.output;
    }
    const CliResult top = run_cli({"--help"});
    for (const char* sub : {"ingest", "stationarity", "test", "plot-data", "simulate"}) {
        EXPECT_NE(top.output.find(sub), std::string::npos) << sub;
    }
}

TEST(Cli, SimulateRunsSmallGrid) {
    TempDir dir("simulate");
    write_file(dir / "grid.json", R"([
      {
        "name": "null-rolling",
        "dgp": {"length": 90, "lag_order": 1, "noise": {"kind": "gaussian", "sd": 1.0}},
        "test": {"algorithm": "rolling", "robust": false, "replications": 49,
                 "min_window": 30, "control_window": 30}
      }
    ])");
    const CliResult result =
        run_cli({"simulate", "--grid", (dir / "grid.json").string(), "--trials", "4", "--seed",
                 "5", "--out", (dir / "exp").string()});
    ASSERT_EQ(result.exit_code, 0) << result.errors;
    const std::string table = read_file(dir / "exp" / "experiment.csv");
    EXPECT_NE(table.find("null-rolling"), std::string::npos);
    EXPECT_NE(table.find("rejection_rate"), std::string::npos);

    // Bit-exact rerun of the experiment table.
    const CliResult again =
        run_cli({"simulate", "--grid", (dir / "grid.json").string(), "--trials", "4", "--seed",
                 "5", "--out", (dir / "exp2").string()});
    ASSERT_EQ(again.exit_code, 0) << again.errors;
    EXPECT_EQ(sha256_file_hex(dir / "exp" / "experiment.csv"),
              sha256_file_hex(dir / "exp2" / "experiment.csv"));
}
