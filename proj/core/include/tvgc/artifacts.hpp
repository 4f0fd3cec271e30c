#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "tvgc/bootstrap.hpp"
#include "tvgc/dating.hpp"
#include "tvgc/procedures.hpp"
#include "tvgc/series.hpp"

namespace tvgc {

/// stats.csv: `# key=value` metadata (algorithm, robust, lag_order,
/// min_window, data_size), then `date,index,statistic,argmax_start_index,
/// argmax_f1,status`. Failed points keep their row with an empty statistic
/// and the reason in `status`.
void write_stat_sequence_csv(const StatSequence& sequence, const AlignedDataset& data,
                             const std::filesystem::path& path);
std::pair<StatSequence, std::vector<Date>> read_stat_sequence_csv(
    const std::filesystem::path& path);

/// cv.csv: metadata (algorithm, robust, quantile, threshold, replications,
/// discarded, min_window, data_size), then `date,index,critical_value`.
void write_critical_values_csv(const CriticalValueSequence& cv, const AlignedDataset& data,
                               const std::filesystem::path& path);
std::pair<CriticalValueSequence, std::vector<Date>> read_critical_values_csv(
    const std::filesystem::path& path);

/// Merged plot table and its rendering. Rows pair each endpoint's statistic
/// (absent on failed points) with its critical value; episodes are row
/// ranges used for shading.
struct PlotSeries {
    std::vector<Date> dates;
    std::vector<std::optional<double>> statistics;
    std::vector<double> critical_values;
    std::vector<std::pair<std::size_t, std::size_t>> episode_rows; // inclusive
};

/// Joins a statistic sequence and critical-value sequence read back from
/// their CSVs; rejects mismatched index domains. Episodes are re-derived
/// with the dating rules so shaded regions always match the two curves.
PlotSeries merge_plot_series(const StatSequence& stats, const std::vector<Date>& stat_dates,
                             const CriticalValueSequence& cv);

/// `date,statistic,critical_value` rows; empty statistic on failed points.
std::string plot_series_csv(const PlotSeries& series);

/// Minimal deterministic SVG: statistic polyline in black, critical-value
/// line in red, one shaded rectangle per episode. Byte-stable across reruns
/// so the rendering can be digest-tested.
std::string plot_series_svg(const PlotSeries& series);

} // namespace tvgc
