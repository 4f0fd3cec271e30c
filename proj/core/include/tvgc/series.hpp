#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "tvgc/dates.hpp"

namespace tvgc {

/// A named, date-indexed univariate series. Dates are strictly increasing,
/// values finite; both are enforced at construction.
struct RawSeries {
    std::string name;
    std::string source_tag;
    std::vector<Date> dates;
    std::vector<double> values;

    std::size_t size() const { return dates.size(); }

    /// Throws ValidationError on duplicate/non-increasing dates, non-finite
    /// values, or mismatched lengths.
    void validate() const;
};

/// The bivariate system under test: one attention index and one log-return
/// series on a shared, strictly increasing date grid.
struct AlignedDataset {
    std::string country;
    std::vector<Date> dates;
    std::vector<double> attention;
    std::vector<double> returns;
    std::map<std::string, std::string> meta;

    std::size_t size() const { return dates.size(); }

    /// Structural invariants: equal lengths >= 2, strictly increasing dates,
    /// finite values. The GSVI range check is applied at ingestion (align),
    /// not here, so that synthetic datasets from the simulation harness can
    /// carry unbounded attention values.
    void validate() const;
};

/// r_t = ln(P_t / P_{t-1}); output is one shorter and keeps date t.
/// Rejects non-positive prices (citing the date) and series shorter than 2.
RawSeries log_returns(const RawSeries& prices);

struct StitchOptions {
    bool rescale_overlap = false;
    int max_gap_days = 3;
};

struct StitchResult {
    RawSeries series;
    /// Per-segment multiplier applied when rescale_overlap is on (1.0 for
    /// the first segment and whenever there is no overlap).
    std::vector<double> scale_factors;
};

/// Concatenates attention-index segments downloaded over separate time
/// frames into one series. On overlapping dates the later segment wins.
/// With rescale_overlap, each later segment is first multiplied by
/// mean(existing overlap values) / mean(segment overlap values) and then
/// clamped to [0, 100]. A gap of more than max_gap_days between consecutive
/// segments is rejected.
StitchResult stitch_gsvi(const std::vector<RawSeries>& segments, const StitchOptions& options);

/// Inner join of attention and returns on dates. Dates missing from either
/// side are dropped; rejects an empty intersection, a result shorter than
/// min_length, or attention values outside [0, 100].
AlignedDataset align(const RawSeries& attention, const RawSeries& returns,
                     const std::string& country, std::size_t min_length = 2);

/// Reads a headered `date,value` CSV (ISO-8601 dates). Optional leading
/// `# key=value` comment lines populate name/source_tag when present.
RawSeries read_raw_series_csv(const std::filesystem::path& path, const std::string& name,
                              const std::string& source_tag);

void write_raw_series_csv(const RawSeries& series, const std::filesystem::path& path);

/// `aligned_<country>.csv` format: `# country=...` metadata lines, then a
/// `date,attention,log_return` header. Round-trips bit-exactly.
AlignedDataset read_aligned_csv(const std::filesystem::path& path);
void write_aligned_csv(const AlignedDataset& data, const std::filesystem::path& path);

} // namespace tvgc
