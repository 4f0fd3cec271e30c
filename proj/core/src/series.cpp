#include "tvgc/series.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tvgc/csv.hpp"
#include "tvgc/errors.hpp"

namespace tvgc {

void RawSeries::validate() const {
    if (dates.size() != values.size()) {
        throw ValidationError("series '" + name + "': dates/values length mismatch");
    }
    for (std::size_t i = 0; i < dates.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw ValidationError("series '" + name + "': non-finite value at " +
                                  dates[i].to_string());
        }
        if (i > 0 && dates[i] <= dates[i - 1]) {
            throw ValidationError("series '" + name + "': dates not strictly increasing at " +
                                  dates[i].to_string());
        }
    }
}

void AlignedDataset::validate() const {
    if (dates.size() != attention.size() || dates.size() != returns.size()) {
        throw ValidationError("aligned dataset '" + country + "': column length mismatch");
    }
    if (dates.size() < 2) {
        throw ValidationError("aligned dataset '" + country + "': needs at least 2 observations");
    }
    for (std::size_t i = 0; i < dates.size(); ++i) {
        if (!std::isfinite(attention[i]) || !std::isfinite(returns[i])) {
            throw ValidationError("aligned dataset '" + country + "': non-finite value at " +
                                  dates[i].to_string());
        }
        if (i > 0 && dates[i] <= dates[i - 1]) {
            throw ValidationError("aligned dataset '" + country +
                                  "': dates not strictly increasing at " + dates[i].to_string());
        }
    }
}

RawSeries log_returns(const RawSeries& prices) {
    prices.validate();
    if (prices.size() < 2) {
        throw ValidationError("log_returns: series '" + prices.name +
                              "' needs at least 2 observations");
    }
    RawSeries out;
    out.name = prices.name + "_log_returns";
    out.source_tag = "log-returns";
    out.dates.reserve(prices.size() - 1);
    out.values.reserve(prices.size() - 1);
    for (std::size_t i = 0; i < prices.size(); ++i) {
        if (prices.values[i] <= 0.0) {
            throw ValidationError("log_returns: non-positive price at " +
                                  prices.dates[i].to_string());
        }
        if (i > 0) {
            out.dates.push_back(prices.dates[i]);
            out.values.push_back(std::log(prices.values[i] / prices.values[i - 1]));
        }
    }
    return out;
}

StitchResult stitch_gsvi(const std::vector<RawSeries>& segments, const StitchOptions& options) {
    if (segments.empty()) {
        throw ValidationError("stitch_gsvi: no segments");
    }
    for (std::size_t i = 0; i < segments.size(); ++i) {
        segments[i].validate();
        if (segments[i].size() == 0) {
            throw ValidationError("stitch_gsvi: segment " + std::to_string(i) + " is empty");
        }
        if (i > 0 && segments[i].dates.front() < segments[i - 1].dates.front()) {
            throw ValidationError("stitch_gsvi: segments not ordered by start date (segment " +
                                  std::to_string(i) + ")");
        }
    }

    StitchResult result;
    result.scale_factors.assign(segments.size(), 1.0);

    // Merged series so far, as an ordered date -> value map.
    std::map<Date, double> merged;
    Date last_date = segments.front().dates.front();
    for (std::size_t s = 0; s < segments.size(); ++s) {
        const RawSeries& seg = segments[s];
        if (s > 0) {
            const std::int32_t gap = seg.dates.front() - last_date;
            if (gap > options.max_gap_days) {
                throw ValidationError("stitch_gsvi: gap of " + std::to_string(gap) +
                                      " days before segment starting " +
                                      seg.dates.front().to_string() + " exceeds max of " +
                                      std::to_string(options.max_gap_days));
            }
        }
        double scale = 1.0;
        if (options.rescale_overlap && s > 0) {
            double sum_existing = 0.0;
            double sum_segment = 0.0;
            std::size_t overlap_count = 0;
            for (std::size_t i = 0; i < seg.size(); ++i) {
                const auto it = merged.find(seg.dates[i]);
                if (it != merged.end()) {
                    sum_existing += it->second;
                    sum_segment += seg.values[i];
                    ++overlap_count;
                }
            }
            if (overlap_count > 0) {
                if (sum_segment == 0.0) {
                    throw ValidationError(
                        "stitch_gsvi: cannot rescale segment starting " +
                        seg.dates.front().to_string() + ", overlap mean is zero");
                }
                scale = sum_existing / sum_segment;
            }
        }
        result.scale_factors[s] = scale;
        for (std::size_t i = 0; i < seg.size(); ++i) {
            double value = seg.values[i] * scale;
            if (options.rescale_overlap && s > 0) {
                value = std::clamp(value, 0.0, 100.0); // keep rescaled values on the GSVI scale
            }
            merged[seg.dates[i]] = value; // later segment wins on shared dates
        }
        last_date = std::max(last_date, seg.dates.back());
    }

    RawSeries& out = result.series;
    out.name = segments.front().name;
    out.source_tag = "gsvi-stitched";
    out.dates.reserve(merged.size());
    out.values.reserve(merged.size());
    for (const auto& [date, value] : merged) {
        out.dates.push_back(date);
        out.values.push_back(value);
    }
    return result;
}

AlignedDataset align(const RawSeries& attention, const RawSeries& returns,
                     const std::string& country, std::size_t min_length) {
    attention.validate();
    returns.validate();

    AlignedDataset out;
    out.country = country;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < attention.size() && j < returns.size()) {
        if (attention.dates[i] < returns.dates[j]) {
            ++i;
        } else if (returns.dates[j] < attention.dates[i]) {
            ++j;
        } else {
            const double a = attention.values[i];
            if (a < 0.0 || a > 100.0) {
                throw ValidationError("align: attention value " + std::to_string(a) + " at " +
                                      attention.dates[i].to_string() + " outside [0, 100]");
            }
            out.dates.push_back(attention.dates[i]);
            out.attention.push_back(a);
            out.returns.push_back(returns.values[j]);
            ++i;
            ++j;
        }
    }
    if (out.dates.empty()) {
        throw ValidationError("align: no common dates between '" + attention.name + "' and '" +
                              returns.name + "'");
    }
    if (out.dates.size() < std::max<std::size_t>(min_length, 2)) {
        throw ValidationError("align: only " + std::to_string(out.dates.size()) +
                              " common dates, need at least " +
                              std::to_string(std::max<std::size_t>(min_length, 2)));
    }
    out.validate();
    return out;
}

RawSeries read_raw_series_csv(const std::filesystem::path& path, const std::string& name,
                              const std::string& source_tag) {
    const csv::Table table = csv::read_file(path);
    if (table.header != std::vector<std::string>{"date", "value"}) {
        throw ValidationError("'" + path.string() + "': expected header 'date,value'");
    }
    RawSeries out;
    out.name = name;
    out.source_tag = source_tag;
    for (const auto& [key, value] : table.meta) {
        if (key == "name" && name.empty()) out.name = value;
        if (key == "source" && source_tag.empty()) out.source_tag = value;
    }
    out.dates.reserve(table.rows.size());
    out.values.reserve(table.rows.size());
    for (const csv::Row& row : table.rows) {
        const std::string context = path.string() + ":" + std::to_string(row.line_number);
        Date date;
        try {
            date = Date::parse(row.fields[0]);
        } catch (const ValidationError& e) {
            throw ValidationError(context + ": " + e.what());
        }
        if (!out.dates.empty() && date <= out.dates.back()) {
            throw ValidationError(context + ": dates not strictly increasing");
        }
        out.dates.push_back(date);
        out.values.push_back(csv::parse_double(row.fields[1], context));
    }
    out.validate();
    return out;
}

void write_raw_series_csv(const RawSeries& series, const std::filesystem::path& path) {
    std::ofstream outfile(path);
    if (!outfile) throw ValidationError("cannot write '" + path.string() + "'");
    outfile << "# name=" << series.name << "\n";
    outfile << "# source=" << series.source_tag << "\n";
    outfile << "date,value\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        outfile << series.dates[i].to_string() << ',' << csv::format_double(series.values[i])
                << '\n';
    }
}

AlignedDataset read_aligned_csv(const std::filesystem::path& path) {
    const csv::Table table = csv::read_file(path);
    if (table.header != std::vector<std::string>{"date", "attention", "log_return"}) {
        throw ValidationError("'" + path.string() +
                              "': expected header 'date,attention,log_return'");
    }
    AlignedDataset out;
    for (const auto& [key, value] : table.meta) {
        if (key == "country") {
            out.country = value;
        } else {
            out.meta[key] = value;
        }
    }
    for (const csv::Row& row : table.rows) {
        const std::string context = path.string() + ":" + std::to_string(row.line_number);
        Date date;
        try {
            date = Date::parse(row.fields[0]);
        } catch (const ValidationError& e) {
            throw ValidationError(context + ": " + e.what());
        }
        out.dates.push_back(date);
        out.attention.push_back(csv::parse_double(row.fields[1], context));
        out.returns.push_back(csv::parse_double(row.fields[2], context));
    }
    out.validate();
    return out;
}

void write_aligned_csv(const AlignedDataset& data, const std::filesystem::path& path) {
    std::ofstream outfile(path);
    if (!outfile) throw ValidationError("cannot write '" + path.string() + "'");
    outfile << "# country=" << data.country << "\n";
    for (const auto& [key, value] : data.meta) {
        outfile << "# " << key << "=" << value << "\n";
    }
    outfile << "date,attention,log_return\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
        outfile << data.dates[i].to_string() << ',' << csv::format_double(data.attention[i])
                << ',' << csv::format_double(data.returns[i]) << '\n';
    }
}

} // namespace tvgc
