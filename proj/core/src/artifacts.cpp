#include "tvgc/artifacts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tvgc/csv.hpp"
#include "tvgc/errors.hpp"

namespace tvgc {
namespace {

std::string sanitized(std::string text) {
    std::replace(text.begin(), text.end(), ',', ';');
    std::replace(text.begin(), text.end(), '\n', ' ');
    return text;
}

std::string meta_value(const csv::Table& table, const std::string& key,
                       const std::filesystem::path& path) {
    for (const auto& [k, v] : table.meta) {
        if (k == key) return v;
    }
    throw ValidationError("'" + path.string() + "': missing '# " + key + "=...' metadata");
}

long long parse_integer(const std::string& field, const std::string& context) {
    try {
        std::size_t consumed = 0;
        const long long value = std::stoll(field, &consumed);
        if (consumed != field.size()) throw std::invalid_argument(field);
        return value;
    } catch (const std::exception&) {
        throw ValidationError(context + ": invalid integer '" + field + "'");
    }
}

std::string format_fixed(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", value);
    return buf;
}

} // namespace

void write_stat_sequence_csv(const StatSequence& sequence, const AlignedDataset& data,
                             const std::filesystem::path& path) {
    if (sequence.data_size != data.size()) {
        throw ValidationError("write_stat_sequence_csv: sequence was computed on a dataset of "
                              "different length");
    }
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write '" + path.string() + "'");
    out << "# algorithm=" << algorithm_name(sequence.algorithm) << "\n";
    out << "# robust=" << (sequence.robust ? "true" : "false") << "\n";
    out << "# lag_order=" << sequence.lag_order << "\n";
    out << "# min_window=" << sequence.min_window << "\n";
    out << "# data_size=" << sequence.data_size << "\n";
    out << "date,index,statistic,argmax_start_index,argmax_f1,status\n";
    for (const StatPoint& point : sequence.points) {
        out << data.dates[point.index].to_string() << ',' << point.index << ',';
        if (point.value) out << csv::format_double(*point.value);
        out << ',';
        if (point.argmax_start) out << *point.argmax_start;
        out << ',';
        if (point.argmax_start) {
            out << csv::format_double(static_cast<double>(*point.argmax_start) /
                                      static_cast<double>(sequence.data_size));
        }
        out << ',';
        out << (point.value ? "ok" : "error:" + sanitized(point.error)) << '\n';
    }
}

std::pair<StatSequence, std::vector<Date>> read_stat_sequence_csv(
    const std::filesystem::path& path) {
    const csv::Table table = csv::read_file(path);
    const std::vector<std::string> expected{"date", "index",  "statistic",
                                            "argmax_start_index", "argmax_f1", "status"};
    if (table.header != expected) {
        throw ValidationError("'" + path.string() + "': unexpected stats header");
    }
    StatSequence sequence;
    sequence.algorithm = parse_algorithm(meta_value(table, "algorithm", path));
    sequence.robust = meta_value(table, "robust", path) == "true";
    sequence.lag_order = static_cast<int>(
        parse_integer(meta_value(table, "lag_order", path), path.string()));
    sequence.min_window = static_cast<std::size_t>(
        parse_integer(meta_value(table, "min_window", path), path.string()));
    sequence.data_size = static_cast<std::size_t>(
        parse_integer(meta_value(table, "data_size", path), path.string()));

    std::vector<Date> dates;
    for (const csv::Row& row : table.rows) {
        const std::string context = path.string() + ":" + std::to_string(row.line_number);
        StatPoint point;
        dates.push_back(Date::parse(row.fields[0]));
        point.index = static_cast<std::size_t>(parse_integer(row.fields[1], context));
        if (!row.fields[2].empty()) point.value = csv::parse_double(row.fields[2], context);
        if (!row.fields[3].empty()) {
            point.argmax_start = static_cast<std::size_t>(parse_integer(row.fields[3], context));
        }
        if (row.fields[5].rfind("error:", 0) == 0) point.error = row.fields[5].substr(6);
        sequence.points.push_back(point);
    }
    return {std::move(sequence), std::move(dates)};
}

void write_critical_values_csv(const CriticalValueSequence& cv, const AlignedDataset& data,
                               const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write '" + path.string() + "'");
    out << "# algorithm=" << algorithm_name(cv.algorithm) << "\n";
    out << "# robust=" << (cv.robust ? "true" : "false") << "\n";
    out << "# quantile=" << csv::format_double(cv.quantile) << "\n";
    out << "# threshold=" << csv::format_double(cv.threshold) << "\n";
    out << "# replications=" << cv.replications_used << "\n";
    out << "# discarded=" << cv.discarded_replications << "\n";
    out << "date,index,critical_value\n";
    for (std::size_t i = 0; i < cv.indices.size(); ++i) {
        out << data.dates[cv.indices[i]].to_string() << ',' << cv.indices[i] << ','
            << csv::format_double(cv.values[i]) << '\n';
    }
}

std::pair<CriticalValueSequence, std::vector<Date>> read_critical_values_csv(
    const std::filesystem::path& path) {
    const csv::Table table = csv::read_file(path);
    if (table.header != std::vector<std::string>{"date", "index", "critical_value"}) {
        throw ValidationError("'" + path.string() + "': unexpected critical-value header");
    }
    CriticalValueSequence cv;
    cv.algorithm = parse_algorithm(meta_value(table, "algorithm", path));
    cv.robust = meta_value(table, "robust", path) == "true";
    cv.quantile = csv::parse_double(meta_value(table, "quantile", path), path.string());
    cv.threshold = csv::parse_double(meta_value(table, "threshold", path), path.string());
    cv.replications_used = static_cast<int>(
        parse_integer(meta_value(table, "replications", path), path.string()));
    cv.discarded_replications = static_cast<int>(
        parse_integer(meta_value(table, "discarded", path), path.string()));

    std::vector<Date> dates;
    for (const csv::Row& row : table.rows) {
        const std::string context = path.string() + ":" + std::to_string(row.line_number);
        dates.push_back(Date::parse(row.fields[0]));
        cv.indices.push_back(static_cast<std::size_t>(parse_integer(row.fields[1], context)));
        cv.values.push_back(csv::parse_double(row.fields[2], context));
    }
    return {std::move(cv), std::move(dates)};
}

PlotSeries merge_plot_series(const StatSequence& stats, const std::vector<Date>& stat_dates,
                             const CriticalValueSequence& cv) {
    if (stats.points.size() != cv.indices.size() ||
        (stats.points.size() > 0 && (stats.points.front().index != cv.indices.front() ||
                                     stats.points.back().index != cv.indices.back()))) {
        throw ValidationError("plot: statistic and critical-value sequences do not share an "
                              "index domain");
    }
    if (stat_dates.size() != stats.points.size()) {
        throw ValidationError("plot: date column does not match the statistic sequence");
    }
    PlotSeries series;
    series.dates = stat_dates;
    series.statistics.reserve(stats.points.size());
    series.critical_values = cv.values;
    for (const StatPoint& point : stats.points) {
        series.statistics.push_back(point.value);
    }
    const std::size_t first_index = stats.points.empty() ? 0 : stats.points.front().index;
    for (const CausalEpisode& episode : date_episodes(stats, cv)) {
        series.episode_rows.emplace_back(episode.start_index - first_index,
                                         episode.end_index - first_index);
    }
    return series;
}

std::string plot_series_csv(const PlotSeries& series) {
    std::ostringstream out;
    out << "date,statistic,critical_value\n";
    for (std::size_t i = 0; i < series.dates.size(); ++i) {
        out << series.dates[i].to_string() << ',';
        if (series.statistics[i]) out << csv::format_double(*series.statistics[i]);
        out << ',' << csv::format_double(series.critical_values[i]) << '\n';
    }
    return out.str();
}

std::string plot_series_svg(const PlotSeries& series) {
    constexpr double kWidth = 1000.0;
    constexpr double kHeight = 520.0;
    constexpr double kLeft = 70.0;
    constexpr double kRight = 980.0;
    constexpr double kTop = 20.0;
    constexpr double kBottom = 480.0;

    const std::size_t n = series.dates.size();
    double y_max = 1e-9;
    for (std::size_t i = 0; i < n; ++i) {
        if (series.statistics[i]) y_max = std::max(y_max, *series.statistics[i]);
        y_max = std::max(y_max, series.critical_values[i]);
    }
    y_max *= 1.05;

    const auto x_of = [&](std::size_t i) {
        if (n <= 1) return (kLeft + kRight) / 2.0;
        return kLeft + (kRight - kLeft) * static_cast<double>(i) / static_cast<double>(n - 1);
    };
    const auto y_of = [&](double value) {
        return kBottom - (kBottom - kTop) * (value / y_max);
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    svg << "  <rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";

    for (const auto& [start_row, end_row] : series.episode_rows) {
        const double x0 = x_of(start_row);
        const double width = std::max(1.0, x_of(end_row) - x0);
        svg << "  <rect class=\"episode\" x=\"" << format_fixed(x0) << "\" y=\""
            << format_fixed(kTop) << "\" width=\"" << format_fixed(width) << "\" height=\""
            << format_fixed(kBottom - kTop) << "\" fill=\"#f2c4c4\" fill-opacity=\"0.55\"/>\n";
    }

    // Axes.
    svg << "  <line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight
        << "\" y2=\"" << kBottom << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg << "  <line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kBottom << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // Critical-value sequence in red.
    svg << "  <polyline fill=\"none\" stroke=\"red\" stroke-width=\"1.5\" "
           "stroke-dasharray=\"6,4\" points=\"";
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) svg << ' ';
        svg << format_fixed(x_of(i)) << ',' << format_fixed(y_of(series.critical_values[i]));
    }
    svg << "\"/>\n";

    // Statistic sequence in black, broken at failed points.
    std::vector<std::string> segments;
    std::ostringstream segment;
    bool in_segment = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (series.statistics[i]) {
            if (in_segment) segment << ' ';
            segment << format_fixed(x_of(i)) << ',' << format_fixed(y_of(*series.statistics[i]));
            in_segment = true;
        } else if (in_segment) {
            segments.push_back(segment.str());
            segment.str("");
            in_segment = false;
        }
    }
    if (in_segment) segments.push_back(segment.str());
    for (const std::string& points : segments) {
        svg << "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\""
            << points << "\"/>\n";
    }

    if (n > 0) {
        svg << "  <text x=\"" << kLeft << "\" y=\"" << kBottom + 24
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << series.dates.front().to_string()
            << "</text>\n";
        svg << "  <text x=\"" << kRight - 70 << "\" y=\"" << kBottom + 24
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << series.dates.back().to_string()
            << "</text>\n";
        svg << "  <text x=\"8\" y=\"" << kTop + 12
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << format_fixed(y_max)
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace tvgc
