// Regenerates the deterministic fixture datasets under tests/fixtures/.
// The fixtures are committed; rerun this only when the formats change:
//   tvgc_gen_fixtures [output-dir]

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <vector>

#include "tvgc/rng.hpp"
#include "tvgc/series.hpp"
#include "tvgc/simulation.hpp"

using namespace tvgc;

namespace {

constexpr double kTargetGsviMean = 58.68;

RawSeries make_prices() {
    // Daily prices from 2020-02-11 through 2022-05-09 (819 observations,
    // 818 log returns).
    RngStream stream(20200211, 0);
    RawSeries prices;
    prices.name = "prices";
    prices.source_tag = "prices";
    Date date = Date::from_ymd(2020, 2, 11);
    const Date last = Date::from_ymd(2022, 5, 9);
    double price = 10000.0;
    while (date <= last) {
        prices.dates.push_back(date);
        prices.values.push_back(price);
        price *= std::exp(0.04 * stream.normal());
        date = date + 1;
    }
    return prices;
}

RawSeries make_attention() {
    // Stationary AR(1) attention index covering the return dates, shifted
    // so the full-sample mean hits the target exactly.
    RngStream stream(20200212, 1);
    std::vector<double> values;
    double deviation = 0.0;
    Date date = Date::from_ymd(2020, 2, 12);
    const Date last = Date::from_ymd(2022, 5, 9);
    std::vector<Date> dates;
    while (date <= last) {
        deviation = 0.55 * deviation + 6.0 * stream.normal();
        dates.push_back(date);
        values.push_back(deviation);
        date = date + 1;
    }
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                        static_cast<double>(values.size());
    RawSeries attention;
    attention.name = "gsvi";
    attention.source_tag = "gsvi";
    attention.dates = dates;
    for (double v : values) {
        const double shifted = v - mean + kTargetGsviMean;
        if (shifted < 0.0 || shifted > 100.0) {
            std::fprintf(stderr, "attention value %.3f escapes the GSVI scale\n", shifted);
            std::exit(1);
        }
        attention.values.push_back(shifted);
    }
    return attention;
}

void write_gsvi_segments(const RawSeries& attention, const std::filesystem::path& dir) {
    // Three-month (90-day) download frames, like real exports.
    const std::size_t segment_length = 90;
    std::size_t index = 0;
    int file_number = 1;
    while (index < attention.size()) {
        RawSeries segment;
        segment.name = attention.name;
        segment.source_tag = "gsvi-segment";
        const std::size_t end = std::min(index + segment_length, attention.size());
        segment.dates.assign(attention.dates.begin() + index, attention.dates.begin() + end);
        segment.values.assign(attention.values.begin() + index, attention.values.begin() + end);
        char name[32];
        std::snprintf(name, sizeof(name), "gsvi_us_%02d.csv", file_number);
        write_raw_series_csv(segment, dir / name);
        index = end;
        ++file_number;
    }
}

AlignedDataset make_white_noise() {
    RngStream stream(250250, 2);
    AlignedDataset data;
    data.country = "whitenoise";
    const Date epoch = Date::from_ymd(2021, 1, 1);
    for (int t = 0; t < 250; ++t) {
        data.dates.push_back(epoch + t);
        data.returns.push_back(0.04 * stream.normal());
        data.attention.push_back(50.0 + 5.0 * stream.normal());
    }
    return data;
}

AlignedDataset make_switch() {
    SwitchDgp dgp = SwitchDgp::diagonal(400, 0.2, 0.5, 400400);
    dgp.causal_coeff = 1.3;
    dgp.causal_start = 150;
    dgp.causal_end = 250;
    AlignedDataset data = simulate_dgp(dgp);
    data.country = "switch";
    return data;
}

} // namespace

int main(int argc, char** argv) {
    const std::filesystem::path dir = argc > 1 ? argv[1] : "tests/fixtures";
    std::filesystem::create_directories(dir);

    const RawSeries prices = make_prices();
    write_raw_series_csv(prices, dir / "prices_us.csv");

    const RawSeries attention = make_attention();
    write_gsvi_segments(attention, dir);

    const RawSeries returns = log_returns(prices);
    AlignedDataset aligned = align(attention, returns, "US", 90);
    aligned.meta["individualism"] = "91";
    write_aligned_csv(aligned, dir / "aligned_us.csv");

    write_aligned_csv(make_white_noise(), dir / "aligned_whitenoise.csv");
    write_aligned_csv(make_switch(), dir / "aligned_switch.csv");

    const double mean = std::accumulate(aligned.attention.begin(), aligned.attention.end(), 0.0) /
                        static_cast<double>(aligned.size());
    std::printf("fixtures written to %s (aligned US: %zu rows, mean attention %.4f)\n",
                dir.string().c_str(), aligned.size(), mean);
    return 0;
}
