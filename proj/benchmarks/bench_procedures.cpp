#include <benchmark/benchmark.h>

#include "tvgc/procedures.hpp"
#include "tvgc/rng.hpp"
#include "tvgc/series.hpp"

namespace {

tvgc::AlignedDataset make_data(std::size_t length) {
    tvgc::RngStream stream(11, 0);
    tvgc::AlignedDataset data;
    data.country = "bench";
    const tvgc::Date epoch = tvgc::Date::from_ymd(2020, 1, 1);
    double r = 0.0;
    double a = 0.0;
    for (std::size_t t = 0; t < length; ++t) {
        r = 0.2 * r + stream.normal();
        a = 0.5 * a + stream.normal();
        data.dates.push_back(epoch + static_cast<std::int32_t>(t));
        data.returns.push_back(r);
        data.attention.push_back(a);
    }
    return data;
}

void BM_RollingSequence(benchmark::State& state) {
    const auto data = make_data(static_cast<std::size_t>(state.range(0)));
    const int threads = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(tvgc::rolling_sequence(data, 1, false, 90, threads));
    }
}
BENCHMARK(BM_RollingSequence)->ArgsProduct({{250, 818}, {1, 2}})->Unit(benchmark::kMillisecond);

void BM_RecursiveEvolvingSequence(benchmark::State& state) {
    const auto data = make_data(static_cast<std::size_t>(state.range(0)));
    const int threads = static_cast<int>(state.range(1));
    const bool robust = state.range(2) != 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            tvgc::recursive_evolving_sequence(data, 1, robust, 90, threads));
    }
}
BENCHMARK(BM_RecursiveEvolvingSequence)
    ->ArgsProduct({{250, 818}, {1, 2}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

} // namespace
