#include <benchmark/benchmark.h>

#include "tvgc/rng.hpp"
#include "tvgc/series.hpp"
#include "tvgc/var.hpp"
#include "tvgc/wald.hpp"

namespace {

tvgc::AlignedDataset make_data(std::size_t length) {
    tvgc::RngStream stream(7, 0);
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

void BM_VarFit(benchmark::State& state) {
    const auto data = make_data(static_cast<std::size_t>(state.range(0)));
    const tvgc::VarSpec spec{.lag_order = static_cast<int>(state.range(1))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(tvgc::fit(data, spec, {0, data.size() - 1}));
    }
}
BENCHMARK(BM_VarFit)->ArgsProduct({{90, 250, 818}, {1, 4, 12}});

void BM_WaldStatistic(benchmark::State& state) {
    const auto data = make_data(818);
    const int p = static_cast<int>(state.range(0));
    const bool robust = state.range(1) != 0;
    const tvgc::VarFit f = tvgc::fit(data, {.lag_order = p}, {0, data.size() - 1});
    const tvgc::SelectionMatrix sel = tvgc::build_selection(p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(robust ? tvgc::wald_robust(f, sel)
                                        : tvgc::wald_homoskedastic(f, sel));
    }
}
BENCHMARK(BM_WaldStatistic)->ArgsProduct({{1, 4, 12}, {0, 1}});

void BM_BicSelection(benchmark::State& state) {
    const auto data = make_data(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(tvgc::select_lag_bic(data, {0, data.size() - 1}, 12));
    }
}
BENCHMARK(BM_BicSelection)->Arg(250)->Arg(818);

} // namespace

BENCHMARK_MAIN();
