#include <benchmark/benchmark.h>

#include "tvgc/bootstrap.hpp"
#include "tvgc/rng.hpp"
#include "tvgc/series.hpp"

namespace {

tvgc::AlignedDataset make_data(std::size_t length) {
    tvgc::RngStream stream(13, 0);
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

void BM_CriticalValues(benchmark::State& state) {
    const auto data = make_data(250);
    const auto algorithm = state.range(0) == 0 ? tvgc::Algorithm::rolling
                                               : tvgc::Algorithm::recursive_evolving;
    tvgc::BootstrapConfig cfg;
    cfg.replications = static_cast<int>(state.range(1));
    cfg.seed = 5;
    const int threads = static_cast<int>(state.range(2));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            tvgc::critical_values(data, 1, algorithm, false, cfg, threads));
    }
}
BENCHMARK(BM_CriticalValues)
    ->ArgsProduct({{0, 1}, {49, 199}, {1, 2}})
    ->Unit(benchmark::kMillisecond);

void BM_GenerateReplication(benchmark::State& state) {
    const auto data = make_data(250);
    const tvgc::VarFit null_fit = tvgc::fit_null_model(data, 1);
    const auto scheme = state.range(0) == 0 ? tvgc::BootstrapScheme::iid_residual
                                            : tvgc::BootstrapScheme::wild_rademacher;
    tvgc::RngStream stream(1, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tvgc::generate_replication(data, null_fit, 180, scheme, stream));
    }
}
BENCHMARK(BM_GenerateReplication)->Arg(0)->Arg(1);

} // namespace
