#include "tvgc/procedures.hpp"

#include "tvgc/errors.hpp"
#include "tvgc/parallel.hpp"

namespace tvgc {

std::string algorithm_name(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::forward: return "forward";
        case Algorithm::rolling: return "rolling";
        case Algorithm::recursive_evolving: return "recursive-evolving";
    }
    throw ValidationError("unknown algorithm");
}

Algorithm parse_algorithm(const std::string& name) {
    if (name == "forward") return Algorithm::forward;
    if (name == "rolling") return Algorithm::rolling;
    if (name == "recursive-evolving") return Algorithm::recursive_evolving;
    throw ValidationError("unknown algorithm '" + name +
                          "', expected forward|rolling|recursive-evolving");
}

std::size_t StatSequence::failure_count() const {
    std::size_t count = 0;
    for (const StatPoint& point : points) {
        if (!point.value) ++count;
    }
    return count;
}

WaldResult window_statistic(const AlignedDataset& data, int lag_order, bool robust,
                            IndexRange window) {
    const VarFit window_fit = fit(data, VarSpec{.lag_order = lag_order}, window);
    const SelectionMatrix selection = build_selection(lag_order);
    return robust ? wald_robust(window_fit, selection) : wald_homoskedastic(window_fit, selection);
}

namespace {

StatPoint evaluate_endpoint(const AlignedDataset& data, Algorithm algorithm, int lag_order,
                            bool robust, std::size_t min_window, std::size_t endpoint) {
    StatPoint point;
    point.index = endpoint;
    const std::size_t last_start = endpoint - min_window + 1;

    if (algorithm == Algorithm::recursive_evolving) {
        bool found = false;
        double best = 0.0;
        std::size_t best_start = 0;
        for (std::size_t start = 0; start <= last_start; ++start) {
            try {
                const WaldResult w =
                    window_statistic(data, lag_order, robust, {start, endpoint});
                if (!found || w.statistic > best) {
                    best = w.statistic;
                    best_start = start;
                    found = true;
                }
            } catch (const Error& e) {
                point.error = e.what(); // kept only if every start fails
            }
        }
        if (found) {
            point.value = best;
            point.argmax_start = best_start;
            point.error.clear();
        }
        return point;
    }

    const std::size_t start = algorithm == Algorithm::forward ? 0 : last_start;
    try {
        point.value = window_statistic(data, lag_order, robust, {start, endpoint}).statistic;
    } catch (const Error& e) {
        point.error = e.what();
    }
    return point;
}

} // namespace

StatSequence compute_sequence(const AlignedDataset& data, Algorithm algorithm, int lag_order,
                              bool robust, std::size_t min_window, int threads) {
    data.validate();
    if (min_window < static_cast<std::size_t>(3 * lag_order + 11)) {
        throw ValidationError("sequence: min_window " + std::to_string(min_window) +
                              " too small for lag " + std::to_string(lag_order) +
                              ", need at least " + std::to_string(3 * lag_order + 11));
    }
    if (data.size() < min_window) {
        throw ValidationError("sequence: data of " + std::to_string(data.size()) +
                              " observations shorter than min_window " +
                              std::to_string(min_window));
    }

    StatSequence sequence;
    sequence.algorithm = algorithm;
    sequence.robust = robust;
    sequence.lag_order = lag_order;
    sequence.min_window = min_window;
    sequence.data_size = data.size();
    const std::size_t first_endpoint = min_window - 1;
    const std::size_t count = data.size() - first_endpoint;
    sequence.points.resize(count);

    // Endpoints are independent; each worker writes into its own slot, so
    // assembly is deterministic for any thread count.
    detail::parallel_for_index(count, threads, [&](std::size_t i) {
        sequence.points[i] = evaluate_endpoint(data, algorithm, lag_order, robust, min_window,
                                               first_endpoint + i);
    });
    return sequence;
}

StatSequence forward_sequence(const AlignedDataset& data, int lag_order, bool robust,
                              std::size_t min_window, int threads) {
    return compute_sequence(data, Algorithm::forward, lag_order, robust, min_window, threads);
}

StatSequence rolling_sequence(const AlignedDataset& data, int lag_order, bool robust,
                              std::size_t min_window, int threads) {
    return compute_sequence(data, Algorithm::rolling, lag_order, robust, min_window, threads);
}

StatSequence recursive_evolving_sequence(const AlignedDataset& data, int lag_order, bool robust,
                                         std::size_t min_window, int threads) {
    return compute_sequence(data, Algorithm::recursive_evolving, lag_order, robust, min_window,
                            threads);
}

} // namespace tvgc
