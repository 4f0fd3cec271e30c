#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tvgc/series.hpp"
#include "tvgc/var.hpp"
#include "tvgc/wald.hpp"

namespace tvgc {

enum class Algorithm {
    forward,            // expanding window anchored at the sample start
    rolling,            // fixed-width window of min_window observations
    recursive_evolving, // sup over all admissible start points per endpoint
};

std::string algorithm_name(Algorithm algorithm);
Algorithm parse_algorithm(const std::string& name);

/// One endpoint of a statistic sequence. `value` is absent when every
/// admissible window for this endpoint failed numerically; the reason is
/// kept so output files can flag the gap instead of aborting the run.
struct StatPoint {
    std::size_t index = 0;                    // endpoint observation index
    std::optional<double> value;              // sup-Wald / Wald statistic
    std::optional<std::size_t> argmax_start;  // recursive-evolving only
    std::string error;
};

struct StatSequence {
    Algorithm algorithm = Algorithm::forward;
    bool robust = false;
    int lag_order = 0;
    std::size_t min_window = 0;
    std::size_t data_size = 0;
    std::vector<StatPoint> points; // one per endpoint min_window-1 .. n-1

    /// Fraction of the sample covered at points[i] (the f of W_f).
    double endpoint_fraction(std::size_t i) const {
        return static_cast<double>(points[i].index + 1) / static_cast<double>(data_size);
    }
    /// Number of points whose window computation failed.
    std::size_t failure_count() const;
};

/// Wald statistic of the single window [start, end]; the building block all
/// three sequence algorithms and their test oracles share.
WaldResult window_statistic(const AlignedDataset& data, int lag_order, bool robust,
                            IndexRange window);

/// W_f(0) for every endpoint fraction f >= f0: expanding window anchored at
/// the first observation.
StatSequence forward_sequence(const AlignedDataset& data, int lag_order, bool robust,
                              std::size_t min_window, int threads = 1);

/// W_f(f - f0): constant-width window of min_window observations ending at
/// each admissible endpoint.
StatSequence rolling_sequence(const AlignedDataset& data, int lag_order, bool robust,
                              std::size_t min_window, int threads = 1);

/// SW_f(f0) = max over start observations s in [0, f - f0] of the Wald on
/// [s, f], evaluated on the full observation grid; records the maximizing
/// start. Windows that fail numerically are skipped; a point is missing
/// only when every start fails.
StatSequence recursive_evolving_sequence(const AlignedDataset& data, int lag_order, bool robust,
                                         std::size_t min_window, int threads = 1);

StatSequence compute_sequence(const AlignedDataset& data, Algorithm algorithm, int lag_order,
                              bool robust, std::size_t min_window, int threads = 1);

} // namespace tvgc
