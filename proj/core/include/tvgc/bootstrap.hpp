#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tvgc/errors.hpp"
#include "tvgc/procedures.hpp"
#include "tvgc/rng.hpp"
#include "tvgc/series.hpp"
#include "tvgc/var.hpp"

namespace tvgc {

enum class BootstrapScheme {
    iid_residual,    // whole residual rows redrawn with replacement
    wild_rademacher, // residual rows at their original positions, times +/-1
};

std::string scheme_name(BootstrapScheme scheme);
BootstrapScheme parse_scheme(const std::string& name);

struct BootstrapConfig {
    int replications = 499;
    double size = 0.05;               // nominal test size
    std::size_t control_window = 90;  // observations over which size is controlled
    std::size_t min_window = 90;      // f0 in observations
    std::uint64_t seed = 0;
    BootstrapScheme scheme = BootstrapScheme::iid_residual;
};

struct CriticalValueSequence {
    Algorithm algorithm = Algorithm::forward;
    bool robust = false;
    double quantile = 0.95;       // 1 - size
    double threshold = 0.0;       // the bootstrap critical value
    int replications_used = 0;
    int discarded_replications = 0;
    /// Length of each simulated null path: min_window + control_window - 1
    /// + p. Never grows with the full sample, which is what pins the size
    /// control to the fixed window.
    std::size_t simulated_length = 0;
    std::vector<std::size_t> indices; // same endpoint domain as the paired StatSequence
    std::vector<double> values;       // constant broadcast of `threshold`
    std::vector<std::string> warnings;

    double value_at_position(std::size_t i) const { return values[i]; }
};

/// Restricted VAR estimated under the non-causal null: the returns equation
/// drops the attention lags (their coefficients are exactly zero in the
/// returned matrix), the attention equation is unrestricted. Residuals are
/// the restricted system's and feed the resampling schemes.
VarFit fit_null_model(const AlignedDataset& data, int lag_order);

/// Raised when a simulated path exceeds the explosion bound; the caller
/// redraws the replication.
class ExplosivePathError : public NumericalError {
public:
    explicit ExplosivePathError(const std::string& what) : NumericalError(what) {}
};

/// Simulates `length` observations of the restricted VAR forward from the
/// first p actual observations of `data`. Innovations are whole residual
/// rows (cross-equation correlation preserved): redrawn with replacement
/// under iid_residual, kept in place with a random sign under
/// wild_rademacher. Throws ExplosivePathError when |value| exceeds 1e8.
AlignedDataset generate_replication(const AlignedDataset& data, const VarFit& null_fit,
                                    std::size_t length, BootstrapScheme scheme,
                                    RngStream& stream);

/// Bootstrap critical value with empirical size controlled over a fixed
/// window: each replication simulates a null path of
/// min_window + control_window - 1 + p observations, computes the chosen
/// algorithm's statistic sequence, and records its maximum; the critical
/// value is the ceil((1-size)(B+1)) order statistic of the maxima,
/// broadcast as a constant over the full sample's endpoint domain.
/// Deterministic given cfg.seed for any thread count. Aborts when more than
/// 10% of replications are discarded as explosive.
CriticalValueSequence critical_values(const AlignedDataset& data, int lag_order,
                                      Algorithm algorithm, bool robust,
                                      const BootstrapConfig& cfg, int threads = 1);

} // namespace tvgc
