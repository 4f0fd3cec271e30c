#include "tvgc/bootstrap.hpp"

#include <algorithm>
#include <cmath>

#include "tvgc/errors.hpp"
#include "tvgc/linalg.hpp"
#include "tvgc/parallel.hpp"

namespace tvgc {

std::string scheme_name(BootstrapScheme scheme) {
    switch (scheme) {
        case BootstrapScheme::iid_residual: return "iid-residual";
        case BootstrapScheme::wild_rademacher: return "wild-rademacher";
    }
    throw ValidationError("unknown bootstrap scheme");
}

BootstrapScheme parse_scheme(const std::string& name) {
    if (name == "iid-residual") return BootstrapScheme::iid_residual;
    if (name == "wild-rademacher") return BootstrapScheme::wild_rademacher;
    throw ValidationError("unknown bootstrap scheme '" + name +
                          "', expected iid-residual|wild-rademacher");
}

VarFit fit_null_model(const AlignedDataset& data, int lag_order) {
    data.validate();
    const int p = lag_order;
    const IndexRange window{0, data.size() - 1};
    // Start from the unrestricted design to reuse the regressor layout.
    VarFit out = detail::fit_with_presample(data, VarSpec{.lag_order = p}, window, p);

    // Returns equation re-estimated on [intercept, own lags] only.
    std::vector<Eigen::Index> own_columns;
    own_columns.push_back(0);
    for (int lag = 1; lag <= p; ++lag) own_columns.push_back(1 + 2 * (lag - 1));

    Eigen::MatrixXd restricted(out.rows(), static_cast<Eigen::Index>(own_columns.size()));
    for (std::size_t c = 0; c < own_columns.size(); ++c) {
        restricted.col(static_cast<Eigen::Index>(c)) = out.regressors.col(own_columns[c]);
    }
    const Eigen::MatrixXd gram = restricted.transpose() * restricted;
    const Eigen::VectorXd moment = restricted.transpose() * out.targets.col(0);
    const Eigen::VectorXd beta = linalg::spd_solve(gram, moment, "null model fit");

    out.coefficients.row(0).setZero();
    for (std::size_t c = 0; c < own_columns.size(); ++c) {
        out.coefficients(0, own_columns[c]) = beta(static_cast<Eigen::Index>(c));
    }
    out.residuals = out.targets - out.regressors * out.coefficients.transpose();
    out.residual_covariance =
        (out.residuals.transpose() * out.residuals) / static_cast<double>(out.rows());
    return out;
}

AlignedDataset generate_replication(const AlignedDataset& data, const VarFit& null_fit,
                                    std::size_t length, BootstrapScheme scheme,
                                    RngStream& stream) {
    const int p = null_fit.lag_order;
    if (length < static_cast<std::size_t>(p) + 1) {
        throw ValidationError("generate_replication: length must exceed the lag order");
    }
    const std::size_t residual_rows = static_cast<std::size_t>(null_fit.residuals.rows());
    if (scheme == BootstrapScheme::wild_rademacher && length - p > residual_rows) {
        throw ValidationError("generate_replication: wild scheme needs " +
                              std::to_string(length - p) + " residual rows, have " +
                              std::to_string(residual_rows));
    }

    AlignedDataset out;
    out.country = data.country;
    out.meta["source"] = "bootstrap-" + scheme_name(scheme);
    out.dates.reserve(length);
    out.returns.reserve(length);
    out.attention.reserve(length);
    const Date epoch = Date::from_ymd(2020, 1, 1);

    // Initial conditions: the first p actual observations.
    const std::size_t base = null_fit.sample_range.first;
    for (int i = 0; i < p; ++i) {
        out.dates.push_back(epoch + i);
        out.returns.push_back(data.returns[base + i]);
        out.attention.push_back(data.attention[base + i]);
    }

    const Eigen::MatrixXd& coef = null_fit.coefficients;
    for (std::size_t t = static_cast<std::size_t>(p); t < length; ++t) {
        Eigen::Vector2d innovation;
        if (scheme == BootstrapScheme::iid_residual) {
            const auto row = static_cast<Eigen::Index>(stream.uniform_below(residual_rows));
            innovation = null_fit.residuals.row(row);
        } else {
            const auto row = static_cast<Eigen::Index>(t - p);
            innovation = null_fit.residuals.row(row) * static_cast<double>(stream.rademacher());
        }
        Eigen::Vector2d y{coef(0, 0), coef(1, 0)};
        for (int lag = 1; lag <= p; ++lag) {
            const double lag_return = out.returns[t - lag];
            const double lag_attention = out.attention[t - lag];
            y(0) += coef(0, 1 + 2 * (lag - 1)) * lag_return +
                    coef(0, 2 + 2 * (lag - 1)) * lag_attention;
            y(1) += coef(1, 1 + 2 * (lag - 1)) * lag_return +
                    coef(1, 2 + 2 * (lag - 1)) * lag_attention;
        }
        y += innovation;
        if (std::abs(y(0)) > 1e8 || std::abs(y(1)) > 1e8) {
            throw ExplosivePathError("explosive simulated path at step " + std::to_string(t));
        }
        out.dates.push_back(epoch + static_cast<std::int32_t>(t));
        out.returns.push_back(y(0));
        out.attention.push_back(y(1));
    }
    return out;
}

namespace {

struct ReplicationOutcome {
    bool ok = false;
    double maximum = 0.0;
    int discards = 0;
    std::string error;
};

ReplicationOutcome run_replication(const AlignedDataset& data, const VarFit& null_fit,
                                   std::size_t length, Algorithm algorithm, bool robust,
                                   const BootstrapConfig& cfg, std::uint64_t replication) {
    constexpr int kMaxAttempts = 100;
    ReplicationOutcome outcome;
    RngStream stream(cfg.seed, replication);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        AlignedDataset path;
        try {
            path = generate_replication(data, null_fit, length, cfg.scheme, stream);
        } catch (const ExplosivePathError&) {
            ++outcome.discards;
            continue;
        }
        const StatSequence sequence = compute_sequence(path, algorithm, null_fit.lag_order,
                                                       robust, cfg.min_window, /*threads=*/1);
        bool found = false;
        double maximum = 0.0;
        for (const StatPoint& point : sequence.points) {
            if (point.value && (!found || *point.value > maximum)) {
                maximum = *point.value;
                found = true;
            }
        }
        if (!found) {
            // No evaluable window in this path; treat like an explosive draw.
            ++outcome.discards;
            continue;
        }
        outcome.ok = true;
        outcome.maximum = maximum;
        return outcome;
    }
    outcome.error = "replication " + std::to_string(replication) + " discarded " +
                    std::to_string(outcome.discards) + " times";
    return outcome;
}

} // namespace

CriticalValueSequence critical_values(const AlignedDataset& data, int lag_order,
                                      Algorithm algorithm, bool robust,
                                      const BootstrapConfig& cfg, int threads) {
    data.validate();
    if (cfg.replications < 1) throw ValidationError("critical_values: replications must be >= 1");
    if (!(cfg.size > 0.0 && cfg.size < 1.0)) {
        throw ValidationError("critical_values: size must lie in (0, 1)");
    }
    if (cfg.control_window < 1) throw ValidationError("critical_values: control_window >= 1");
    const std::size_t p = static_cast<std::size_t>(lag_order);
    const std::size_t length = cfg.min_window + cfg.control_window - 1 + p;
    if (data.size() < cfg.min_window + cfg.control_window) {
        throw ValidationError("critical_values: need at least " +
                              std::to_string(cfg.min_window + cfg.control_window) +
                              " observations, have " + std::to_string(data.size()));
    }
    if (cfg.scheme == BootstrapScheme::wild_rademacher && data.size() < length) {
        throw ValidationError("critical_values: wild scheme needs at least " +
                              std::to_string(length) + " observations, have " +
                              std::to_string(data.size()));
    }

    CriticalValueSequence out;
    out.algorithm = algorithm;
    out.robust = robust;
    out.quantile = 1.0 - cfg.size;
    out.replications_used = cfg.replications;
    out.simulated_length = length;
    if (robust && cfg.scheme == BootstrapScheme::iid_residual) {
        out.warnings.push_back(
            "robust Wald paired with iid-residual resampling; wild-rademacher preserves "
            "the heteroskedasticity the robust statistic guards against");
    }
    if (!robust && cfg.scheme == BootstrapScheme::wild_rademacher) {
        out.warnings.push_back(
            "homoskedastic Wald paired with wild-rademacher resampling; iid-residual is "
            "the matching default");
    }

    const VarFit null_fit = fit_null_model(data, lag_order);

    std::vector<ReplicationOutcome> outcomes(static_cast<std::size_t>(cfg.replications));
    detail::parallel_for_index(outcomes.size(), threads, [&](std::size_t r) {
        outcomes[r] = run_replication(data, null_fit, length, algorithm, robust, cfg,
                                      static_cast<std::uint64_t>(r));
    });

    std::vector<double> maxima;
    maxima.reserve(outcomes.size());
    int discards = 0;
    for (const ReplicationOutcome& outcome : outcomes) {
        discards += outcome.discards;
        if (outcome.ok) maxima.push_back(outcome.maximum);
    }
    out.discarded_replications = discards;
    if (maxima.size() < outcomes.size() ||
        discards * 10 > cfg.replications) {
        throw NumericalError("critical_values: " + std::to_string(discards) +
                             " replications discarded out of " +
                             std::to_string(cfg.replications) +
                             " (over 10% or unrecoverable); null model likely unstable");
    }

    std::sort(maxima.begin(), maxima.end());
    // ceil((1-size)(B+1)) order statistic; 475th of 499 at the 5% default.
    const auto rank = static_cast<std::size_t>(
        std::ceil((1.0 - cfg.size) * (static_cast<double>(cfg.replications) + 1.0)));
    const std::size_t clamped = std::min(std::max<std::size_t>(rank, 1), maxima.size());
    out.threshold = maxima[clamped - 1];

    const std::size_t first_endpoint = cfg.min_window - 1;
    out.indices.reserve(data.size() - first_endpoint);
    for (std::size_t index = first_endpoint; index < data.size(); ++index) {
        out.indices.push_back(index);
    }
    out.values.assign(out.indices.size(), out.threshold);
    return out;
}

} // namespace tvgc
