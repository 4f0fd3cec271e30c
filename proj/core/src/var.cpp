#include "tvgc/var.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tvgc/errors.hpp"
#include "tvgc/linalg.hpp"

namespace tvgc {
namespace detail {

VarFit fit_with_presample(const AlignedDataset& data, const VarSpec& spec, IndexRange window,
                          int presample) {
    const int p = spec.lag_order;
    if (p < 1) throw ValidationError("var fit: lag order must be >= 1");
    if (!spec.include_intercept) throw ValidationError("var fit: intercept is required");
    if (presample < p) throw ValidationError("var fit: presample shorter than lag order");
    if (window.first > window.last || window.last >= data.size()) {
        throw ValidationError("var fit: window [" + std::to_string(window.first) + ", " +
                              std::to_string(window.last) + "] outside data of length " +
                              std::to_string(data.size()));
    }

    const std::size_t window_length = window.length();
    // Identifiability margin: at least 2p+1+10 effective rows after the
    // presample is spent on lags.
    const std::size_t min_length = static_cast<std::size_t>(presample + 2 * p + 11);
    if (window_length < min_length) {
        throw ValidationError("var fit: window of " + std::to_string(window_length) +
                              " observations too short for lag " + std::to_string(p) +
                              ", need at least " + std::to_string(min_length));
    }

    const Eigen::Index m = static_cast<Eigen::Index>(window_length) - presample;
    const Eigen::Index k = 2 * p + 1;

    VarFit out;
    out.lag_order = p;
    out.sample_range = window;
    out.regressors.resize(m, k);
    out.targets.resize(m, 2);
    for (Eigen::Index r = 0; r < m; ++r) {
        const std::size_t t = window.first + static_cast<std::size_t>(presample + r);
        out.regressors(r, 0) = 1.0;
        for (int lag = 1; lag <= p; ++lag) {
            out.regressors(r, 1 + 2 * (lag - 1)) = data.returns[t - lag];
            out.regressors(r, 2 + 2 * (lag - 1)) = data.attention[t - lag];
        }
        out.targets(r, 0) = data.returns[t];
        out.targets(r, 1) = data.attention[t];
    }

    const Eigen::MatrixXd gram = out.regressors.transpose() * out.regressors;
    const Eigen::MatrixXd moment = out.regressors.transpose() * out.targets;
    out.coefficients = linalg::spd_solve(gram, moment, "var fit").transpose();
    out.residuals = out.targets - out.regressors * out.coefficients.transpose();
    out.residual_covariance =
        (out.residuals.transpose() * out.residuals) / static_cast<double>(m);
    return out;
}

} // namespace detail

VarFit fit(const AlignedDataset& data, const VarSpec& spec, IndexRange window) {
    return detail::fit_with_presample(data, spec, window, spec.lag_order);
}

int select_lag_bic(const AlignedDataset& data, IndexRange window, int max_lag) {
    if (max_lag < 1) throw ValidationError("select_lag_bic: max_lag must be >= 1");
    const std::size_t needed = static_cast<std::size_t>(3 * max_lag + 11);
    if (window.first > window.last || window.last >= data.size() || window.length() < needed) {
        throw ValidationError("select_lag_bic: window too short for max lag " +
                              std::to_string(max_lag) + ", need at least " +
                              std::to_string(needed) + " observations");
    }

    const double effective = static_cast<double>(window.length()) - max_lag;
    int best_p = 0;
    double best_bic = std::numeric_limits<double>::infinity();
    for (int p = 1; p <= max_lag; ++p) {
        const VarFit candidate =
            detail::fit_with_presample(data, VarSpec{.lag_order = p}, window, max_lag);
        const Eigen::Matrix2d& sigma = candidate.residual_covariance;
        const double det = sigma(0, 0) * sigma(1, 1) - sigma(0, 1) * sigma(1, 0);
        if (!(det > 0.0)) {
            throw NumericalError("select_lag_bic: degenerate residual covariance at lag " +
                                 std::to_string(p));
        }
        const double penalty = 2.0 * (2.0 * p + 1.0) * std::log(effective) / effective;
        const double bic = std::log(det) + penalty;
        if (bic < best_bic) { // strict: ties keep the smaller lag
            best_bic = bic;
            best_p = p;
        }
    }
    return best_p;
}

} // namespace tvgc
