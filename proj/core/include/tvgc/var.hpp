#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "tvgc/series.hpp"

namespace tvgc {

/// Inclusive observation range [first, last] into an AlignedDataset.
struct IndexRange {
    std::size_t first = 0;
    std::size_t last = 0;

    std::size_t length() const { return last - first + 1; }
    bool operator==(const IndexRange&) const = default;
};

struct VarSpec {
    int lag_order = 1;
    bool include_intercept = true; // always true in this artifact
};

/// Least-squares fit of the bivariate VAR(p)
///   y_t = c + Phi_1 y_{t-1} + ... + Phi_p y_{t-p} + eps_t,
/// with y_t = [returns_t, attention_t].
///
/// Coefficient layout is fixed repo-wide: one row per equation (row 0 =
/// returns, row 1 = attention); within a row: intercept, then one block per
/// lag ordered [returns, attention]. The regressor matrix X shares that
/// column order, so residuals == Y - X * coefficients^T exactly as
/// estimated.
struct VarFit {
    int lag_order = 0;
    Eigen::MatrixXd coefficients;       // 2 x (2p+1)
    Eigen::MatrixXd regressors;         // (T_w - presample) x (2p+1)
    Eigen::MatrixXd targets;            // (T_w - presample) x 2
    Eigen::MatrixXd residuals;          // (T_w - presample) x 2
    Eigen::Matrix2d residual_covariance; // eps'eps / rows (no dof correction)
    IndexRange sample_range;

    Eigen::Index rows() const { return regressors.rows(); }
    Eigen::Index regressor_count() const { return regressors.cols(); }
};

/// OLS fit of the VAR over `window`. The first `spec.lag_order` observations
/// of the window serve as presample. Rejects windows shorter than
/// 2p + 11 (identifiability margin) and rank-deficient regressor matrices
/// (with a condition diagnostic). Pure: identical inputs give bit-identical
/// output.
VarFit fit(const AlignedDataset& data, const VarSpec& spec, IndexRange window);

namespace detail {
/// As fit(), but with the presample length overridden (>= lag_order). Used
/// by BIC selection to hold the estimation sample fixed across candidate
/// lag orders.
VarFit fit_with_presample(const AlignedDataset& data, const VarSpec& spec, IndexRange window,
                          int presample);
} // namespace detail

/// Lag order minimizing BIC(p) = ln det(Sigma_p) + k ln(T*)/T* over
/// p in {1..max_lag}, with k = 2(2p+1) and T* the number of fitted
/// observations held fixed across candidates (every candidate is estimated
/// on the window trimmed by max_lag presample rows). Ties break toward the
/// smaller lag.
int select_lag_bic(const AlignedDataset& data, IndexRange window, int max_lag);

} // namespace tvgc
