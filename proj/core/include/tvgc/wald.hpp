#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tvgc/var.hpp"

namespace tvgc {

/// Which direction of predictive causality the restrictions test. The
/// pipeline only exercises attention -> returns; the reverse direction is
/// provided by symmetry of the selection construction.
enum class CausalDirection {
    attention_to_returns,
    returns_to_attention,
};

/// 0/1 matrix R (p x 2(2p+1)) picking, from the row-vectorized coefficient
/// stack [returns-equation row, attention-equation row], the p lag
/// coefficients of the source variable in the target equation. Each row
/// selects exactly one coefficient.
struct SelectionMatrix {
    Eigen::MatrixXd entries;
    int lag_order = 0;
    int target_equation = 0;
    int source_variable = 0;
    /// Flat indices into the stacked coefficient vector, one per row of
    /// `entries`; equation-major, i.e. index = equation*(2p+1) + column.
    std::vector<Eigen::Index> positions;
};

SelectionMatrix build_selection(int lag_order,
                                CausalDirection direction = CausalDirection::attention_to_returns);

struct WaldResult {
    double statistic = 0.0;
    int dof = 0;
    bool robust = false;
    IndexRange window;
};

/// Wald statistic for the zero restrictions R vce(Pi) = 0 under conditional
/// homoskedasticity:
///   W = [R b]' [R (Omega (x) (X'X)^{-1}) R']^{-1} [R b]
/// with Omega the residual covariance of the fit. Rejects a singular middle
/// matrix with a conditioning diagnostic.
WaldResult wald_homoskedastic(const VarFit& fit, const SelectionMatrix& selection);

/// Heteroskedasticity-robust variant: the coefficient covariance is the
/// White sandwich
///   V = (I (x) (X'X)^{-1}) [sum_t eps_t eps_t' (x) x_t x_t'] (I (x) (X'X)^{-1})
/// substituted for Omega (x) (X'X)^{-1}.
WaldResult wald_robust(const VarFit& fit, const SelectionMatrix& selection);

} // namespace tvgc
