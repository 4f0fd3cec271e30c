#include "tvgc/wald.hpp"

#include <algorithm>
#include <string>

#include "tvgc/errors.hpp"
#include "tvgc/linalg.hpp"

namespace tvgc {
namespace {

struct Selected {
    int equation = 0;
    std::vector<Eigen::Index> columns;
    Eigen::VectorXd coefficients;
};

Selected extract(const VarFit& fit, const SelectionMatrix& selection) {
    const Eigen::Index k = fit.regressor_count();
    if (selection.lag_order != fit.lag_order ||
        selection.entries.cols() != 2 * k) {
        throw ValidationError("wald: selection matrix built for lag " +
                              std::to_string(selection.lag_order) + " does not match fit lag " +
                              std::to_string(fit.lag_order));
    }
    Selected sel;
    sel.equation = selection.target_equation;
    sel.columns.reserve(selection.positions.size());
    sel.coefficients.resize(static_cast<Eigen::Index>(selection.positions.size()));
    for (std::size_t i = 0; i < selection.positions.size(); ++i) {
        const Eigen::Index flat = selection.positions[i];
        const Eigen::Index equation = flat / k;
        const Eigen::Index column = flat % k;
        if (equation != sel.equation) {
            throw ValidationError("wald: selection rows span multiple equations");
        }
        sel.columns.push_back(column);
        sel.coefficients(static_cast<Eigen::Index>(i)) = fit.coefficients(equation, column);
    }
    return sel;
}

Eigen::MatrixXd pick_submatrix(const Eigen::MatrixXd& m, const std::vector<Eigen::Index>& idx) {
    Eigen::MatrixXd out(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = 0; j < idx.size(); ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(idx[i], idx[j]);
        }
    }
    return out;
}

double quadratic_form(const Eigen::MatrixXd& middle, const Eigen::VectorXd& b, const char* what) {
    const Eigen::VectorXd solved = linalg::spd_solve(middle, b, what);
    return std::max(0.0, b.dot(solved));
}

} // namespace

SelectionMatrix build_selection(int lag_order, CausalDirection direction) {
    if (lag_order < 1) throw ValidationError("build_selection: lag order must be >= 1");
    const int p = lag_order;
    const Eigen::Index k = 2 * p + 1;

    SelectionMatrix sel;
    sel.lag_order = p;
    if (direction == CausalDirection::attention_to_returns) {
        sel.target_equation = 0;
        sel.source_variable = 1;
    } else {
        sel.target_equation = 1;
        sel.source_variable = 0;
    }
    sel.entries = Eigen::MatrixXd::Zero(p, 2 * k);
    sel.positions.reserve(p);
    for (int lag = 1; lag <= p; ++lag) {
        // Within-equation layout: [intercept, lag-1 returns, lag-1 attention,
        // ..., lag-p returns, lag-p attention].
        const Eigen::Index column = 1 + 2 * (lag - 1) + sel.source_variable;
        const Eigen::Index flat = sel.target_equation * k + column;
        sel.entries(lag - 1, flat) = 1.0;
        sel.positions.push_back(flat);
    }
    return sel;
}

namespace {

// Residual variance at rounding level relative to the target scale means a
// 0/0 statistic; reject instead of dividing.
void guard_degenerate_residuals(const VarFit& fit, int equation) {
    const double variance = fit.residual_covariance(equation, equation);
    const double scale =
        fit.targets.col(equation).squaredNorm() / static_cast<double>(fit.rows());
    if (variance <= 1e-20 * scale + 1e-300) {
        throw NumericalError("wald: degenerate residual covariance in equation " +
                             std::to_string(equation) + " (variance " +
                             std::to_string(variance) + ")");
    }
}

} // namespace

WaldResult wald_homoskedastic(const VarFit& fit, const SelectionMatrix& selection) {
    const Selected sel = extract(fit, selection);
    guard_degenerate_residuals(fit, sel.equation);
    const Eigen::MatrixXd gram = fit.regressors.transpose() * fit.regressors;
    const Eigen::MatrixXd gram_inverse = linalg::spd_inverse(gram, "wald");

    // R (Omega (x) (X'X)^{-1}) R' collapses to omega_ee * (X'X)^{-1}[cols, cols]
    // because every selected coefficient lives in the same equation.
    const double omega = fit.residual_covariance(sel.equation, sel.equation);
    const Eigen::MatrixXd middle = omega * pick_submatrix(gram_inverse, sel.columns);

    WaldResult result;
    result.statistic = quadratic_form(middle, sel.coefficients, "wald middle");
    result.dof = selection.lag_order;
    result.robust = false;
    result.window = fit.sample_range;
    return result;
}

WaldResult wald_robust(const VarFit& fit, const SelectionMatrix& selection) {
    const Selected sel = extract(fit, selection);
    guard_degenerate_residuals(fit, sel.equation);
    const Eigen::MatrixXd gram = fit.regressors.transpose() * fit.regressors;
    const Eigen::MatrixXd gram_inverse = linalg::spd_inverse(gram, "wald robust");

    // Equation block of the sandwich: (X'X)^{-1} [sum_t e_t^2 x_t x_t'] (X'X)^{-1}.
    const Eigen::MatrixXd weighted =
        fit.regressors.array().colwise() * fit.residuals.col(sel.equation).array();
    const Eigen::MatrixXd meat = weighted.transpose() * weighted;
    const Eigen::MatrixXd sandwich = gram_inverse * meat * gram_inverse;
    const Eigen::MatrixXd middle = pick_submatrix(sandwich, sel.columns);

    WaldResult result;
    result.statistic = quadratic_form(middle, sel.coefficients, "wald robust middle");
    result.dof = selection.lag_order;
    result.robust = true;
    result.window = fit.sample_range;
    return result;
}

} // namespace tvgc
