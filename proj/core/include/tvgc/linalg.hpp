#pragma once

#include <Eigen/Dense>

namespace tvgc::linalg {

/// Maximum admissible condition number (after symmetric equilibration) for
/// any matrix the library inverts. Windows beyond this are rejected as
/// rank-deficient rather than silently producing noise.
inline constexpr double kMaxCondition = 1e12;

/// Solves A * X = B for symmetric positive-definite A via symmetric
/// equilibration and an eigendecomposition. Throws NumericalError with a
/// condition diagnostic when A is not numerically positive definite or its
/// equilibrated condition number exceeds kMaxCondition.
///
/// Equilibration makes the guard scale-free: a window is rejected for
/// collinearity, never because the two series live on different scales.
Eigen::MatrixXd spd_solve(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                          const char* what);

/// Inverse of a symmetric positive-definite matrix, same guard as spd_solve.
Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& a, const char* what);

} // namespace tvgc::linalg
