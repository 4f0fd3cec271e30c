#include "tvgc/linalg.hpp"

#include <cmath>
#include <sstream>

#include "tvgc/errors.hpp"

namespace tvgc::linalg {
namespace {

struct Equilibrated {
    Eigen::VectorXd scale;     // d_i = 1/sqrt(a_ii)
    Eigen::MatrixXd matrix;    // D A D
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen;
};

Equilibrated factor(const Eigen::MatrixXd& a, const char* what) {
    const Eigen::Index n = a.rows();
    Equilibrated eq;
    eq.scale.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double d = a(i, i);
        if (!(d > 0.0) || !std::isfinite(d)) {
            std::ostringstream msg;
            msg << what << ": matrix not positive definite (diagonal " << d << " at " << i << ")";
            throw NumericalError(msg.str());
        }
        eq.scale(i) = 1.0 / std::sqrt(d);
    }
    eq.matrix = eq.scale.asDiagonal() * a * eq.scale.asDiagonal();
    eq.eigen.compute(eq.matrix);
    if (eq.eigen.info() != Eigen::Success) {
        throw NumericalError(std::string(what) + ": eigendecomposition failed");
    }
    const double min_ev = eq.eigen.eigenvalues().minCoeff();
    const double max_ev = eq.eigen.eigenvalues().maxCoeff();
    if (!(min_ev > 0.0) || max_ev / min_ev > kMaxCondition) {
        std::ostringstream msg;
        msg << what << ": matrix numerically rank deficient (equilibrated eigenvalue range ["
            << min_ev << ", " << max_ev << "], condition "
            << (min_ev > 0.0 ? max_ev / min_ev : std::numeric_limits<double>::infinity())
            << " exceeds " << kMaxCondition << ")";
        throw NumericalError(msg.str());
    }
    return eq;
}

} // namespace

Eigen::MatrixXd spd_solve(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const char* what) {
    const Equilibrated eq = factor(a, what);
    // A^{-1} = D (DAD)^{-1} D
    const Eigen::MatrixXd scaled_b = eq.scale.asDiagonal() * b;
    const Eigen::MatrixXd y = eq.eigen.eigenvectors() *
                              eq.eigen.eigenvalues().cwiseInverse().asDiagonal() *
                              (eq.eigen.eigenvectors().transpose() * scaled_b);
    return eq.scale.asDiagonal() * y;
}

Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& a, const char* what) {
    return spd_solve(a, Eigen::MatrixXd::Identity(a.rows(), a.cols()), what);
}

} // namespace tvgc::linalg
