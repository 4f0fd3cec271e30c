#include "tvgc/stationarity.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "tvgc/errors.hpp"
#include "tvgc/linalg.hpp"

namespace tvgc {
namespace {

// Constant-case Dickey-Fuller critical values at 1/5/10%.
constexpr double kCrit1 = -3.43;
constexpr double kCrit5 = -2.86;
constexpr double kCrit10 = -2.57;

PValueBand band_of(double statistic) {
    if (statistic < kCrit1) return PValueBand::below_1pct;
    if (statistic < kCrit5) return PValueBand::pct1_to_5;
    if (statistic < kCrit10) return PValueBand::pct5_to_10;
    return PValueBand::above_10pct;
}

struct DfRegression {
    double rho = 0.0;
    double t_rho = 0.0;
    double se_rho = 0.0;
    double s2 = 0.0; // dof-corrected residual variance
    Eigen::VectorXd residuals;
    bool degenerate = false;
};

// Regression dy_t = a + rho*y_{t-1} + sum g_i dy_{t-i} + e over
// t = first_t .. n-1 (original-series indexing; first_t > lags).
DfRegression df_regression(std::span<const double> y, int lags, std::size_t first_t) {
    const std::size_t n = y.size();
    const auto m = static_cast<Eigen::Index>(n - first_t);
    const Eigen::Index k = 2 + lags;
    Eigen::MatrixXd design(m, k);
    Eigen::VectorXd target(m);
    double scale = 0.0;
    for (Eigen::Index r = 0; r < m; ++r) {
        const std::size_t t = first_t + static_cast<std::size_t>(r);
        target(r) = y[t] - y[t - 1];
        design(r, 0) = 1.0;
        design(r, 1) = y[t - 1];
        for (int i = 1; i <= lags; ++i) {
            design(r, 2 + i - 1) = y[t - i] - y[t - i - 1];
        }
        scale += y[t - 1] * y[t - 1];
    }
    scale /= static_cast<double>(m);

    const Eigen::MatrixXd gram = design.transpose() * design;
    const Eigen::MatrixXd gram_inverse = linalg::spd_inverse(gram, "unit root regression");
    const Eigen::VectorXd beta = gram_inverse * (design.transpose() * target);

    DfRegression out;
    out.rho = beta(1);
    out.residuals = target - design * beta;
    const double ssr = out.residuals.squaredNorm();

    // Residual variance at rounding level relative to the series scale means
    // the regression carries no sampling evidence; report a zero statistic
    // rather than a rounding-noise t-ratio.
    if (ssr / static_cast<double>(m) <= 1e-20 * scale + 1e-300) {
        out.degenerate = true;
        return out;
    }

    const double dof = static_cast<double>(m - k);
    if (dof <= 0.0) throw ValidationError("unit root regression: too few observations");
    out.s2 = ssr / dof;
    out.se_rho = std::sqrt(out.s2 * gram_inverse(1, 1));
    out.t_rho = out.rho / out.se_rho;
    return out;
}

} // namespace

std::string band_name(PValueBand band) {
    switch (band) {
        case PValueBand::below_1pct: return "below 1%";
        case PValueBand::pct1_to_5: return "1-5%";
        case PValueBand::pct5_to_10: return "5-10%";
        case PValueBand::above_10pct: return "above 10%";
    }
    throw ValidationError("unknown p-value band");
}

UnitRootResult adf_test(std::span<const double> series, int max_lag) {
    const std::size_t n = series.size();
    if (n < 25) throw ValidationError("adf_test: need at least 25 observations");
    if (max_lag < 0) throw ValidationError("adf_test: max_lag must be >= 0");
    if (n < static_cast<std::size_t>(max_lag) + 15) {
        throw ValidationError("adf_test: series too short for max_lag " +
                              std::to_string(max_lag));
    }

    // BIC over a common sample trimmed to max_lag so the criteria compare.
    const std::size_t common_first = static_cast<std::size_t>(max_lag) + 1;
    const double common_m = static_cast<double>(n - common_first);
    int best_lag = -1;
    double best_bic = std::numeric_limits<double>::infinity();
    for (int lags = 0; lags <= max_lag; ++lags) {
        DfRegression reg;
        try {
            reg = df_regression(series, lags, common_first);
        } catch (const NumericalError&) {
            continue; // candidate unusable; fall through to others
        }
        const double ssr = reg.degenerate ? 1e-300 : reg.residuals.squaredNorm();
        const double bic =
            std::log(ssr / common_m) + (lags + 2) * std::log(common_m) / common_m;
        if (bic < best_bic) {
            best_bic = bic;
            best_lag = lags;
        }
    }
    if (best_lag < 0) throw NumericalError("adf_test: every candidate regression failed");

    const DfRegression reg =
        df_regression(series, best_lag, static_cast<std::size_t>(best_lag) + 1);
    UnitRootResult out;
    out.test = UnitRootTest::adf;
    out.lags_or_bandwidth = best_lag;
    out.statistic = reg.degenerate ? 0.0 : reg.t_rho;
    out.band = band_of(out.statistic);
    return out;
}

UnitRootResult pp_test(std::span<const double> series, int bandwidth) {
    const std::size_t n = series.size();
    if (n < 25) throw ValidationError("pp_test: need at least 25 observations");
    if (bandwidth < 0) {
        bandwidth = static_cast<int>(
            std::floor(4.0 * std::pow(static_cast<double>(n) / 100.0, 2.0 / 9.0)));
    }

    const DfRegression reg = df_regression(series, /*lags=*/0, /*first_t=*/1);
    UnitRootResult out;
    out.test = UnitRootTest::phillips_perron;
    out.lags_or_bandwidth = bandwidth;
    if (reg.degenerate) {
        out.statistic = 0.0;
        out.band = band_of(out.statistic);
        return out;
    }

    const auto m = static_cast<double>(reg.residuals.size());
    const double gamma0 = reg.residuals.squaredNorm() / m;
    double lambda2 = gamma0;
    for (int j = 1; j <= bandwidth; ++j) {
        double gamma_j = 0.0;
        for (Eigen::Index t = j; t < reg.residuals.size(); ++t) {
            gamma_j += reg.residuals(t) * reg.residuals(t - j);
        }
        gamma_j /= m;
        lambda2 += 2.0 * (1.0 - static_cast<double>(j) / (bandwidth + 1.0)) * gamma_j;
    }
    if (!(lambda2 > 0.0)) {
        throw NumericalError("pp_test: non-positive long-run variance estimate");
    }

    // Z_tau: kernel-corrected t-ratio (constant case).
    const double s = std::sqrt(reg.s2);
    const double z = std::sqrt(gamma0 / lambda2) * reg.t_rho -
                     (lambda2 - gamma0) / (2.0 * std::sqrt(lambda2)) * (m * reg.se_rho / s);
    out.statistic = z;
    out.band = band_of(out.statistic);
    return out;
}

} // namespace tvgc
