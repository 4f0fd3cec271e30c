#pragma once

#include <span>
#include <string>

namespace tvgc {

enum class UnitRootTest { adf, phillips_perron };

/// Coarse p-value band from the constant-case Dickey-Fuller critical values
/// (-3.43 / -2.86 / -2.57 at 1/5/10%).
enum class PValueBand { below_1pct, pct1_to_5, pct5_to_10, above_10pct };

std::string band_name(PValueBand band);

struct UnitRootResult {
    UnitRootTest test = UnitRootTest::adf;
    double statistic = 0.0;
    PValueBand band = PValueBand::above_10pct;
    int lags_or_bandwidth = 0; // ADF: selected lag; PP: kernel bandwidth
    // Deterministic term: constant only, throughout this artifact.
};

/// Augmented Dickey-Fuller test with constant:
///   dy_t = a + rho*y_{t-1} + sum_{i=1..k} g_i dy_{t-i} + e_t,
/// k chosen by BIC over {0..max_lag} on a common trimmed sample, then
/// refitted on the maximal sample for the chosen k. The statistic is the
/// t-ratio of rho. Requires length >= 25.
UnitRootResult adf_test(std::span<const double> series, int max_lag);

/// Phillips-Perron Z_tau: the Dickey-Fuller regression without lag
/// augmentation, corrected with a Bartlett-kernel long-run variance at the
/// given bandwidth (default floor(4 (T/100)^{2/9})).
UnitRootResult pp_test(std::span<const double> series, int bandwidth = -1);

} // namespace tvgc
