#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "gaplight/time_series.hpp"

namespace gaplight {

struct Burst {
  double start = 0.0;  // first sample at or above threshold
  double end = 0.0;    // last sample at or above threshold
  double peak_time = 0.0;
  double peak_intensity = 0.0;
  double fwhm = 0.0;   // full width at half of this burst's peak
};

struct BurstReport {
  std::vector<Burst> bursts;
  std::optional<double> delay_time;  // first peak time
  // Time fraction spent below the threshold.
  double quiescent_fraction = 1.0;
  // Minimum intensity strictly between consecutive bursts, over the global peak.
  std::vector<double> inter_burst_minima;
  double train_duration = 0.0;  // last burst end − first burst start
  double global_peak = 0.0;
  double threshold_frac = 0.1;

  std::size_t count() const noexcept { return bursts.size(); }
};

// A burst is a maximal run of samples with intensity >= threshold_frac × peak.
// Throws EmptySeries.
BurstReport detect_bursts(const TimeSeries& series, double threshold_frac = 0.1);

enum class LocalizationVerdict { localized, partial, deexcited };

std::string_view to_string(LocalizationVerdict v) noexcept;

struct PlateauOptions {
  double window_fraction = 0.1;  // trailing share of the time span
  double slope_tol = 1e-3;       // on |ds/dt| / max(|s|, 0.01)
  double localization_tol = 1e-3;

  bool operator==(const PlateauOptions&) const = default;
};

struct StationaryReport {
  double s_infinity = 0.0;
  double eta_infinity = 0.0;
  std::optional<double> eta_predicted;      // (1 + 1/g)/2, absent for g <= 0
  std::optional<double> relative_deviation; // |η∞ − η_pred| / η_pred
  double window_start = 0.0;
  double window_end = 0.0;
  double relative_slope = 0.0;
  LocalizationVerdict verdict = LocalizationVerdict::partial;
};

// Throws EmptySeries, or NotStationary when the trailing window still drifts.
StationaryReport stationary_excitation(const TimeSeries& series, double g,
                                       const PlateauOptions& options = {});

enum class Regime { localized_single_atom, coherent_burst, field_dominated, intermediate };

std::string_view to_string(Regime r) noexcept;

struct RegimeOptions {
  double g_min = 5.0;
  double alpha_ratio_max = 0.1;
  double g_zero_tol = 1e-9;

  bool operator==(const RegimeOptions&) const = default;
};

// alpha_c may be +inf when undefined (g = 0 or s0 = 0).
Regime classify_regime(double g, double alpha, double alpha_c, const RegimeOptions& options = {});

}  // namespace gaplight
