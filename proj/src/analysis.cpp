#include "gaplight/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "gaplight/errors.hpp"

namespace gaplight {
namespace {

double crossing(double t0, double i0, double t1, double i1, double level) {
  if (i1 == i0) return t0;
  return t0 + (level - i0) * (t1 - t0) / (i1 - i0);
}

}  // namespace

std::string_view to_string(LocalizationVerdict v) noexcept {
  switch (v) {
    case LocalizationVerdict::localized: return "localized";
    case LocalizationVerdict::partial: return "partial";
    case LocalizationVerdict::deexcited: return "deexcited";
  }
  return "partial";
}

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::localized_single_atom: return "localized_single_atom";
    case Regime::coherent_burst: return "coherent_burst";
    case Regime::field_dominated: return "field_dominated";
    case Regime::intermediate: return "intermediate";
  }
  return "intermediate";
}

BurstReport detect_bursts(const TimeSeries& series, double threshold_frac) {
  if (series.empty()) throw Error(ErrorKind::EmptySeries, "cannot detect bursts in an empty series");
  if (!(threshold_frac > 0.0 && threshold_frac < 1.0))
    throw Error(ErrorKind::InvalidParameter, "burst threshold must lie in (0, 1)");

  const auto& t = series.t;
  const auto& I = series.intensity;
  const std::size_t n = series.size();

  BurstReport report;
  report.threshold_frac = threshold_frac;
  report.global_peak = *std::max_element(I.begin(), I.end());
  if (!(report.global_peak > 0.0)) return report;
  const double level = threshold_frac * report.global_peak;

  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i = 0; i < n;) {
    if (I[i] < level) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && I[j + 1] >= level) ++j;
    runs.emplace_back(i, j);
    i = j + 1;
  }

  for (const auto& [first, last] : runs) {
    const auto peak_it = std::max_element(I.begin() + static_cast<std::ptrdiff_t>(first),
                                          I.begin() + static_cast<std::ptrdiff_t>(last) + 1);
    const auto p = static_cast<std::size_t>(peak_it - I.begin());
    const double half = 0.5 * I[p];

    double left = t.front();
    for (std::size_t k = p; k > 0; --k) {
      if (I[k - 1] < half) {
        left = crossing(t[k - 1], I[k - 1], t[k], I[k], half);
        break;
      }
    }
    double right = t.back();
    for (std::size_t k = p; k + 1 < n; ++k) {
      if (I[k + 1] < half) {
        right = crossing(t[k], I[k], t[k + 1], I[k + 1], half);
        break;
      }
    }
    report.bursts.push_back({t[first], t[last], t[p], I[p], right - left});
  }

  for (std::size_t b = 0; b + 1 < runs.size(); ++b) {
    double lowest = report.global_peak;
    for (std::size_t k = runs[b].second + 1; k < runs[b + 1].first; ++k) lowest = std::min(lowest, I[k]);
    report.inter_burst_minima.push_back(lowest / report.global_peak);
  }

  double below = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (I[k] < level) below += t[k + 1] - t[k];
  }
  const double span = t.back() - t.front();
  report.quiescent_fraction = span > 0.0 ? below / span : (I.front() < level ? 1.0 : 0.0);

  if (!report.bursts.empty()) {
    report.delay_time = report.bursts.front().peak_time;
    report.train_duration = report.bursts.back().end - report.bursts.front().start;
  }
  return report;
}

StationaryReport stationary_excitation(const TimeSeries& series, double g, const PlateauOptions& options) {
  if (series.empty()) throw Error(ErrorKind::EmptySeries, "cannot extract a plateau from an empty series");
  const auto& t = series.t;
  const auto& s = series.s_mean;
  const double t_end = t.back();
  const double t_start = t_end - options.window_fraction * (t_end - t.front());

  std::size_t first = 0;
  while (first < t.size() && t[first] < t_start) ++first;
  if (t.size() - first < 2) throw Error(ErrorKind::NotStationary, "plateau window holds fewer than two samples");

  // Least-squares slope and time-weighted mean over the window.
  const double count = static_cast<double>(t.size() - first);
  double mt = 0.0;
  double ms = 0.0;
  for (std::size_t k = first; k < t.size(); ++k) {
    mt += t[k];
    ms += s[k];
  }
  mt /= count;
  ms /= count;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = first; k < t.size(); ++k) {
    sxy += (t[k] - mt) * (s[k] - ms);
    sxx += (t[k] - mt) * (t[k] - mt);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;

  double area = 0.0;
  for (std::size_t k = first; k + 1 < t.size(); ++k) area += 0.5 * (s[k] + s[k + 1]) * (t[k + 1] - t[k]);
  const double duration = t.back() - t[first];
  const double s_inf = duration > 0.0 ? area / duration : ms;

  StationaryReport report;
  report.window_start = t[first];
  report.window_end = t_end;
  report.relative_slope = std::abs(slope) / std::max(std::abs(s_inf), 0.01);
  if (report.relative_slope >= options.slope_tol)
    throw Error(ErrorKind::NotStationary, "trailing window still drifts: relative slope " +
                                              std::to_string(report.relative_slope));

  report.s_infinity = s_inf;
  report.eta_infinity = 0.5 * (1.0 + s_inf);
  if (g > 0.0) {
    report.eta_predicted = 0.5 * (1.0 + 1.0 / g);
    report.relative_deviation = std::abs(report.eta_infinity - *report.eta_predicted) / *report.eta_predicted;
  }
  const double tol = options.localization_tol;
  if (report.eta_infinity >= 1.0 - tol)
    report.verdict = LocalizationVerdict::localized;
  else if (report.eta_infinity <= tol)
    report.verdict = LocalizationVerdict::deexcited;
  else
    report.verdict = LocalizationVerdict::partial;
  return report;
}

Regime classify_regime(double g, double alpha, double alpha_c, const RegimeOptions& options) {
  if (std::abs(g) <= options.g_zero_tol) return Regime::localized_single_atom;
  if (alpha > alpha_c) return Regime::field_dominated;
  if (g > options.g_min && alpha < options.alpha_ratio_max * alpha_c) return Regime::coherent_burst;
  return Regime::intermediate;
}

}  // namespace gaplight
