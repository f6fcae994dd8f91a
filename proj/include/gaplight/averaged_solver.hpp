#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>

#include "gaplight/time_series.hpp"

namespace gaplight {

// Closure for the slow variables (units of γ2):
//   dw/dt = −2(1 − g s) w + 2 α s²
//   ds/dt = −g w − α s − γ1 (s − ζ)
// The linear gain is Γ(s) = 1 − g s, and for α → 0 the stable fixed point is
// s* = 1/g. Here w is normalized like 4|u|² of the per-atom amplitude.
struct AveragedParams {
  double g = 0.0;
  double alpha = 0.0;
  double gamma1 = 0.0;
  double zeta = 1.0;
};

struct AveragedState {
  double t = 0.0;
  double w = 0.0;
  double s = 0.0;
};

struct AveragedOptions {
  double dt = 1e-2;
  double t_end = 100.0;
  // The step is halved while one step moves s by more than this (or ln w by
  // more than 0.1).
  double max_ds_per_step = 0.01;
  SamplePolicy sampling{};
};

struct AveragedRun {
  TimeSeries series;
  AveragedState final_state;
  std::size_t steps = 0;
  std::size_t rejected_steps = 0;
};

std::array<double, 2> averaged_rhs(const AveragedParams& p, double w, double s) noexcept;

// Intensity proxy g·w. Throws InvalidParameter for w0 < 0, |s0| > 1 or α < 0.
AveragedRun integrate_averaged(const AveragedParams& params, double w0, double s0,
                               const AveragedOptions& options);

struct FixedPoint {
  double w = 0.0;
  double s = 0.0;
  double eta = 0.0;
  std::array<std::complex<double>, 2> eigenvalues{};
  bool stable = false;
  // α above α_c (when given) or s* far from 1/g.
  bool regime_mismatch = false;
  std::size_t n_roots = 0;
};

// Requires g > 1. Throws NoFixedPointInGainRegime when no root with w >= 0
// lies in s ∈ (−1, 1).
FixedPoint stationary_point(const AveragedParams& params,
                            std::optional<double> alpha_c = std::nullopt);

std::array<std::complex<double>, 2> averaged_jacobian_eigenvalues(const AveragedParams& p,
                                                                  double w, double s) noexcept;

}  // namespace gaplight
