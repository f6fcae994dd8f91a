#include "gaplight/averaged_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "gaplight/errors.hpp"

namespace gaplight {
namespace {

constexpr int kMaxHalvings = 24;
constexpr std::size_t kScanPoints = 4000;

void validate(const AveragedParams& p) {
  if (!std::isfinite(p.g)) throw Error(ErrorKind::InvalidParameter, "g must be finite");
  if (!std::isfinite(p.alpha) || p.alpha < 0.0) throw Error(ErrorKind::InvalidParameter, "alpha must be >= 0");
  if (!std::isfinite(p.gamma1) || p.gamma1 < 0.0) throw Error(ErrorKind::InvalidParameter, "gamma1 must be >= 0");
  if (!std::isfinite(p.zeta) || p.zeta < -1.0 || p.zeta > 1.0)
    throw Error(ErrorKind::InvalidParameter, "zeta out of [-1,1]");
}

struct Candidate {
  double w;
  double s;
};

}  // namespace

std::array<double, 2> averaged_rhs(const AveragedParams& p, double w, double s) noexcept {
  return {-2.0 * (1.0 - p.g * s) * w + 2.0 * p.alpha * s * s,
          -p.g * w - p.alpha * s - p.gamma1 * (s - p.zeta)};
}

std::array<std::complex<double>, 2> averaged_jacobian_eigenvalues(const AveragedParams& p, double w,
                                                                  double s) noexcept {
  const double a = -2.0 * (1.0 - p.g * s);
  const double b = 2.0 * p.g * w + 4.0 * p.alpha * s;
  const double c = -p.g;
  const double d = -p.alpha - p.gamma1;
  const double half_trace = 0.5 * (a + d);
  const double det = a * d - b * c;
  const std::complex<double> root = std::sqrt(std::complex<double>(half_trace * half_trace - det, 0.0));
  return {half_trace + root, half_trace - root};
}

namespace {

// Exponential growth of w before a burst is also resolved: at most this
// change in ln w per step.
constexpr double kMaxLogWPerStep = 0.1;

double log_change(double before, double after) {
  if (before <= 0.0 || after <= 0.0) return 0.0;
  return std::abs(std::log(after / before));
}

}  // namespace

AveragedRun integrate_averaged(const AveragedParams& params, double w0, double s0,
                               const AveragedOptions& options) {
  validate(params);
  if (!std::isfinite(w0) || w0 < 0.0) throw Error(ErrorKind::InvalidParameter, "w0 must be >= 0");
  if (!std::isfinite(s0) || s0 < -1.0 || s0 > 1.0) throw Error(ErrorKind::InvalidParameter, "s0 out of [-1,1]");
  if (!(options.dt > 0.0) || !(options.t_end > 0.0))
    throw Error(ErrorKind::InvalidParameter, "dt and t_end must be positive");

  AveragedRun run;
  Sampler sampler(options.sampling);
  AveragedState y{0.0, w0, s0};
  sampler.offer(run.series, y.t, y.s, y.w, params.g * y.w, true);

  auto rk4 = [&](const AveragedState& x, double h) {
    const auto k1 = averaged_rhs(params, x.w, x.s);
    const auto k2 = averaged_rhs(params, x.w + 0.5 * h * k1[0], x.s + 0.5 * h * k1[1]);
    const auto k3 = averaged_rhs(params, x.w + 0.5 * h * k2[0], x.s + 0.5 * h * k2[1]);
    const auto k4 = averaged_rhs(params, x.w + h * k3[0], x.s + h * k3[1]);
    return AveragedState{x.t + h, x.w + (h / 6.0) * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
                         x.s + (h / 6.0) * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
  };

  // Steps are dt/2^level; `level` drops back toward 0 once steps are easy.
  // Time is counted in integer units of the finest step to avoid drift.
  const double unit = std::ldexp(options.dt, -kMaxHalvings);
  const std::int64_t total_units = std::llround(options.t_end / unit);
  std::int64_t units_done = 0;
  int level = 0;
  while (units_done < total_units) {
    AveragedState next{};
    std::int64_t step_units = 0;
    for (;;) {
      step_units = std::min<std::int64_t>(std::int64_t{1} << (kMaxHalvings - level), total_units - units_done);
      next = rk4(y, static_cast<double>(step_units) * unit);
      const bool ok = std::isfinite(next.w) && std::isfinite(next.s) && next.w >= 0.0 &&
                      std::abs(next.s - y.s) <= options.max_ds_per_step &&
                      log_change(y.w, next.w) <= kMaxLogWPerStep;
      if (ok) break;
      if (level == kMaxHalvings)
        throw Error(ErrorKind::StepSizeTooLarge,
                    "averaged solver could not satisfy step control at t = " + std::to_string(y.t));
      ++level;
      ++run.rejected_steps;
    }
    units_done += step_units;
    next.t = static_cast<double>(units_done) * unit;
    const bool easy = std::abs(next.s - y.s) < 0.25 * options.max_ds_per_step &&
                      log_change(y.w, next.w) < 0.25 * kMaxLogWPerStep;
    y = next;
    ++run.steps;
    if (easy && level > 0) --level;
    sampler.offer(run.series, y.t, y.s, y.w, params.g * y.w, units_done >= total_units);
  }
  run.final_state = y;
  return run;
}

FixedPoint stationary_point(const AveragedParams& params, std::optional<double> alpha_c) {
  validate(params);
  if (!(params.g > 1.0)) throw Error(ErrorKind::InvalidParameter, "stationary_point needs g > 1 (gain regime)");
  const double g = params.g;
  const double threshold = 1.0 / g;

  std::vector<Candidate> roots;
  if (params.alpha == 0.0) {
    // Either w = 0 (then s = ζ) or s = 1/g with w fixed by the s-equation.
    roots.push_back({0.0, params.zeta});
    const double w = params.gamma1 * (params.zeta - threshold) / g;
    if (w > 0.0) roots.push_back({w, threshold});
  } else {
    // Eliminating w = α s²/(1 − g s) (needs s < 1/g for w >= 0) leaves one
    // equation in s.
    const double alpha = params.alpha;
    auto residual = [&](double s) {
      return g * alpha * s * s / (1.0 - g * s) + alpha * s + params.gamma1 * (s - params.zeta);
    };
    // Offsets below 1/g, log-spaced so the pole at s = 1/g is resolved.
    const double span = threshold + 1.0;
    std::vector<double> grid;
    grid.reserve(kScanPoints + 1);
    const double lo_exp = std::log10(1e-14 * span);
    const double hi_exp = std::log10(span);
    for (std::size_t k = 0; k <= kScanPoints; ++k) {
      const double e = hi_exp + (lo_exp - hi_exp) * static_cast<double>(k) / static_cast<double>(kScanPoints);
      grid.push_back(threshold - std::pow(10.0, e));
    }
    grid.front() = -1.0;
    double prev_s = grid.front();
    double prev_f = residual(prev_s);
    for (std::size_t k = 1; k < grid.size(); ++k) {
      const double cur_s = grid[k];
      const double cur_f = residual(cur_s);
      if (cur_f == 0.0) {
        roots.push_back({alpha * cur_s * cur_s / (1.0 - g * cur_s), cur_s});
      } else if ((prev_f < 0.0) != (cur_f < 0.0) && prev_f != 0.0) {
        boost::uintmax_t iters = 200;
        const auto bracket = boost::math::tools::toms748_solve(
            residual, prev_s, cur_s, prev_f, cur_f, boost::math::tools::eps_tolerance<double>(52), iters);
        const double s = 0.5 * (bracket.first + bracket.second);
        roots.push_back({alpha * s * s / (1.0 - g * s), s});
      }
      prev_s = cur_s;
      prev_f = cur_f;
    }
  }

  std::erase_if(roots, [](const Candidate& c) { return c.w < 0.0 || c.s <= -1.0 || c.s >= 1.0; });
  if (roots.empty())
    throw Error(ErrorKind::NoFixedPointInGainRegime, "no fixed point with w >= 0 in s in (-1, 1)");

  auto is_stable = [&](const Candidate& c) {
    const auto ev = averaged_jacobian_eigenvalues(params, c.w, c.s);
    return ev[0].real() <= 0.0 && ev[1].real() <= 0.0;
  };
  // Prefer stable roots, then the one closest to the coherent plateau 1/g.
  const auto best = std::min_element(roots.begin(), roots.end(), [&](const Candidate& a, const Candidate& b) {
    const bool sa = is_stable(a);
    const bool sb = is_stable(b);
    if (sa != sb) return sa;
    return std::abs(a.s - threshold) < std::abs(b.s - threshold);
  });

  FixedPoint fp;
  fp.w = best->w;
  fp.s = best->s;
  fp.eta = 0.5 * (1.0 + fp.s);
  fp.eigenvalues = averaged_jacobian_eigenvalues(params, fp.w, fp.s);
  fp.stable = is_stable(*best);
  fp.n_roots = roots.size();
  fp.regime_mismatch = (alpha_c && params.alpha > *alpha_c) || std::abs(fp.s - threshold) > 0.2 * threshold;
  return fp;
}

}  // namespace gaplight
