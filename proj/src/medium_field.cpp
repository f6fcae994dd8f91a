#include "gaplight/medium_field.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "gaplight/errors.hpp"
#include "gaplight/rng.hpp"

namespace gaplight {
namespace {

std::vector<BathMode> draw_bath(const BathSpec& spec, double scale, std::uint64_t seed) {
  std::vector<BathMode> modes;
  modes.reserve(spec.n_modes);
  std::mt19937_64 engine(derive_seed(seed, "bath"));
  const double amp = scale * spec.amplitude / std::sqrt(static_cast<double>(spec.n_modes));
  for (std::size_t k = 0; k < spec.n_modes; ++k) {
    const double frac = spec.n_modes == 1 ? 0.5 : static_cast<double>(k) / static_cast<double>(spec.n_modes - 1);
    const double freq = spec.center + spec.width * (frac - 0.5);
    modes.push_back({freq, amp, 2.0 * std::numbers::pi * uniform01(engine)});
  }
  return modes;
}

}  // namespace

std::string_view to_string(FieldMode mode) noexcept {
  switch (mode) {
    case FieldMode::zero: return "zero";
    case FieldMode::constant_resonant: return "constant_resonant";
    case FieldMode::oscillator_bath: return "oscillator_bath";
  }
  return "zero";
}

FieldMode field_mode_from_string(std::string_view name) {
  if (name == "zero") return FieldMode::zero;
  if (name == "constant_resonant") return FieldMode::constant_resonant;
  if (name == "oscillator_bath") return FieldMode::oscillator_bath;
  throw Error(ErrorKind::InvalidParameter, "unknown field mode '" + std::string(name) + "'");
}

FieldModel FieldModel::zero() { return FieldModel{}; }

FieldModel FieldModel::constant_resonant(std::complex<double> f0, double frequency) {
  if (!std::isfinite(f0.real()) || !std::isfinite(f0.imag()) || !std::isfinite(frequency))
    throw Error(ErrorKind::InvalidParameter, "drive amplitude and frequency must be finite");
  FieldModel m;
  m.mode_ = FieldMode::constant_resonant;
  m.f0_ = f0;
  m.frequency_ = frequency;
  return m;
}

FieldModel FieldModel::oscillator_bath(const BathSpec& spec, std::uint64_t seed) {
  if (spec.n_modes < 1) throw Error(ErrorKind::InvalidParameter, "bath needs at least one mode");
  if (!std::isfinite(spec.center) || !std::isfinite(spec.width) || spec.width < 0.0 ||
      !std::isfinite(spec.amplitude))
    throw Error(ErrorKind::InvalidParameter, "bath center, width and amplitude must be finite, width >= 0");
  FieldModel m;
  m.mode_ = FieldMode::oscillator_bath;
  m.spec_ = spec;
  m.seed_ = seed;
  m.bath_ = draw_bath(spec, 1.0, seed);
  return m;
}

std::complex<double> FieldModel::sample(double t) const {
  switch (mode_) {
    case FieldMode::zero:
      return {0.0, 0.0};
    case FieldMode::constant_resonant:
      return f0_ * std::polar(1.0, -frequency_ * t);
    case FieldMode::oscillator_bath: {
      std::complex<double> sum{0.0, 0.0};
      for (const auto& b : bath_) sum += b.amplitude * std::polar(1.0, b.phase - b.frequency * t);
      return sum;
    }
  }
  return {0.0, 0.0};
}

FieldModel FieldModel::scaled(double factor) const {
  FieldModel m = *this;
  m.f0_ *= factor;
  m.scale_ *= factor;
  for (auto& b : m.bath_) b.amplitude *= factor;
  return m;
}

FieldModel FieldModel::reseeded(std::uint64_t seed) const {
  if (mode_ != FieldMode::oscillator_bath) return *this;
  FieldModel m = *this;
  m.seed_ = seed;
  m.bath_ = draw_bath(spec_, scale_, seed);
  return m;
}

std::complex<double> sample_field(const FieldModel& model, double t) { return model.sample(t); }

double alpha_single(const FieldModel& model, double omega, double gamma, double t_max,
                    std::size_t n_samples) {
  if (!(gamma > 0.0)) throw Error(ErrorKind::NonpositiveGamma, "alpha is defined only for Gamma > 0");
  if (n_samples < 3 || !(t_max > 0.0)) throw Error(ErrorKind::InvalidParameter, "need t_max > 0 and n_samples >= 3");

  // y(t) = e^{−Γt} ∫₀ᵗ e^{(iΩ+Γ)τ} f(τ) dτ, accumulated interval by interval
  // with the trapezoid rule; the e^{−Γh} factor keeps the recursion bounded.
  const double h = t_max / static_cast<double>(n_samples - 1);
  const double decay = std::exp(-gamma * h);
  const std::size_t window_start = (n_samples - 1) / 2;

  auto integrand = [&](double t) { return std::polar(1.0, omega * t) * model.sample(t); };

  std::complex<double> y{0.0, 0.0};
  std::complex<double> prev = integrand(0.0);
  double avg = 0.0;
  double prev_sq = 0.0;
  for (std::size_t n = 1; n < n_samples; ++n) {
    const double t = static_cast<double>(n) * h;
    const std::complex<double> cur = integrand(t);
    y = decay * y + 0.5 * h * (decay * prev + cur);
    prev = cur;
    const double sq = std::norm(y);
    if (n > window_start) avg += 0.5 * (prev_sq + sq);
    prev_sq = sq;
  }
  const double window = static_cast<double>(n_samples - 1 - window_start);
  return avg / window;
}

AlphaEstimate alpha_effective(const FieldModel& model, double omega, double gamma,
                              const AlphaOptions& options) {
  if (!(gamma > 0.0)) throw Error(ErrorKind::NonpositiveGamma, "alpha is defined only for Gamma > 0");
  if (options.n_samples < 100) throw Error(ErrorKind::InvalidParameter, "alpha needs n_samples >= 100");

  AlphaEstimate est;
  est.short_window = gamma * options.t_max < 20.0;
  if (model.mode() == FieldMode::zero) {
    est.n_samples = options.n_samples;
    return est;
  }

  const bool stochastic = model.mode() == FieldMode::oscillator_bath;
  const std::size_t realizations = stochastic ? std::max<std::size_t>(1, options.n_realizations) : 1;
  std::vector<FieldModel> fields;
  fields.reserve(realizations);
  for (std::size_t r = 0; r < realizations; ++r)
    fields.push_back(realizations == 1 ? model : model.reseeded(derive_seed(model.seed(), "alpha", r)));

  auto estimate = [&](std::size_t n, std::vector<double>& values) {
    values.clear();
    for (const auto& f : fields) values.push_back(alpha_single(f, omega, gamma, options.t_max, n));
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
  };

  // Both the recursion and the window average are second order in h, so two
  // levels are combined as (4 fine − coarse)/3, per realization.
  std::vector<double> values;
  std::vector<double> coarse_values;
  std::size_t n = options.n_samples;
  double coarse = estimate(n, coarse_values);
  double result = coarse;
  values = coarse_values;
  est.converged = false;
  while (2 * n - 1 <= options.max_samples) {
    const std::size_t fine_n = 2 * n - 1;  // halves the step, reuses the grid
    const double fine = estimate(fine_n, values);
    n = fine_n;
    const double change = std::abs(fine - coarse);
    for (std::size_t r = 0; r < values.size(); ++r) {
      const double f = values[r];
      values[r] = (4.0 * f - coarse_values[r]) / 3.0;
      coarse_values[r] = f;
    }
    result = (4.0 * fine - coarse) / 3.0;
    coarse = fine;
    if (change <= options.richardson_tol * std::abs(fine)) {
      est.converged = true;
      break;
    }
  }

  est.alpha = std::max(result, 0.0);
  est.n_samples = n;
  if (values.size() > 1) {
    double var = 0.0;
    for (double v : values) var += (v - result) * (v - result);
    var /= static_cast<double>(values.size() - 1);
    est.standard_error = std::sqrt(var / static_cast<double>(values.size()));
  }
  return est;
}

}  // namespace gaplight
