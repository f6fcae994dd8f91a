#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>

#include "gaplight/errors.hpp"
#include "gaplight/medium_field.hpp"

using namespace gaplight;
using cd = std::complex<double>;

namespace {

BathSpec bath64() {
  BathSpec b;
  b.n_modes = 64;
  b.center = 100.0;
  b.width = 1.0;
  b.amplitude = 0.1;
  return b;
}

// Closed-form y(t) per mode, time-averaged |y|² on [T/2, T] by midpoint sums.
double closed_form_alpha(const FieldModel& m, double omega, double gamma, double t_max) {
  const int n = 20000;
  const double h = 0.5 * t_max / n;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = 0.5 * t_max + (i + 0.5) * h;
    cd y = 0.0;
    for (const auto& k : m.bath()) {
      const double d = omega - k.frequency;
      y += k.amplitude * std::polar(1.0, k.phase) * (std::polar(1.0, d * t) - std::exp(-gamma * t)) / cd(gamma, d);
    }
    acc += std::norm(y);
  }
  return acc / n;
}

}  // namespace

TEST_CASE("field samples") {
  CHECK(sample_field(FieldModel::zero(), 3.7) == cd(0.0, 0.0));
  const cd f0(0.3, -0.2);
  const auto c = FieldModel::constant_resonant(f0, 100.0);
  for (double t : {0.0, 0.01, 2.5, 40.0}) CHECK(std::abs(c.sample(t) - f0 * std::polar(1.0, -100.0 * t)) < 1e-15);
  const auto b1 = FieldModel::oscillator_bath(bath64(), 5);
  const auto b2 = FieldModel::oscillator_bath(bath64(), 5);
  const auto b3 = FieldModel::oscillator_bath(bath64(), 6);
  CHECK(b1.sample(1.25) == b2.sample(1.25));
  CHECK(b1.sample(1.25) != b3.sample(1.25));
  CHECK(b1.bath().size() == 64);
  CHECK(b1.bath().front().frequency == doctest::Approx(99.5));
  CHECK(b1.bath().back().frequency == doctest::Approx(100.5));
  double power = 0.0;
  for (const auto& k : b1.bath()) power += k.amplitude * k.amplitude;
  CHECK(power == doctest::Approx(0.01).epsilon(1e-14));
}

TEST_CASE("alpha for zero and resonant fields") {
  CHECK(alpha_effective(FieldModel::zero(), 100.0, 1.0).alpha == 0.0);

  const cd f0(0.02, 0.01);
  for (double gamma : {0.5, 1.0, 2.0}) {
    AlphaOptions o;
    o.t_max = 200.0;
    const auto a = alpha_effective(FieldModel::constant_resonant(f0, 100.0), 100.0, gamma, o);
    // |y|² = |f0|²(1 − e^{−Γt})²/Γ², averaged exactly over [T/2, T]
    const double T = o.t_max, lo = T / 2;
    auto prim = [&](double t) {
      return t + 2 * std::exp(-gamma * t) / gamma - std::exp(-2 * gamma * t) / (2 * gamma);
    };
    const double exact = std::norm(f0) / (gamma * gamma) * (prim(T) - prim(lo)) / (T - lo);
    CHECK(std::abs(a.alpha - exact) < 1e-6 * exact);
    CHECK(std::abs(a.alpha - std::norm(f0) / (gamma * gamma)) < 1e-6 * exact);
    CHECK(a.converged);
  }
}

TEST_CASE("alpha for a detuned drive") {
  const cd f0(0.05, 0.0);
  AlphaOptions o;
  o.t_max = 200.0;
  const double delta = 0.7, gamma = 0.8;
  const auto a = alpha_effective(FieldModel::constant_resonant(f0, 100.0 - delta), 100.0, gamma, o);
  CHECK(std::abs(a.alpha - std::norm(f0) / (gamma * gamma + delta * delta)) < 1e-6 * a.alpha);
}

TEST_CASE("alpha scales with the square of the field") {
  const auto m = FieldModel::oscillator_bath(bath64(), 3);
  AlphaOptions o;
  o.n_realizations = 4;
  const double a1 = alpha_effective(m, 100.0, 1.0, o).alpha;
  for (double c : {0.5, 3.0}) {
    const double ac = alpha_effective(m.scaled(c), 100.0, 1.0, o).alpha;
    CHECK(std::abs(ac - c * c * a1) < 1e-10 * c * c * a1);
  }
  const double single = alpha_single(m, 100.0, 1.0, 200.0, 4096);
  CHECK(single >= 0.0);
  CHECK(std::abs(alpha_single(m.scaled(2.0), 100.0, 1.0, 200.0, 4096) - 4 * single) < 1e-10 * 4 * single);
}

TEST_CASE("bath alpha agrees with a Monte-Carlo oracle over 100 seeds") {
  const double omega = 100.0, gamma = 1.0, t_max = 200.0;
  std::vector<double> samples;
  for (std::uint64_t seed = 1000; seed < 1100; ++seed)
    samples.push_back(closed_form_alpha(FieldModel::oscillator_bath(bath64(), seed), omega, gamma, t_max));
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / samples.size();
  double var = 0.0;
  for (double s : samples) var += (s - mean) * (s - mean);
  const double se_mc = std::sqrt(var / (samples.size() - 1) / samples.size());

  AlphaOptions o;
  o.t_max = t_max;
  o.n_realizations = 16;
  const auto est = alpha_effective(FieldModel::oscillator_bath(bath64(), 7), omega, gamma, o);
  const double se = std::hypot(se_mc, est.standard_error);
  INFO("library " << est.alpha << " +- " << est.standard_error << ", oracle " << mean << " +- " << se_mc);
  CHECK(std::abs(est.alpha - mean) < 3 * se);
  CHECK(est.standard_error > 0.0);

  // Phase average of |y|² drops the cross terms.
  double expected = 0.0;
  for (const auto& k : FieldModel::oscillator_bath(bath64(), 7).bath())
    expected += k.amplitude * k.amplitude / (gamma * gamma + (omega - k.frequency) * (omega - k.frequency));
  CHECK(std::abs(mean - expected) < 3 * se_mc);
}

TEST_CASE("doubling a long window barely moves the bath alpha") {
  // The window has to resolve the mode spacing (2π/Δω ≈ 400 here).
  const auto m = FieldModel::oscillator_bath(bath64(), 11);
  AlphaOptions o;
  o.n_realizations = 8;
  o.t_max = 800.0;
  o.n_samples = 16384;
  const auto a = alpha_effective(m, 100.0, 1.0, o);
  o.t_max = 1600.0;
  o.n_samples = 32768;
  const auto b = alpha_effective(m, 100.0, 1.0, o);
  CHECK(std::abs(a.alpha - b.alpha) < 0.01 * b.alpha);
  CHECK(std::abs(a.alpha - b.alpha) < 3 * std::hypot(a.standard_error, b.standard_error) + 1e-4 * b.alpha);
}

TEST_CASE("alpha needs attenuation") {
  const auto m = FieldModel::constant_resonant({0.1, 0.0}, 100.0);
  for (double g : {0.0, -0.5}) {
    try {
      alpha_effective(m, 100.0, g);
      FAIL("expected NonpositiveGamma");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NonpositiveGamma);
    }
  }
  AlphaOptions o;
  o.t_max = 5.0;
  CHECK(alpha_effective(m, 100.0, 1.0, o).short_window);
}
