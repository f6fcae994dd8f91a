#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace gaplight {

enum class FieldMode { zero, constant_resonant, oscillator_bath };

std::string_view to_string(FieldMode mode) noexcept;
FieldMode field_mode_from_string(std::string_view name);

// Oscillator bath: n_modes equally spaced frequencies over
// [center − width/2, center + width/2], each with amplitude amplitude/sqrt(n).
struct BathSpec {
  std::size_t n_modes = 64;
  double center = 100.0;
  double width = 1.0;
  double amplitude = 0.1;

  bool operator==(const BathSpec&) const = default;
};

struct BathMode {
  double frequency;
  double amplitude;
  double phase;
};

// Scalar drive d*·D(t) seen by every atom, in units of γ2, in the lab frame.
class FieldModel {
 public:
  static FieldModel zero();
  static FieldModel constant_resonant(std::complex<double> f0, double frequency);
  static FieldModel oscillator_bath(const BathSpec& spec, std::uint64_t seed);

  FieldMode mode() const noexcept { return mode_; }
  std::complex<double> amplitude() const noexcept { return f0_; }
  double frequency() const noexcept { return frequency_; }
  const std::vector<BathMode>& bath() const noexcept { return bath_; }
  std::uint64_t seed() const noexcept { return seed_; }

  std::complex<double> sample(double t) const;

  // Field multiplied by a global constant.
  FieldModel scaled(double factor) const;
  // Same bath spectrum, phases redrawn from another seed.
  FieldModel reseeded(std::uint64_t seed) const;

 private:
  FieldMode mode_ = FieldMode::zero;
  std::complex<double> f0_{0.0, 0.0};
  double frequency_ = 0.0;
  BathSpec spec_{};
  double scale_ = 1.0;
  std::vector<BathMode> bath_;
  std::uint64_t seed_ = 0;
};

std::complex<double> sample_field(const FieldModel& model, double t);

struct AlphaOptions {
  double t_max = 200.0;
  std::size_t n_samples = 4096;
  // Bath realizations (phase seeds) averaged over; ignored for deterministic modes.
  std::size_t n_realizations = 16;
  double richardson_tol = 1e-4;
  std::size_t max_samples = std::size_t{1} << 22;
};

struct AlphaEstimate {
  double alpha = 0.0;
  double standard_error = 0.0;  // over realizations; 0 for deterministic fields
  std::size_t n_samples = 0;    // grid size that met the Richardson check
  bool converged = true;
  bool short_window = false;    // Γ·t_max < 20, time average not settled
};

// α = ⟨⟨| e^{−Γt} ∫₀ᵗ e^{(iΩ+Γ)τ} d*·D(τ) dτ |²⟩⟩, the time average taken over
// [t_max/2, t_max]. Throws NonpositiveGamma for Γ <= 0.
AlphaEstimate alpha_effective(const FieldModel& model, double omega, double gamma,
                              const AlphaOptions& options = {});

// Single realization on a fixed uniform grid of n_samples points; the
// building block of alpha_effective.
double alpha_single(const FieldModel& model, double omega, double gamma, double t_max,
                    std::size_t n_samples);

}  // namespace gaplight
