#pragma once

#include <complex>
#include <cstddef>
#include <deque>
#include <string_view>
#include <vector>

#include "gaplight/ensemble.hpp"
#include "gaplight/medium_field.hpp"
#include "gaplight/time_series.hpp"

namespace gaplight {

enum class Retardation {
  none,      // optical phase dropped: kernel −iγ_s/(k0 r)
  phase,     // u_j(t − τ_ij) → u_j(t) e^{i k0 r_ij}
  full_dde,  // envelopes taken at the retarded time from a history buffer
};

std::string_view to_string(Retardation mode) noexcept;
Retardation retardation_from_string(std::string_view name);

// Per-atom expectations; u is the envelope of ⟨σ⁻⟩ with e^{−iω0 t} removed.
struct BlochState {
  double t = 0.0;
  std::vector<std::complex<double>> u;
  std::vector<double> s;
};

struct DirectOptions {
  Retardation retardation = Retardation::phase;
  double dt = 1e-3;
  double t_end = 10.0;
  // Keeps the σ_j⁺ terms (oscillating at 2ω0). full_dde only.
  bool counter_rotating = false;
  SamplePolicy sampling{};
  // StepSizeTooLarge once max_i (4|u_i|² + s_i²) exceeds 1 + this.
  double bloch_violation_limit = 1e-3;
};

// Fixed-step classical RK4 for
//   du_i/dt = −u_i + s_i f̃(t) + s_i Σ_j K_ij u_j(t − τ_ij)
//   ds_i/dt = −γ1(s_i − ζ) − 4 Re[u_i* (f̃(t) + Σ_j K_ij u_j(t − τ_ij))]
// with K from coupling_kernel, f̃ = d*·D e^{iω0 t} and τ_ij = k0 r_ij/ω0.
class DirectSolver {
 public:
  DirectSolver(const AtomEnsemble& ensemble, FieldModel field, DirectOptions options);

  void step();

  const BlochState& state() const noexcept { return state_; }
  std::size_t steps() const noexcept { return steps_; }
  double max_bloch_norm() const noexcept { return max_bloch_; }

  // Collective emission rate: minus the atom-average of the coupling part of
  // ds_i/dt at the current state.
  double intensity() const;
  double mean_s() const;
  double mean_w() const;       // mean of |u_i|²
  double coherent_w() const;   // |mean u_i|²

 private:
  struct Derivative {
    std::vector<std::complex<double>> du;
    std::vector<double> ds;
  };
  struct Tap {
    std::ptrdiff_t node;  // relative to the newest history entry (<= 0)
    double weights[4];
  };

  // Σ_j K_ij u_j for the given stage; stage selects the history taps.
  void coupling(double t, const std::vector<std::complex<double>>& u, int stage,
                std::vector<std::complex<double>>& out) const;
  void derivative(double t, const BlochState& y, int stage, Derivative& d) const;
  std::complex<double> history(std::size_t atom, std::ptrdiff_t index) const;
  void check_bloch();

  std::size_t n_;
  AtomParams params_;
  FieldModel field_;
  DirectOptions options_;
  std::vector<std::complex<double>> kernel_;
  BlochState state_;
  std::vector<std::complex<double>> initial_u_;

  // full_dde: taps per pair for each of the three RK stage times.
  std::vector<Tap> taps_[3];
  std::deque<std::vector<std::complex<double>>> history_;
  std::ptrdiff_t newest_index_ = 0;
  std::size_t keep_ = 0;

  std::size_t steps_ = 0;
  double max_bloch_ = 0.0;

  mutable std::vector<std::complex<double>> scratch_;
  Derivative k_[4];
  BlochState stage_state_;
};

struct DirectRun {
  TimeSeries series;
  BlochState final_state;
  double max_bloch_norm = 0.0;
  std::size_t steps = 0;
};

// Throws StepSizeTooLarge and HistoryUnderflow (τ_ij < dt in full_dde).
DirectRun integrate_direct(const AtomEnsemble& ensemble, const FieldModel& field,
                           const DirectOptions& options);

}  // namespace gaplight
