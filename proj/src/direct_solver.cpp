#include "gaplight/direct_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gaplight/couplings.hpp"
#include "gaplight/errors.hpp"

namespace gaplight {
namespace {

constexpr double kStageOffsets[3] = {0.0, 0.5, 1.0};

// Lagrange weights for nodes base..base+3 evaluated at q (all in units of dt).
void lagrange4(double q, std::ptrdiff_t base, double (&w)[4]) {
  for (int a = 0; a < 4; ++a) {
    double num = 1.0;
    double den = 1.0;
    const double xa = static_cast<double>(base + a);
    for (int b = 0; b < 4; ++b) {
      if (b == a) continue;
      const double xb = static_cast<double>(base + b);
      num *= q - xb;
      den *= xa - xb;
    }
    w[a] = num / den;
  }
}

}  // namespace

std::string_view to_string(Retardation mode) noexcept {
  switch (mode) {
    case Retardation::none: return "none";
    case Retardation::phase: return "phase";
    case Retardation::full_dde: return "full_dde";
  }
  return "phase";
}

Retardation retardation_from_string(std::string_view name) {
  if (name == "none") return Retardation::none;
  if (name == "phase") return Retardation::phase;
  if (name == "full_dde") return Retardation::full_dde;
  throw Error(ErrorKind::InvalidParameter, "unknown retardation mode '" + std::string(name) + "'");
}

DirectSolver::DirectSolver(const AtomEnsemble& ensemble, FieldModel field, DirectOptions options)
    : n_(ensemble.n_atoms()),
      params_(ensemble.params()),
      field_(std::move(field)),
      options_(options),
      kernel_(coupling_kernel(ensemble, options.retardation != Retardation::none)) {
  if (!(options_.dt > 0.0) || !std::isfinite(options_.dt))
    throw Error(ErrorKind::InvalidParameter, "dt must be positive");
  if (options_.counter_rotating && options_.retardation != Retardation::full_dde)
    throw Error(ErrorKind::InvalidParameter, "counter-rotating terms require retardation = full_dde");

  state_.u.assign(n_, params_.u0);
  state_.s.assign(n_, params_.s0);
  initial_u_ = state_.u;
  scratch_.resize(n_);

  if (options_.retardation == Retardation::full_dde && n_ > 1) {
    const DistanceMatrix r = pair_distances(ensemble);
    std::ptrdiff_t deepest = 0;
    for (int stage = 0; stage < 3; ++stage) taps_[stage].resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (i == j) continue;
        const double delay = r(i, j) / params_.omega0;
        if (delay < options_.dt) {
          throw Error(ErrorKind::HistoryUnderflow,
                      "retardation delay " + std::to_string(delay) + " is shorter than dt = " +
                          std::to_string(options_.dt) + "; reduce dt");
        }
        for (int stage = 0; stage < 3; ++stage) {
          const double q = kStageOffsets[stage] - delay / options_.dt;
          std::ptrdiff_t base = static_cast<std::ptrdiff_t>(std::floor(q)) - 1;
          if (base + 3 > 0) base = -3;
          Tap& tap = taps_[stage][i * n_ + j];
          tap.node = base;
          lagrange4(q, base, tap.weights);
          deepest = std::min(deepest, base);
        }
      }
    }
    keep_ = static_cast<std::size_t>(-deepest) + 1;
    history_.push_back(state_.u);
  }

  for (std::size_t i = 0; i < n_; ++i)
    max_bloch_ = std::max(max_bloch_, 4.0 * std::norm(state_.u[i]) + state_.s[i] * state_.s[i]);
}

std::complex<double> DirectSolver::history(std::size_t atom, std::ptrdiff_t rel) const {
  const std::ptrdiff_t absolute = newest_index_ + rel;
  if (absolute <= 0) return initial_u_[atom];
  const std::ptrdiff_t oldest = newest_index_ - static_cast<std::ptrdiff_t>(history_.size()) + 1;
  return history_[static_cast<std::size_t>(absolute - oldest)][atom];
}

void DirectSolver::coupling(double /*t*/, const std::vector<std::complex<double>>& u, int stage,
                            std::vector<std::complex<double>>& out) const {
  out.assign(n_, {0.0, 0.0});
  if (options_.retardation != Retardation::full_dde) {
    for (std::size_t i = 0; i < n_; ++i) {
      std::complex<double> acc{0.0, 0.0};
      const std::complex<double>* row = kernel_.data() + i * n_;
      for (std::size_t j = 0; j < n_; ++j) acc += row[j] * u[j];
      out[i] = acc;
    }
    return;
  }
  for (std::size_t i = 0; i < n_; ++i) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < n_; ++j) {
      if (i == j) continue;
      const Tap& tap = taps_[stage][i * n_ + j];
      std::complex<double> retarded{0.0, 0.0};
      for (int a = 0; a < 4; ++a) retarded += tap.weights[a] * history(j, tap.node + a);
      acc += kernel_[i * n_ + j] * retarded;
    }
    out[i] = acc;
  }
}

void DirectSolver::derivative(double t, const BlochState& y, int stage, Derivative& d) const {
  d.du.resize(n_);
  d.ds.resize(n_);
  coupling(t, y.u, stage, scratch_);
  const std::complex<double> drive =
      field_.mode() == FieldMode::zero ? std::complex<double>{} : field_.sample(t) * std::polar(1.0, params_.omega0 * t);
  const std::complex<double> fast =
      options_.counter_rotating ? std::polar(1.0, 2.0 * params_.omega0 * t) : std::complex<double>{};
  const std::complex<double> i_unit{0.0, 1.0};

  for (std::size_t i = 0; i < n_; ++i) {
    const std::complex<double> local = drive + scratch_[i];
    d.du[i] = -y.u[i] + y.s[i] * local;
    d.ds[i] = -params_.gamma1 * (y.s[i] - params_.zeta) - 4.0 * std::real(std::conj(y.u[i]) * local);
    if (options_.counter_rotating) {
      // B_i = Σ_j γ_s e^{ix}/x u_j(t − τ) = i c_i.
      const std::complex<double> b = i_unit * scratch_[i];
      d.du[i] += i_unit * y.s[i] * std::conj(b) * fast;
      d.ds[i] -= 4.0 * std::imag(y.u[i] * b * std::conj(fast));
    }
  }
}

void DirectSolver::check_bloch() {
  for (std::size_t i = 0; i < n_; ++i) {
    const double norm = 4.0 * std::norm(state_.u[i]) + state_.s[i] * state_.s[i];
    max_bloch_ = std::max(max_bloch_, norm);
    if (!std::isfinite(norm) || norm > 1.0 + options_.bloch_violation_limit) {
      throw Error(ErrorKind::StepSizeTooLarge,
                  "Bloch bound violated at t = " + std::to_string(state_.t) + " (4|u|^2 + s^2 = " +
                      std::to_string(norm) + "); reduce dt");
    }
  }
}

void DirectSolver::step() {
  const double h = options_.dt;
  const double t = state_.t;
  const BlochState& y0 = state_;
  auto& [k1, k2, k3, k4] = k_;
  BlochState& tmp = stage_state_;
  tmp.u.resize(n_);
  tmp.s.resize(n_);

  auto advance = [&](const Derivative& k, double factor) {
    for (std::size_t i = 0; i < n_; ++i) {
      tmp.u[i] = y0.u[i] + factor * k.du[i];
      tmp.s[i] = y0.s[i] + factor * k.ds[i];
    }
  };

  derivative(t, y0, 0, k1);
  advance(k1, 0.5 * h);
  derivative(t + 0.5 * h, tmp, 1, k2);
  advance(k2, 0.5 * h);
  derivative(t + 0.5 * h, tmp, 1, k3);
  advance(k3, h);
  derivative(t + h, tmp, 2, k4);

  for (std::size_t i = 0; i < n_; ++i) {
    state_.u[i] += (h / 6.0) * (k1.du[i] + 2.0 * k2.du[i] + 2.0 * k3.du[i] + k4.du[i]);
    state_.s[i] += (h / 6.0) * (k1.ds[i] + 2.0 * k2.ds[i] + 2.0 * k3.ds[i] + k4.ds[i]);
  }
  ++steps_;
  state_.t = static_cast<double>(steps_) * h;

  if (!taps_[0].empty()) {
    history_.push_back(state_.u);
    ++newest_index_;
    while (history_.size() > keep_ + 1) history_.pop_front();
  }
  check_bloch();
}

double DirectSolver::intensity() const {
  coupling(state_.t, state_.u, 0, scratch_);
  const std::complex<double> fast = std::polar(1.0, 2.0 * params_.omega0 * state_.t);
  double sum = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double rate = 4.0 * std::real(std::conj(state_.u[i]) * scratch_[i]);
    if (options_.counter_rotating) {
      const std::complex<double> b = std::complex<double>{0.0, 1.0} * scratch_[i];
      rate += 4.0 * std::imag(state_.u[i] * b * std::conj(fast));
    }
    sum += rate;
  }
  return sum / static_cast<double>(n_);
}

double DirectSolver::mean_s() const {
  double sum = 0.0;
  for (double v : state_.s) sum += v;
  return sum / static_cast<double>(n_);
}

double DirectSolver::mean_w() const {
  double sum = 0.0;
  for (const auto& v : state_.u) sum += std::norm(v);
  return sum / static_cast<double>(n_);
}

double DirectSolver::coherent_w() const {
  std::complex<double> sum{0.0, 0.0};
  for (const auto& v : state_.u) sum += v;
  return std::norm(sum / static_cast<double>(n_));
}

DirectRun integrate_direct(const AtomEnsemble& ensemble, const FieldModel& field,
                           const DirectOptions& options) {
  if (!(options.t_end > 0.0)) throw Error(ErrorKind::InvalidParameter, "t_end must be positive");
  DirectSolver solver(ensemble, field, options);
  Sampler sampler(options.sampling);
  DirectRun run;

  auto record = [&](bool force) {
    const double wc = solver.coherent_w();
    sampler.offer(run.series, solver.state().t, solver.mean_s(), solver.mean_w(), solver.intensity(), force, &wc);
  };

  record(true);
  const auto n_steps = static_cast<std::size_t>(std::ceil(options.t_end / options.dt - 1e-9));
  for (std::size_t k = 0; k < n_steps; ++k) {
    solver.step();
    record(k + 1 == n_steps);
  }
  run.final_state = solver.state();
  run.max_bloch_norm = solver.max_bloch_norm();
  run.steps = solver.steps();
  return run;
}

}  // namespace gaplight
