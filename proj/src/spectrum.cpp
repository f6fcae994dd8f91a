#include "gaplight/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gaplight/errors.hpp"

namespace gaplight {
namespace {

double branch_at(const MediumModel& m, double k) {
  switch (m.branch) {
    case BranchModel::flat:
      return m.omega_T;
    case BranchModel::cosine:
      return m.omega_T + m.band_width * (1.0 - std::cos(k * m.lattice_constant));
  }
  return m.omega_T;
}

// Supremum of the matter branch over all k.
double branch_max(const MediumModel& m) {
  if (m.branch == BranchModel::cosine && m.band_width > 0.0) return m.omega_T + 2.0 * m.band_width;
  return m.omega_T;
}

struct Roots {
  double lower;
  double upper;
};

Roots pair_roots(double photon, double matter, double omega_p) {
  const double p2 = photon * photon;
  const double m2 = matter * matter;
  const double trace = p2 + m2 + omega_p * omega_p;
  const double det = p2 * m2;
  const double disc = std::max(0.0, trace * trace - 4.0 * det);
  const double hi = 0.5 * (trace + std::sqrt(disc));
  // Product form avoids cancellation in the lower root.
  const double lo = hi > 0.0 ? det / hi : 0.0;
  return {std::sqrt(lo), std::sqrt(hi)};
}

}  // namespace

std::string_view to_string(BranchModel model) noexcept {
  return model == BranchModel::flat ? "flat" : "cosine";
}

BranchModel branch_model_from_string(std::string_view name) {
  if (name == "flat") return BranchModel::flat;
  if (name == "cosine") return BranchModel::cosine;
  throw Error(ErrorKind::InvalidParameter, "unknown branch model '" + std::string(name) + "'");
}

std::string_view to_string(FrequencyClass c) noexcept {
  switch (c) {
    case FrequencyClass::in_gap: return "in_gap";
    case FrequencyClass::in_lower_continuum: return "in_lower_continuum";
    case FrequencyClass::in_upper_continuum: return "in_upper_continuum";
    case FrequencyClass::at_edge: return "at_edge";
  }
  return "in_gap";
}

void validate(const MediumModel& m) {
  auto fail = [](const char* what) { throw Error(ErrorKind::InvalidParameter, what); };
  if (!std::isfinite(m.omega_T) || m.omega_T <= 0.0) fail("omega_T must be positive");
  if (!std::isfinite(m.coupling_strength) || m.coupling_strength < 0.0) fail("omega_p must be nonnegative");
  if (!std::isfinite(m.light_speed) || m.light_speed <= 0.0) fail("light_speed must be positive");
  if (m.branch == BranchModel::cosine) {
    if (!std::isfinite(m.lattice_constant) || m.lattice_constant <= 0.0) fail("lattice_constant must be positive");
    if (!std::isfinite(m.band_width) || m.omega_T + 2.0 * std::min(m.band_width, 0.0) <= 0.0)
      fail("cosine band must stay positive: omega_T + 2 b > 0");
  }
}

std::vector<double> matter_branch(const MediumModel& model, std::span<const double> k) {
  validate(model);
  if (k.empty()) throw Error(ErrorKind::InvalidParameter, "empty k grid");
  std::vector<double> out;
  out.reserve(k.size());
  for (double kk : k) out.push_back(branch_at(model, std::abs(kk)));
  return out;
}

std::vector<double> ring_dynamical_matrix(const MediumModel& model, std::size_t n_sites) {
  validate(model);
  if (n_sites < 5) throw Error(ErrorKind::InvalidParameter, "ring needs at least 5 sites");
  // ω(θ)² = (A + B(1 − cos θ))² expanded in cos θ and cos 2θ.
  const double a = model.omega_T;
  const double b = model.branch == BranchModel::cosine ? model.band_width : 0.0;
  const double onsite = (a + b) * (a + b) + 0.5 * b * b;
  const double first = -b * (a + b);
  const double second = 0.25 * b * b;

  std::vector<double> d(n_sites * n_sites, 0.0);
  for (std::size_t i = 0; i < n_sites; ++i) {
    d[i * n_sites + i] = onsite;
    d[i * n_sites + (i + 1) % n_sites] += first;
    d[i * n_sites + (i + n_sites - 1) % n_sites] += first;
    d[i * n_sites + (i + 2) % n_sites] += second;
    d[i * n_sites + (i + n_sites - 2) % n_sites] += second;
  }
  return d;
}

PolaritonBands polariton_branches(const MediumModel& model, std::span<const double> k) {
  const std::vector<double> matter = matter_branch(model, k);
  PolaritonBands bands;
  bands.k.assign(k.begin(), k.end());
  bands.lower.reserve(k.size());
  bands.upper.reserve(k.size());

  const double wp = model.coupling_strength;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const Roots r = pair_roots(model.light_speed * std::abs(k[i]), matter[i], wp);
    bands.lower.push_back(r.lower);
    bands.upper.push_back(r.upper);
  }

  // ω− approaches the matter branch from below as c k → ∞, so its supremum is
  // the branch maximum. ω+ is bounded below by its k = 0 value unless the band
  // dips, in which case the sampled minimum is used as well.
  bands.gap_low = branch_max(model);
  double high = pair_roots(0.0, branch_at(model, 0.0), wp).upper;
  for (double w : bands.upper) high = std::min(high, w);
  bands.gap_high = high;
  return bands;
}

FrequencyClass classify_frequency(const PolaritonBands& bands, double omega0, double edge_tol) {
  auto near = [&](double edge) { return std::abs(omega0 - edge) <= edge_tol * std::abs(edge); };
  if (near(bands.gap_low) || near(bands.gap_high)) return FrequencyClass::at_edge;
  if (omega0 < bands.gap_low) return FrequencyClass::in_lower_continuum;
  if (omega0 > bands.gap_high) return FrequencyClass::in_upper_continuum;
  return FrequencyClass::in_gap;
}

std::vector<double> uniform_k_grid(double k_max, std::size_t n_points) {
  if (n_points < 2 || !(k_max > 0.0)) throw Error(ErrorKind::InvalidParameter, "k grid needs k_max > 0 and >= 2 points");
  std::vector<double> k(n_points);
  for (std::size_t i = 0; i < n_points; ++i)
    k[i] = k_max * static_cast<double>(i) / static_cast<double>(n_points - 1);
  return k;
}

}  // namespace gaplight
