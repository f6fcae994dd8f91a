#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace gaplight {

enum class BranchModel {
  flat,    // ω(k) = ω_T
  cosine,  // ω(k) = ω_T + b (1 − cos k a)
};

std::string_view to_string(BranchModel model) noexcept;
BranchModel branch_model_from_string(std::string_view name);

// Scalar (single-polarization) model of the medium's optical branch and its
// coupling to light. All frequencies in units of γ2; the photon branch is c·k.
struct MediumModel {
  double omega_T = 100.0;
  BranchModel branch = BranchModel::flat;
  double band_width = 0.0;        // b of the cosine band
  double lattice_constant = 1.0;  // a of the cosine band
  double coupling_strength = 0.0; // ω_p, plasma-frequency analogue
  double light_speed = 1.0;

  bool operator==(const MediumModel&) const = default;
};

void validate(const MediumModel& model);

// ω_ks on the grid. Even in k; positive for valid models.
std::vector<double> matter_branch(const MediumModel& model, std::span<const double> k);

// Circulant dynamical matrix (already divided by the mass) of an n-site ring
// whose eigenvalues are ω(k_m)² at k_m = 2π m/(n a). Row-major n×n. The cosine
// band needs on-site, nearest and next-nearest couplings.
std::vector<double> ring_dynamical_matrix(const MediumModel& model, std::size_t n_sites);

struct PolaritonBands {
  std::vector<double> k;
  std::vector<double> lower;  // ω−(k)
  std::vector<double> upper;  // ω+(k)
  double gap_low = 0.0;
  double gap_high = 0.0;

  double gap_width() const noexcept { return gap_high > gap_low ? gap_high - gap_low : 0.0; }
};

// Per k, diagonalizes the photon/optical-oscillator pair. In ω² the pair is
//   [ c²k²        c k ω_p      ]
//   [ c k ω_p     ω_m² + ω_p²  ]
// whose roots satisfy c²k² = ω² (1 + ω_p²/(ω_m² − ω²)). For the flat branch
// the gap is (ω_T, sqrt(ω_T² + ω_p²)).
PolaritonBands polariton_branches(const MediumModel& model, std::span<const double> k);

enum class FrequencyClass { in_gap, in_lower_continuum, in_upper_continuum, at_edge };

std::string_view to_string(FrequencyClass c) noexcept;

FrequencyClass classify_frequency(const PolaritonBands& bands, double omega0,
                                  double edge_tol = 1e-6);

std::vector<double> uniform_k_grid(double k_max, std::size_t n_points);

}  // namespace gaplight
