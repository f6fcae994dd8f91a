#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace gaplight {

// Dimensionless position k0·r.
using Vec3 = std::array<double, 3>;

enum class GeometryKind { chain, cubic, random_sphere, explicit_positions };

std::string_view to_string(GeometryKind kind) noexcept;
GeometryKind geometry_kind_from_string(std::string_view name);

// Transition and initial-state data shared by all (identical) atoms.
// Frequencies and rates are in units of γ2; gamma_s = k0³d0²/γ2.
struct AtomParams {
  double omega0 = 100.0;
  double gamma1 = 1e-3;
  double gamma_s = 1.0;
  std::complex<double> u0{0.0, 0.0};
  double s0 = 1.0;
  double zeta = 1.0;

  bool operator==(const AtomParams&) const = default;
};

struct GeometryParams {
  std::size_t n_atoms = 1;
  double spacing = 1.0;  // chain and cubic, in units of 1/k0
  double radius = 1.0;   // random_sphere
  std::vector<Vec3> positions;  // explicit_positions
  double r_min = 1e-3;

  bool operator==(const GeometryParams&) const = default;
};

// Symmetric N×N matrix of k0·r_ij, stored row-major.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

class AtomEnsemble {
 public:
  // Throws InvalidParameter or MinimumSeparationViolated.
  AtomEnsemble(std::vector<Vec3> positions, AtomParams params, double r_min = 1e-3);

  std::size_t n_atoms() const noexcept { return positions_.size(); }
  std::span<const Vec3> positions() const noexcept { return positions_; }
  const AtomParams& params() const noexcept { return params_; }
  double r_min() const noexcept { return r_min_; }

  // Same positions, different atomic parameters (revalidated).
  AtomEnsemble with_params(const AtomParams& params) const;

 private:
  std::vector<Vec3> positions_;
  AtomParams params_;
  double r_min_;
};

// `seed` only matters for random_sphere.
AtomEnsemble build_geometry(GeometryKind kind, const GeometryParams& geometry,
                            const AtomParams& params, std::uint64_t seed);

DistanceMatrix pair_distances(const AtomEnsemble& ensemble);

double distance(const Vec3& a, const Vec3& b) noexcept;

}  // namespace gaplight
