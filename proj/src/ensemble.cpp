#include "gaplight/ensemble.hpp"

#include <cmath>
#include <random>
#include <string>

#include "gaplight/errors.hpp"
#include "gaplight/rng.hpp"

namespace gaplight {
namespace {

constexpr double kBlochSlack = 1e-12;
constexpr int kMaxPlacementAttempts = 100000;

void validate_params(const AtomParams& p) {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidParameter, what); };
  if (!std::isfinite(p.omega0) || p.omega0 <= 0.0) fail("omega0 must be positive and finite");
  if (!std::isfinite(p.gamma1) || p.gamma1 < 0.0 || p.gamma1 > 2.0)
    fail("gamma1 must lie in [0, 2] (units of gamma2)");
  if (!std::isfinite(p.gamma_s) || p.gamma_s < 0.0) fail("gamma_s must be nonnegative and finite");
  if (!std::isfinite(p.u0.real()) || !std::isfinite(p.u0.imag())) fail("u0 must be finite");
  if (!std::isfinite(p.s0) || p.s0 < -1.0 || p.s0 > 1.0) fail("s0 out of [-1,1]");
  if (!std::isfinite(p.zeta) || p.zeta < -1.0 || p.zeta > 1.0) fail("zeta out of [-1,1]");
  if (4.0 * std::norm(p.u0) + p.s0 * p.s0 > 1.0 + kBlochSlack)
    fail("initial state outside the Bloch ball: 4|u0|^2 + s0^2 > 1");
}

}  // namespace

std::string_view to_string(GeometryKind kind) noexcept {
  switch (kind) {
    case GeometryKind::chain: return "chain";
    case GeometryKind::cubic: return "cubic";
    case GeometryKind::random_sphere: return "random_sphere";
    case GeometryKind::explicit_positions: return "explicit";
  }
  return "chain";
}

GeometryKind geometry_kind_from_string(std::string_view name) {
  if (name == "chain") return GeometryKind::chain;
  if (name == "cubic") return GeometryKind::cubic;
  if (name == "random_sphere") return GeometryKind::random_sphere;
  if (name == "explicit") return GeometryKind::explicit_positions;
  throw Error(ErrorKind::InvalidParameter, "unknown geometry '" + std::string(name) + "'");
}

double distance(const Vec3& a, const Vec3& b) noexcept {
  return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
}

AtomEnsemble::AtomEnsemble(std::vector<Vec3> positions, AtomParams params, double r_min)
    : positions_(std::move(positions)), params_(params), r_min_(r_min) {
  if (positions_.empty()) throw Error(ErrorKind::InvalidParameter, "ensemble needs at least one atom");
  if (!std::isfinite(r_min_) || r_min_ <= 0.0)
    throw Error(ErrorKind::InvalidParameter, "r_min must be positive");
  validate_params(params_);
  for (const auto& p : positions_) {
    for (double c : p) {
      if (!std::isfinite(c)) throw Error(ErrorKind::InvalidParameter, "positions must be finite");
    }
  }
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    for (std::size_t j = i + 1; j < positions_.size(); ++j) {
      const double r = distance(positions_[i], positions_[j]);
      if (r < r_min_) {
        throw Error(ErrorKind::MinimumSeparationViolated,
                    "atoms " + std::to_string(i) + " and " + std::to_string(j) +
                        " closer than r_min: k0*r = " + std::to_string(r));
      }
    }
  }
}

AtomEnsemble AtomEnsemble::with_params(const AtomParams& params) const {
  return AtomEnsemble(positions_, params, r_min_);
}

AtomEnsemble build_geometry(GeometryKind kind, const GeometryParams& geometry,
                            const AtomParams& params, std::uint64_t seed) {
  const std::size_t n = geometry.n_atoms;
  if (kind != GeometryKind::explicit_positions && n < 1)
    throw Error(ErrorKind::InvalidParameter, "n_atoms must be >= 1");

  std::vector<Vec3> positions;
  switch (kind) {
    case GeometryKind::chain: {
      if (!(geometry.spacing > 0.0)) throw Error(ErrorKind::InvalidParameter, "spacing must be positive");
      positions.reserve(n);
      for (std::size_t i = 0; i < n; ++i) positions.push_back({static_cast<double>(i) * geometry.spacing, 0.0, 0.0});
      break;
    }
    case GeometryKind::cubic: {
      if (!(geometry.spacing > 0.0)) throw Error(ErrorKind::InvalidParameter, "spacing must be positive");
      std::size_t side = 1;
      while (side * side * side < n) ++side;
      positions.reserve(n);
      for (std::size_t idx = 0; idx < n; ++idx) {
        const std::size_t ix = idx % side;
        const std::size_t iy = (idx / side) % side;
        const std::size_t iz = idx / (side * side);
        positions.push_back({static_cast<double>(ix) * geometry.spacing,
                             static_cast<double>(iy) * geometry.spacing,
                             static_cast<double>(iz) * geometry.spacing});
      }
      break;
    }
    case GeometryKind::random_sphere: {
      if (!(geometry.radius > 0.0)) throw Error(ErrorKind::InvalidParameter, "radius must be positive");
      std::mt19937_64 engine(derive_seed(seed, "geometry"));
      positions.reserve(n);
      int attempts = 0;
      while (positions.size() < n) {
        if (++attempts > kMaxPlacementAttempts) {
          throw Error(ErrorKind::MinimumSeparationViolated,
                      "could not place atoms in the sphere while keeping r_min apart");
        }
        const Vec3 p{geometry.radius * (2.0 * uniform01(engine) - 1.0),
                     geometry.radius * (2.0 * uniform01(engine) - 1.0),
                     geometry.radius * (2.0 * uniform01(engine) - 1.0)};
        if (std::hypot(p[0], p[1], p[2]) > geometry.radius) continue;
        bool too_close = false;
        for (const auto& q : positions) {
          if (distance(p, q) < geometry.r_min) {
            too_close = true;
            break;
          }
        }
        if (!too_close) positions.push_back(p);
      }
      break;
    }
    case GeometryKind::explicit_positions:
      if (geometry.positions.empty())
        throw Error(ErrorKind::InvalidParameter, "explicit geometry needs at least one position");
      positions = geometry.positions;
      break;
  }
  return AtomEnsemble(std::move(positions), params, geometry.r_min);
}

DistanceMatrix pair_distances(const AtomEnsemble& ensemble) {
  const auto pos = ensemble.positions();
  DistanceMatrix d(pos.size());
  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (std::size_t j = i + 1; j < pos.size(); ++j) {
      const double r = distance(pos[i], pos[j]);
      d(i, j) = r;
      d(j, i) = r;
    }
  }
  return d;
}

}  // namespace gaplight
