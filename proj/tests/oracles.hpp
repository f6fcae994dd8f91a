#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using P = std::array<double, 3>;

inline double dist(const P& a, const P& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Plain double loops, no symmetry tricks.
inline std::vector<double> g_sums(const std::vector<P>& pos, double gamma_s) {
  std::vector<double> g(pos.size(), 0.0);
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (std::size_t j = 0; j < pos.size(); ++j)
      if (i != j) {
        const double x = dist(pos[i], pos[j]);
        g[i] += gamma_s * std::sin(x) / x;
      }
  return g;
}

inline std::vector<double> lamb_sums(const std::vector<P>& pos, double gamma_s) {
  std::vector<double> d(pos.size(), 0.0);
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (std::size_t j = 0; j < pos.size(); ++j)
      if (i != j) {
        const double x = dist(pos[i], pos[j]);
        d[i] += gamma_s * std::cos(x) / x;
      }
  return d;
}

// Points in a box, rejecting pairs closer than r_min.
inline std::vector<P> random_cloud(std::mt19937_64& rng, std::size_t n, double box, double r_min = 0.05) {
  std::uniform_real_distribution<double> u(-box, box);
  std::vector<P> pos;
  while (pos.size() < n) {
    P p{u(rng), u(rng), u(rng)};
    bool ok = true;
    for (const auto& q : pos) ok = ok && dist(p, q) >= r_min;
    if (ok) pos.push_back(p);
  }
  return pos;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Rotation about an arbitrary axis, Rodrigues form.
inline P rotate(const P& v, P axis, double angle) {
  const double n = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  for (auto& a : axis) a /= n;
  const double c = std::cos(angle), s = std::sin(angle);
  const double dot = axis[0] * v[0] + axis[1] * v[1] + axis[2] * v[2];
  const P cross{axis[1] * v[2] - axis[2] * v[1], axis[2] * v[0] - axis[0] * v[2], axis[0] * v[1] - axis[1] * v[0]};
  P out{};
  for (int k = 0; k < 3; ++k) out[k] = v[k] * c + cross[k] * s + axis[k] * dot * (1 - c);
  return out;
}

}  // namespace oracle
