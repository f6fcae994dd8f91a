#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numbers>

#include "gaplight/couplings.hpp"
#include "gaplight/errors.hpp"
#include "oracles.hpp"

using namespace gaplight;

namespace {

AtomEnsemble pair(double x, double gamma_s = 1.0) {
  AtomParams p;
  p.gamma_s = gamma_s;
  return AtomEnsemble({{0, 0, 0}, {x, 0, 0}}, p);
}

}  // namespace

TEST_CASE("g examples") {
  CHECK(coupling_g(AtomEnsemble({{0, 0, 0}}, {})).mean == 0.0);
  const auto g = coupling_g(pair(std::numbers::pi / 2));
  CHECK(g.mean == doctest::Approx(2 / std::numbers::pi).epsilon(1e-15));
  CHECK(g.per_atom[0] == g.per_atom[1]);
  CHECK(g.relative_spread == 0.0);
}

TEST_CASE("concentrated cluster of five gives g close to 4") {
  // five mutually equidistant points don't fit in 3D; all distances here are < 2e-4
  std::vector<Vec3> pos{{0, 0, 0}, {1e-4, 0, 0}, {0, 1e-4, 0}, {0, 0, 1e-4}, {1e-4, 1e-4, 1e-4}};
  const auto g = coupling_g(AtomEnsemble(pos, {}, 1e-5));
  for (double gi : g.per_atom) CHECK(std::abs(gi - 4.0) < 1e-7);
}

TEST_CASE("Lamb shift examples") {
  CHECK(std::abs(lamb_shift(pair(std::numbers::pi / 2)).mean) < 1e-16);
  CHECK(lamb_shift(pair(std::numbers::pi)).mean == doctest::Approx(-1 / std::numbers::pi).epsilon(1e-15));
}

TEST_CASE("site sums match brute-force double loops") {
  std::mt19937_64 rng(2024);
  for (std::size_t n : {2u, 5u, 8u, 17u, 64u}) {
    const auto pos = oracle::random_cloud(rng, n, 2.0 + 0.1 * n);
    AtomParams p;
    p.gamma_s = 0.7;
    const AtomEnsemble e(pos, p);
    const auto g = coupling_g(e);
    const auto d = lamb_shift(e);
    const auto go = oracle::g_sums(pos, 0.7);
    const auto dlo = oracle::lamb_sums(pos, 0.7);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(oracle::rel(g.per_atom[i], go[i]) < 1e-12);
      CHECK(oracle::rel(d.per_atom[i], dlo[i]) < 1e-12);
      CHECK(std::abs(g.per_atom[i]) <= 0.7 * (n - 1));
    }
  }
}

TEST_CASE("kernel row sums carry g and minus the Lamb shift") {
  std::mt19937_64 rng(9);
  const auto pos = oracle::random_cloud(rng, 8, 2.0);
  const AtomEnsemble e(pos, {});
  const auto k = coupling_kernel(e);
  const auto go = oracle::g_sums(pos, 1.0);
  const auto dlo = oracle::lamb_sums(pos, 1.0);
  for (std::size_t i = 0; i < 8; ++i) {
    std::complex<double> row = 0.0;
    for (std::size_t j = 0; j < 8; ++j) row += k[i * 8 + j];
    CHECK(k[i * 8 + i] == std::complex<double>(0.0, 0.0));
    CHECK(oracle::rel(row.real(), go[i]) < 1e-12);
    CHECK(oracle::rel(-row.imag(), dlo[i]) < 1e-12);
  }
  const auto flat = coupling_kernel(e, false);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      if (i != j) CHECK(oracle::rel(flat[i * 8 + j].imag(), -1.0 / oracle::dist(pos[i], pos[j])) < 1e-14);
}

TEST_CASE("rigid motions and relabeling") {
  std::mt19937_64 rng(77);
  const auto pos = oracle::random_cloud(rng, 6, 1.5);
  std::vector<Vec3> moved, shuffled;
  const std::vector<std::size_t> perm{3, 5, 1, 0, 4, 2};
  for (const auto& p : pos) {
    auto q = oracle::rotate(p, {1, 2, 3}, 0.77);
    moved.push_back({q[0] - 4, q[1] + 1, q[2] + 2});
  }
  for (auto k : perm) shuffled.push_back(pos[k]);
  const auto g0 = coupling_g(AtomEnsemble(pos, {}));
  const auto g1 = coupling_g(AtomEnsemble(moved, {}));
  const auto g2 = coupling_g(AtomEnsemble(shuffled, {}));
  const auto d0 = lamb_shift(AtomEnsemble(pos, {}));
  const auto d1 = lamb_shift(AtomEnsemble(moved, {}));
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(oracle::rel(g1.per_atom[i], g0.per_atom[i]) < 1e-12);
    CHECK(oracle::rel(d1.per_atom[i], d0.per_atom[i]) < 1e-12);
    CHECK(oracle::rel(g2.per_atom[i], g0.per_atom[perm[i]]) < 1e-14);
  }
}

TEST_CASE("effective frequency and attenuation") {
  auto r = effective_freq_atten(100.0, 3.0, 0.5, 0.0);
  CHECK(r.omega == 100.0);
  CHECK(r.gamma == 1.0);
  CHECK(effective_freq_atten(100.0, 10.0, 0.0, 0.1).gamma == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(effective_freq_atten(100.0, 2.0, 0.0, 1.0).gamma == -1.0);
  CHECK(effective_freq_atten(100.0, 2.0, 0.5, -0.5).omega == 99.75);
}

TEST_CASE("critical alpha") {
  CHECK(std::abs(critical_alpha(10, 0.0, 1.0) - 0.2025) < 1e-15);
  CHECK(std::abs(critical_alpha(1, 0.0, -1.0) - 1.0) < 1e-15);
  CHECK(std::abs(critical_alpha(1e9, 0.0, 1.0) - 0.25) < 1e-8);
  CHECK(critical_alpha(4.0, 0.0, 0.25) == 0.0);
  CHECK_THROWS_AS(critical_alpha(10, 0.0, 0.0), Error);
  try {
    critical_alpha(10, 0.0, 0.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateInitialState);
  }
}

TEST_CASE("summary omits alpha_c for a lone atom") {
  CHECK_FALSE(summarize_couplings(AtomEnsemble({{0, 0, 0}}, {})).alpha_c.has_value());
  const auto s = summarize_couplings(pair(1.0));
  REQUIRE(s.alpha_c.has_value());
  CHECK(*s.alpha_c == doctest::Approx(critical_alpha(std::sin(1.0), 0.0, 1.0)));
}
