#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "gaplight/ensemble.hpp"
#include "gaplight/errors.hpp"
#include "oracles.hpp"

using namespace gaplight;

namespace {

GeometryParams chain(std::size_t n, double spacing) {
  GeometryParams g;
  g.n_atoms = n;
  g.spacing = spacing;
  return g;
}

}  // namespace

TEST_CASE("single atom chain has no pairs") {
  const auto e = build_geometry(GeometryKind::chain, chain(1, 1.0), {}, 0);
  CHECK(e.n_atoms() == 1);
  const auto d = pair_distances(e);
  CHECK(d.size() == 1);
  CHECK(d(0, 0) == 0.0);
}

TEST_CASE("chain of three at pi/2") {
  const double h = std::numbers::pi / 2;
  const auto e = build_geometry(GeometryKind::chain, chain(3, h), {}, 0);
  const auto p = e.positions();
  CHECK(p[0][0] == 0.0);
  CHECK(p[1][0] == doctest::Approx(h).epsilon(1e-15));
  CHECK(p[2][0] == doctest::Approx(std::numbers::pi).epsilon(1e-15));
  const auto d = pair_distances(e);
  CHECK(d(0, 1) == doctest::Approx(h).epsilon(1e-15));
  CHECK(d(1, 2) == doctest::Approx(h).epsilon(1e-15));
  CHECK(d(0, 2) == doctest::Approx(std::numbers::pi).epsilon(1e-15));
}

TEST_CASE("chain of two, spacing 2") {
  const auto d = pair_distances(build_geometry(GeometryKind::chain, chain(2, 2.0), {}, 0));
  CHECK(d(0, 1) == 2.0);
  CHECK(d(1, 0) == 2.0);
}

TEST_CASE("random sphere is reproducible and seed dependent") {
  GeometryParams g;
  g.n_atoms = 8;
  g.radius = 0.05;
  const auto a = build_geometry(GeometryKind::random_sphere, g, {}, 42);
  const auto b = build_geometry(GeometryKind::random_sphere, g, {}, 42);
  const auto c = build_geometry(GeometryKind::random_sphere, g, {}, 43);
  bool same = true, differs = false;
  for (std::size_t i = 0; i < 8; ++i) {
    same = same && a.positions()[i] == b.positions()[i];
    differs = differs || a.positions()[i] != c.positions()[i];
    CHECK(std::hypot(a.positions()[i][0], a.positions()[i][1], a.positions()[i][2]) <= 0.05);
  }
  CHECK(same);
  CHECK(differs);
}

TEST_CASE("cube lattice fills x fastest") {
  GeometryParams g = chain(8, 0.5);
  const auto e = build_geometry(GeometryKind::cubic, g, {}, 0);
  CHECK(e.positions()[1] == Vec3{0.5, 0, 0});
  CHECK(e.positions()[2] == Vec3{0, 0.5, 0});
  CHECK(e.positions()[7] == Vec3{0.5, 0.5, 0.5});
}

TEST_CASE("distance matrix matches recomputed norms") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto pos = oracle::random_cloud(rng, 8, 3.0);
    const AtomEnsemble e(pos, {});
    const auto d = pair_distances(e);
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) {
        CHECK(d(i, j) == d(j, i));
        if (i == j) CHECK(d(i, j) == 0.0);
        else CHECK(oracle::rel(d(i, j), oracle::dist(pos[i], pos[j])) < 1e-14);
      }
  }
}

TEST_CASE("distances are invariant under rigid motions") {
  std::mt19937_64 rng(11);
  const auto pos = oracle::random_cloud(rng, 7, 2.0);
  std::vector<Vec3> moved;
  for (const auto& p : pos) {
    auto q = oracle::rotate(p, {0.3, -1.2, 0.7}, 1.234);
    moved.push_back({q[0] + 10.5, q[1] - 3.25, q[2] + 0.125});
  }
  const auto a = pair_distances(AtomEnsemble(pos, {}));
  const auto b = pair_distances(AtomEnsemble(moved, {}));
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j)
      if (i != j) CHECK(oracle::rel(b(i, j), a(i, j)) < 1e-12);
}

TEST_CASE("relabeling permutes the distance matrix") {
  std::mt19937_64 rng(3);
  const auto pos = oracle::random_cloud(rng, 6, 2.0);
  const std::vector<std::size_t> perm{4, 2, 0, 5, 1, 3};
  std::vector<Vec3> shuffled;
  for (auto k : perm) shuffled.push_back(pos[k]);
  const auto a = pair_distances(AtomEnsemble(pos, {}));
  const auto b = pair_distances(AtomEnsemble(shuffled, {}));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) CHECK(b(i, j) == a(perm[i], perm[j]));
}

TEST_CASE("validation") {
  auto kind_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    FAIL("no throw");
    return ErrorKind::ParseError;
  };
  CHECK(kind_of([] { AtomEnsemble({{0, 0, 0}, {1e-4, 0, 0}}, {}); }) == ErrorKind::MinimumSeparationViolated);
  CHECK(kind_of([] { AtomEnsemble({}, {}); }) == ErrorKind::InvalidParameter);
  AtomParams p;
  p.s0 = 1.5;
  CHECK(kind_of([&] { AtomEnsemble({{0, 0, 0}}, p); }) == ErrorKind::InvalidParameter);
  p = {};
  p.s0 = 0.8;
  p.u0 = {0.4, 0.0};  // 4*0.16 + 0.64 > 1
  CHECK(kind_of([&] { AtomEnsemble({{0, 0, 0}}, p); }) == ErrorKind::InvalidParameter);
  p = {};
  p.gamma1 = 2.5;
  CHECK(kind_of([&] { AtomEnsemble({{0, 0, 0}}, p); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([] { build_geometry(GeometryKind::chain, chain(0, 1.0), {}, 0); }) == ErrorKind::InvalidParameter);
  CHECK(geometry_kind_from_string(to_string(GeometryKind::explicit_positions)) == GeometryKind::explicit_positions);
}
