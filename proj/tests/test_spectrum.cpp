#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "gaplight/errors.hpp"
#include "gaplight/spectrum.hpp"

using namespace gaplight;

namespace {

// Dense eigensolve of the photon/oscillator pair in ω².
std::pair<double, double> eig_pair(double ck, double wm, double wp) {
  Eigen::Matrix2d m;
  m << ck * ck, ck * wp, ck * wp, wm * wm + wp * wp;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m);
  const auto ev = es.eigenvalues();
  return {std::sqrt(std::max(ev(0), 0.0)), std::sqrt(ev(1))};
}

MediumModel flat(double wt, double wp) {
  MediumModel m;
  m.omega_T = wt;
  m.coupling_strength = wp;
  return m;
}

MediumModel cosine(double b) {
  MediumModel m;
  m.branch = BranchModel::cosine;
  m.band_width = b;
  m.lattice_constant = 0.7;
  m.coupling_strength = 15.0;
  m.light_speed = 2.0;
  return m;
}

}  // namespace

TEST_CASE("matter branches") {
  const std::vector<double> k{0.0, 0.3, 1.0, 7.5, 120.0};
  for (double w : matter_branch(flat(100, 20), k)) CHECK(w == 100.0);
  const auto m = cosine(3.0);
  CHECK(matter_branch(m, k)[0] == 100.0);
  std::vector<double> neg;
  for (double x : k) neg.push_back(-x);
  CHECK(matter_branch(m, k) == matter_branch(m, neg));
  CHECK_THROWS_AS(matter_branch(m, std::vector<double>{}), Error);
}

TEST_CASE("cosine band matches a 64-site ring eigensolve") {
  for (double b : {0.5, 3.0, -2.0}) {
    const auto m = cosine(b);
    const std::size_t n = 64;
    const auto d = ring_dynamical_matrix(m, n);
    Eigen::MatrixXd mat(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) mat(i, j) = d[i * n + j];
    CHECK((mat - mat.transpose()).norm() == 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mat);
    std::vector<double> km;
    for (std::size_t q = 0; q < n; ++q) km.push_back(2 * M_PI * q / (n * m.lattice_constant));
    auto w = matter_branch(m, km);
    std::sort(w.begin(), w.end());
    for (std::size_t q = 0; q < n; ++q) CHECK(std::abs(std::sqrt(es.eigenvalues()(q)) - w[q]) < 1e-10);
  }
}

TEST_CASE("branches agree with a dense 2x2 eigensolve per k") {
  for (const auto& m : {flat(100, 20), cosine(4.0), cosine(-3.0)}) {
    const auto k = uniform_k_grid(400, 801);
    const auto bands = polariton_branches(m, k);
    const auto wm = matter_branch(m, k);
    for (std::size_t i = 0; i < k.size(); ++i) {
      const auto [lo, hi] = eig_pair(m.light_speed * k[i], wm[i], m.coupling_strength);
      CHECK(std::abs(bands.lower[i] - lo) < 1e-10 * hi);
      CHECK(std::abs(bands.upper[i] - hi) < 1e-10 * hi);
      const double ck = m.light_speed * k[i];
      CHECK(bands.lower[i] <= std::min(ck, wm[i]) + 1e-12 * hi);
      CHECK(bands.upper[i] >= std::max(ck, wm[i]) - 1e-12 * hi);
    }
  }
}

TEST_CASE("flat model gap edges") {
  const auto m = flat(100, 20);
  const auto bands = polariton_branches(m, uniform_k_grid(400, 801));
  CHECK(std::abs(bands.gap_low - 100.0) < 1e-10);
  CHECK(std::abs(bands.gap_high - std::sqrt(10400.0)) < 1e-10);

  // The eigensolve gives the same edges: ω+ is smallest at k = 0 and ω− creeps
  // up to ω_T at very large k.
  double sup_lower = 0.0, inf_upper = 1e300;
  for (double k : {0.0, 1.0, 50.0, 400.0, 1e4, 1e6, 1e8}) {
    const auto [lo, hi] = eig_pair(k, 100.0, 20.0);
    sup_lower = std::max(sup_lower, lo);
    inf_upper = std::min(inf_upper, hi);
  }
  CHECK(std::abs(sup_lower - bands.gap_low) < 1e-10);
  CHECK(std::abs(inf_upper - bands.gap_high) < 1e-10);
}

TEST_CASE("decoupled limit has no gap") {
  const auto k = uniform_k_grid(300, 61);
  const auto bands = polariton_branches(flat(100, 0), k);
  for (std::size_t i = 0; i < k.size(); ++i) {
    CHECK(bands.lower[i] == std::min(k[i], 100.0));
    CHECK(bands.upper[i] == std::max(k[i], 100.0));
  }
  CHECK(bands.gap_width() == 0.0);
}

TEST_CASE("gap closes monotonically as the coupling vanishes") {
  const auto k = uniform_k_grid(400, 201);
  double prev = -1.0;
  for (int i = 0; i < 20; ++i) {
    const double wp = 20.0 * i / 19.0;
    const double w = polariton_branches(flat(100, wp), k).gap_width();
    CHECK(w > prev);
    prev = w;
    if (i == 0) CHECK(w == 0.0);
  }
  prev = -1.0;
  for (int i = 0; i < 20; ++i) {
    auto m = cosine(0.05);  // 2b below the gap opened by ω_p >= 5
    m.coupling_strength = 5.0 + i;
    const double wi = polariton_branches(m, k).gap_width();
    CHECK(wi > prev);
    prev = wi;
  }
}

TEST_CASE("classification") {
  const auto bands = polariton_branches(flat(100, 20), uniform_k_grid(400, 801));
  const double mid = 0.5 * (bands.gap_low + bands.gap_high);
  CHECK(classify_frequency(bands, mid) == FrequencyClass::in_gap);
  CHECK(classify_frequency(bands, bands.gap_low * (1 - 1e-3)) == FrequencyClass::in_lower_continuum);
  CHECK(classify_frequency(bands, bands.gap_high) == FrequencyClass::at_edge);
  CHECK(classify_frequency(bands, bands.gap_low * (1 + 1e-7)) == FrequencyClass::at_edge);
  CHECK(classify_frequency(bands, 150.0) == FrequencyClass::in_upper_continuum);
}

TEST_CASE("bad models are rejected") {
  auto m = flat(-1, 0);
  CHECK_THROWS_AS(validate(m), Error);
  CHECK_THROWS_AS(uniform_k_grid(1.0, 1), Error);
  CHECK_THROWS_AS(ring_dynamical_matrix(cosine(1.0), 4), Error);
  CHECK(branch_model_from_string("cosine") == BranchModel::cosine);
}
