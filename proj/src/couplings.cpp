#include "gaplight/couplings.hpp"

#include <cmath>

#include "gaplight/errors.hpp"

namespace gaplight {
namespace {

template <class Kernel>
SiteSums site_sums(const AtomEnsemble& ensemble, Kernel kernel) {
  const DistanceMatrix r = pair_distances(ensemble);
  const std::size_t n = r.size();
  const double gamma_s = ensemble.params().gamma_s;

  SiteSums out;
  out.per_atom.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double x = r(i, j);
      const double term = gamma_s * kernel(x);
      out.per_atom[i] += term;
      out.per_atom[j] += term;
    }
  }

  double sum = 0.0;
  for (double v : out.per_atom) sum += v;
  out.mean = sum / static_cast<double>(n);

  double var = 0.0;
  for (double v : out.per_atom) var += (v - out.mean) * (v - out.mean);
  var /= static_cast<double>(n);
  out.relative_spread = out.mean != 0.0 ? std::sqrt(var) / std::abs(out.mean) : 0.0;
  return out;
}

}  // namespace

SiteSums coupling_g(const AtomEnsemble& ensemble) {
  return site_sums(ensemble, [](double x) { return std::sin(x) / x; });
}

SiteSums lamb_shift(const AtomEnsemble& ensemble) {
  return site_sums(ensemble, [](double x) { return std::cos(x) / x; });
}

EffectiveRates effective_freq_atten(double omega0, double g, double delta_L, double s) {
  return {omega0 + delta_L * s, 1.0 - g * s};
}

double critical_alpha(double g, std::complex<double> u0, double s0) {
  if (s0 == 0.0) throw Error(ErrorKind::DegenerateInitialState, "critical_alpha is singular for s0 = 0");
  if (!(g > 0.0)) throw Error(ErrorKind::InvalidParameter, "critical_alpha requires g > 0");
  const double detune = 1.0 - g * s0;
  return (detune * detune + 4.0 * g * g * std::norm(u0)) / (4.0 * g * g * s0 * s0);
}

CouplingSummary summarize_couplings(const AtomEnsemble& ensemble) {
  CouplingSummary out{coupling_g(ensemble), lamb_shift(ensemble), std::nullopt};
  const auto& p = ensemble.params();
  if (p.s0 != 0.0 && out.g.mean > 0.0) out.alpha_c = critical_alpha(out.g.mean, p.u0, p.s0);
  return out;
}

std::vector<std::complex<double>> coupling_kernel(const AtomEnsemble& ensemble, bool keep_phase) {
  const DistanceMatrix r = pair_distances(ensemble);
  const std::size_t n = r.size();
  const double gamma_s = ensemble.params().gamma_s;
  const std::complex<double> minus_i{0.0, -1.0};

  std::vector<std::complex<double>> k(n * n, {0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double x = r(i, j);
      const std::complex<double> phase = keep_phase ? std::polar(1.0, x) : std::complex<double>{1.0, 0.0};
      k[i * n + j] = minus_i * gamma_s * phase / x;
    }
  }
  return k;
}

}  // namespace gaplight
