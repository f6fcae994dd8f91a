#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "gaplight/ensemble.hpp"

namespace gaplight {

// A per-site lattice sum and its mean over sites.
struct SiteSums {
  double mean = 0.0;
  std::vector<double> per_atom;
  // Population standard deviation over |mean|; zero for symmetric clusters.
  double relative_spread = 0.0;
};

// g_i = γ_s Σ_{j≠i} sin(k0 r_ij)/(k0 r_ij).
SiteSums coupling_g(const AtomEnsemble& ensemble);

// Δ_L,i = γ_s Σ_{j≠i} cos(k0 r_ij)/(k0 r_ij), in units of γ2.
SiteSums lamb_shift(const AtomEnsemble& ensemble);

struct EffectiveRates {
  double omega = 0.0;  // Ω = ω0 + Δ_L s
  double gamma = 0.0;  // Γ = 1 − g s; negative means collective gain
};

EffectiveRates effective_freq_atten(double omega0, double g, double delta_L, double s);

// α_c = [(1 − g s0)² + 4 g² |u0|²] / (4 g² s0²).
// Throws DegenerateInitialState for s0 = 0 and InvalidParameter for g <= 0.
double critical_alpha(double g, std::complex<double> u0, double s0);

struct CouplingSummary {
  SiteSums g;
  SiteSums delta_L;
  std::optional<double> alpha_c;  // absent when s0 = 0 or g <= 0
};

CouplingSummary summarize_couplings(const AtomEnsemble& ensemble);

// Complex retarded kernel of the direct solver, N×N row-major with zero
// diagonal: K_ij = −i γ_s e^{i k0 r_ij}/(k0 r_ij). Row sums have real part g_i
// and imaginary part −Δ_L,i. With `keep_phase == false` the optical phase is
// dropped, K_ij = −i γ_s/(k0 r_ij).
std::vector<std::complex<double>> coupling_kernel(const AtomEnsemble& ensemble,
                                                  bool keep_phase = true);

}  // namespace gaplight
