#pragma once

#include <functional>
#include <span>

#include "bohmlab/phase_measure.hpp"
#include "bohmlab/ratefit.hpp"
#include "bohmlab/wavefunction.hpp"

namespace bohmlab {

/// sqrt(eps)-concentrated family with a cone phase (d=1):
///   psi(x) = eps^{-1/4} rho_prof^{1/2}(|x|/sqrt(eps)) e^{i S(x)/eps},
///   S(x)   = s0 (sqrt(x^2 + delta0^2) - delta0),
/// so S'(x) -> +-s0 away from the tip; the tip is mollified on the scale
/// delta0 (default 2 dx) to keep S twice differentiable on the grid.
struct ConeSpec {
  std::function<double(double)> rho_prof;  // Schwartz radial profile
  double s0 = 1.0;                         // directional limits chi(+-1) = +-s0
  double delta0 = 0.0;                     // 0 -> 2 * dx at build time

  /// Normalized Gaussian profile exp(-r^2)/sqrt(pi) with unit line integral.
  static ConeSpec gaussian(double s0 = 1.0);
};

double cone_phase(const ConeSpec& spec, double x, double delta0);
double cone_phase_grad(const ConeSpec& spec, double x, double delta0);

WaveFunction build_cone_state(const ConeSpec& spec, const Grid& grid, double eps);

/// Limit pairing of the cone family: for both the Bohmian and Wigner
/// realizations, <mu^eps, phi> -> prof_mass * (phi(0, s0) + phi(0, -s0))/2.
struct ConePairing {
  double eps, beta, wigner;
};
struct ConeLimitReport {
  double limit = 0.0;
  std::vector<ConePairing> pairs;
  RateFit beta_fit, wigner_fit;
  double beta_gap_at_min_eps = 0.0;
  double wigner_gap_at_min_eps = 0.0;
  double mutual_gap_at_min_eps = 0.0;
};

ConeLimitReport cone_limit_pairing(const ConeSpec& spec, const PhaseSpaceTest& phi,
                                   std::span<const double> eps_list,
                                   const std::function<Grid(double)>& grid_for_eps,
                                   double node_eta = 1e-6);

}  // namespace bohmlab
