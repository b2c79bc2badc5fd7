#pragma once

#include <functional>
#include <vector>

#include "bohmlab/test_function.hpp"
#include "bohmlab/wavefunction.hpp"

namespace bohmlab {

/// p-grid of the discrete Wigner transform: 2n bins of width dp = pi*eps/L,
/// covering [-pi*eps*n/L, pi*eps*n/L).  Every exact spectral line
/// p = eps*(k+l)/2 of a band-limited state lands on this lattice.
struct WignerPGrid {
  int np;        // = 2n
  double p_min;  // = -np/2 * dp
  double dp;     // = pi*eps/L
  double p(int r) const { return p_min + r * dp; }
};
WignerPGrid wigner_p_grid(const Grid& grid, double epsilon);

/// Full Wigner field w(x_j, p_r) (row-major x, then p).  Memory is n * 2n
/// doubles; intended for n <= 1024.  Use WignerAnalysis for large sweeps.
struct WignerField {
  Grid xgrid;
  double epsilon;
  WignerPGrid pgrid;
  std::vector<double> w;  // [x][p]
  double imag_residue;    // max |Im| discarded (reported, should be ~1e-16)

  double at(int ix, int ip) const { return w[static_cast<std::size_t>(ix) * pgrid.np + ip]; }
};

WignerField wigner_transform(const WaveFunction& psi);

/// p-moments of a stored field: m0 (should equal rho) and m1 (should equal J).
struct WignerMoments {
  Field m0, m1;
};
WignerMoments wigner_moments(const WignerField& w);

/// Streaming pass over Wigner rows: accumulates mass, p-moments m0/m1/m2 per
/// x node, min value, dictionary pairings, without storing the full field.
struct WignerAnalysis {
  Grid xgrid;
  double epsilon;
  WignerPGrid pgrid;
  Field m0, m1, m2;  // p-integrals per x node (m0 should equal rho)
  double mass = 0.0;
  double min_w = 0.0;
  double imag_residue = 0.0;
  double spectral_edge_mass = 0.0;  // |c_k|^2 share in the outer 10% of the band
  std::vector<double> pairings;  // one per dictionary entry

  /// rho*T field: m2 - m1^2/m0 where m0 >= eta*max(m0), else 0 (masked).
  Field rho_T(double eta = 1e-6) const;
  /// T field: rho_T / m0 on the same mask.
  Field temperature(double eta = 1e-6) const;
};

WignerAnalysis wigner_analyze(const WaveFunction& psi, const Dictionary& dict = {});

/// Husimi density: |<g_{x,p}, psi>|^2 / (2*pi*eps) on the same (x, p) lattice,
/// with Gaussian window std width*sqrt(eps/2) in x.  Equals the Wigner field
/// smoothed at scale sqrt(eps) and is non-negative by construction.
struct HusimiField {
  Grid xgrid;
  double epsilon;
  WignerPGrid pgrid;
  std::vector<double> h;  // [x][p]
  double min_value;
  double at(int ix, int ip) const { return h[static_cast<std::size_t>(ix) * pgrid.np + ip]; }
};
HusimiField husimi(const WaveFunction& psi, double width = 1.0);

}  // namespace bohmlab
