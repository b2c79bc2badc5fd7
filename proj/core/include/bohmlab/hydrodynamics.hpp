#pragma once

#include <cstdint>
#include <vector>

#include "bohmlab/potential.hpp"
#include "bohmlab/propagator.hpp"
#include "bohmlab/test_function.hpp"
#include "bohmlab/wavefunction.hpp"

namespace bohmlab {

/// Madelung variables of one wavefunction snapshot (d=1).
///
/// u and the Bohm potential are only defined rho-a.e.; nodes (rho below
/// node_eta * max rho) are masked explicitly and their mass is reported.
/// Masked entries of u, grad_sqrt_rho, V_B and dV_B are zero.
struct HydroFields {
  Grid grid;
  double epsilon;
  double node_eta;
  Field rho;            // |psi|^2
  Field J;              // eps * Im(conj(psi) psi')
  Field u;              // J / rho where unmasked
  Field grad_sqrt_rho;  // Re(conj(psi) psi') / |psi| where unmasked
  Field V_B;            // -(eps^2/2) * Lap|psi| / |psi| where unmasked
  Field dV_B;           // spectral d/dx of V_B
  std::vector<std::uint8_t> mask;  // 1 = node region
  double masked_mass = 0.0;
  int masked_count = 0;
};

/// Extracts rho, J, u, the Bohm potential and the node mask.
/// Throws NumericalError if everything is masked (rho identically ~0).
HydroFields extract_fields(const WaveFunction& psi, double node_eta = 1e-6);

/// Bohm potential of a bare density field (unmasked nodes only; entries with
/// rho < node_eta * max rho are zeroed and reported via the returned mask
/// semantics of extract_fields; prefer extract_fields when psi is available,
/// which uses sqrt(rho) = |psi| directly).
Field bohm_potential(const Field& rho, double epsilon, const Grid& grid, double node_eta = 1e-6);

struct KineticSplit {
  double current_energy;  // (1/2) integral J^2/rho  (unmasked)
  double quantum_energy;  // (eps^2/2) integral (d sqrt(rho))^2
  double masked_current;  // dropped |J|^2/rho mass-weighted contribution bound
};

/// Splits (eps^2/2)||grad psi||^2 into transport and quantum parts.
KineticSplit kinetic_split(const WaveFunction& psi, double node_eta = 1e-6);

/// Weak-form residuals of the two Madelung equations against a spatial test
/// profile, one value per interior frame pair, using centered differences in
/// time.  Returns the max |residual| per test over interior frames.
struct QhdResidual {
  double continuity;  // d_t rho + d_x J
  double momentum;    // d_t J + d_x(J^2/rho) + rho V' + rho V_B'
};
std::vector<QhdResidual> qhd_residual(const Timeline& tl, const Potential& V,
                                      const std::vector<BumpProfile>& tests,
                                      double node_eta = 1e-6);

}  // namespace bohmlab
