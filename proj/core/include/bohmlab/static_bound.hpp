#pragma once

#include "bohmlab/hydrodynamics.hpp"
#include "bohmlab/test_function.hpp"
#include "bohmlab/wavefunction.hpp"

namespace bohmlab {

/// Pointwise estimate on div(grad|psi| (x) grad|psi|) and the induced
/// integral bound M_eps (d=1).
///
/// The majorant used here is the sharp form that follows from expanding
/// d_l|psi| d_j|psi| = (1/2) Re(d_l psi conj(d_j psi) + (conj(psi)/psi)
/// d_l psi d_j psi):
///
///   |div(grad|psi| (x) grad|psi|)|
///       <= d * ( 2 sup_{ljk} |d_l d_j psi| |d_k psi|
///                + |Im(grad psi / psi)| sup_{lj} |d_l psi| |d_j psi| ),
///
/// with equality for real Gaussians, and
///
///   M_eps = (d/eps) * sup|xi sigma(xi)| sup|chi| * ||grad psi||_L2(box)^2
///         + 2 d * sup|phi| * ||grad psi||_L2(box) ||grad^2 psi||_L2(box),
///
/// which scales as O(1/eps^3) on eps-oscillatory families.
struct StaticBoundReport {
  double lhs_max = 0.0;     // max |div(grad|psi| (x) grad|psi|)| over unmasked nodes
  Field lhs_field;          // signed field
  Field rhs_field;          // pointwise majorant
  double min_margin = 0.0;  // min (rhs - |lhs|) over unmasked nodes
  bool pointwise_ok = false;
  double integral_lhs = 0.0;  // integral |lhs * phi(x, u)| dx
  double M_eps = 0.0;
  bool integral_ok = false;
};

StaticBoundReport static_bound(const WaveFunction& psi, const PhaseSpaceTest& phi,
                               double node_eta = 1e-6, double tol = 1e-8);

}  // namespace bohmlab
