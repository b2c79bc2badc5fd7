#pragma once

#include <functional>

#include "bohmlab/grid.hpp"

namespace bohmlab {

/// Complex wavefunction sampled on a periodic grid, carrying its semiclassical
/// parameter epsilon in (0, 1].  Snapshots are immutable values.
struct WaveFunction {
  Grid grid;
  CField values;
  double epsilon = 1.0;

  WaveFunction(Grid g, CField v, double eps);

  /// Builds from a pointwise evaluator psi(x) (d=1).
  static WaveFunction sample(const Grid& g, double eps, const std::function<cplx(double)>& psi);
};

/// Squared L2 norm by rectangle quadrature.  Throws NumericalError on
/// non-finite values.
double l2_norm_sq(const WaveFunction& psi);

/// Returns a copy rescaled to unit mass.
WaveFunction normalized(const WaveFunction& psi);

/// |psi|^2 on the grid.
Field density(const WaveFunction& psi);

/// Mass outside the central `core_fraction` of the box (used by the
/// boundary-mass guard; states must be numerically supported well inside).
double boundary_mass(const WaveFunction& psi, double core_fraction = 0.8);

}  // namespace bohmlab
