#pragma once

#include <vector>

#include "bohmlab/potential.hpp"

namespace bohmlab {

/// Classical Hamiltonian trajectory dX/dt = P, dP/dt = -V'(X) with the
/// accumulated action S(t) = Int (P^2/2 - V(X)) ds.  Leapfrog (velocity
/// Verlet) in (X, P), Simpson accumulation for S; second order overall.
struct ClassicalTrajectory {
  double x0 = 0.0, p0 = 0.0;
  double dt = 0.0;
  std::vector<double> t, X, P, S;

  double T() const { return t.back(); }
  /// Cubic-interpolated access at arbitrary time in [0, T].
  double x_at(double time) const;
  double p_at(double time) const;
  double s_at(double time) const;
  /// Max |V''(X(t))| along the path (envelope stability guard).
  double max_energy_drift(const Potential& V) const;

 private:
  double interp(const std::vector<double>& f, double time) const;
};

ClassicalTrajectory classical_flow(const Potential& V, double x0, double p0, double T, double dt);

}  // namespace bohmlab
