#pragma once

#include <functional>
#include <vector>

#include "bohmlab/hydrodynamics.hpp"
#include "bohmlab/test_function.hpp"

namespace bohmlab {

struct PhaseAtom {
  double x, p, w;
};

/// Weighted point masses on phase space: the numerical realization of the
/// mono-kinetic measure rho(x) delta(p - u(x)) and of its push-forwards.
class EmpiricalPhaseMeasure {
 public:
  EmpiricalPhaseMeasure() = default;
  explicit EmpiricalPhaseMeasure(std::vector<PhaseAtom> atoms, double masked_mass = 0.0);

  const std::vector<PhaseAtom>& atoms() const { return atoms_; }
  double total_mass() const { return total_mass_; }
  double masked_mass() const { return masked_mass_; }

  /// Sum w_j phi(x_j, p_j); exact for atomic measures.
  double pair(const PhaseSpaceTest& phi) const;
  double pair(const std::function<double(double, double)>& phi) const;

 private:
  std::vector<PhaseAtom> atoms_;
  double total_mass_ = 0.0;
  double masked_mass_ = 0.0;
};

/// Atoms (x_i, u(x_i), rho(x_i) dx) over unmasked nodes of one frame.
EmpiricalPhaseMeasure bohmian_measure(const HydroFields& fields);

/// Per-x-bin moments of an empirical measure, binned to the cells of `grid`
/// (cell i is centered on node i).  Values are densities (divided by dx).
/// cs_gap = m2 - m1^2/m0 >= 0 entrywise by Cauchy-Schwarz; empty bins are
/// skipped (count == 0).
struct MomentGrid {
  Grid grid;
  Field m0, m1, m2, cs_gap;
  std::vector<int> count;
};
MomentGrid moments(const EmpiricalPhaseMeasure& mu, const Grid& grid);

/// Weak-* proxy distance: max over a dictionary of |<A, phi> - <B, phi>|,
/// each phi normalized to unit C^1 bound.  Throws ConfigError on an empty
/// dictionary.
using PairingFn = std::function<double(const PhaseSpaceTest&)>;
double weak_distance(const PairingFn& a, const PairingFn& b, const Dictionary& dict);

}  // namespace bohmlab
