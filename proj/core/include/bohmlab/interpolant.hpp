#pragma once

#include <functional>
#include <vector>

#include "bohmlab/propagator.hpp"

namespace bohmlab {

/// Periodic interpolant of a real grid field: spectral refinement by a fixed
/// factor followed by local 4-point (cubic Lagrange) evaluation on the fine
/// lattice.  Effectively trigonometric interpolation for smooth fields.
class PeriodicInterpolant {
 public:
  PeriodicInterpolant() = default;
  PeriodicInterpolant(const Field& values, const Grid& grid, int refine = 4);
  /// Wraps an already-refined lattice of values on [x_min, x_min + length).
  PeriodicInterpolant(Field fine_values, double x_min, double length);
  double operator()(double x) const;

 private:
  double x_min_ = 0.0, length_ = 1.0, h_ = 1.0;
  int nf_ = 0;
  Field fine_;
};

/// Complex variant (same scheme applied to both parts).
class PeriodicInterpolantC {
 public:
  PeriodicInterpolantC() = default;
  PeriodicInterpolantC(const CField& values, const Grid& grid, int refine = 4);
  cplx operator()(double x) const;

 private:
  PeriodicInterpolant re_, im_;
};

}  // namespace bohmlab
