#pragma once

#include <functional>
#include <string>

#include "bohmlab/grid.hpp"

namespace bohmlab {

/// External potential V(x) with analytic gradient and Hessian evaluators
/// (d=1).  Immutable and shareable across workers.
class Potential {
 public:
  enum class Smoothness { C1b, C2b, C3b };

  Potential(std::string name, std::function<double(double)> v, std::function<double(double)> dv,
            std::function<double(double)> d2v, Smoothness tag, bool unbounded_test_only = false);

  double value(double x) const { return v_(x); }
  double grad(double x) const { return dv_(x); }
  double hess(double x) const { return d2v_(x); }

  const std::string& name() const { return name_; }
  Smoothness tag() const { return tag_; }
  bool unbounded_test_only() const { return unbounded_test_only_; }
  bool is_zero() const { return zero_; }

  Field sample(const Grid& grid) const;
  Field sample_grad(const Grid& grid) const;

  /// Checks that |V| is bounded on the grid and, for the C3b tag, that the
  /// third finite difference of the samples stays bounded.  Throws
  /// NumericalError otherwise.  Skipped for unbounded-test-only potentials.
  void check_regularity(const Grid& grid) const;

  static Potential zero();
  /// Harmonic well omega^2 x^2 / 2; not bounded, admitted for tests with an
  /// explicit box-size guard (flagged unbounded-test-only).
  static Potential harmonic(double omega = 1.0);
  /// Smooth bounded well depth/(1 + (x/width)^2); C^inf_b, tagged C3b.
  static Potential lorentz_well(double depth, double width = 1.0);

 private:
  std::string name_;
  std::function<double(double)> v_, dv_, d2v_;
  Smoothness tag_;
  bool unbounded_test_only_;
  bool zero_ = false;
};

}  // namespace bohmlab
