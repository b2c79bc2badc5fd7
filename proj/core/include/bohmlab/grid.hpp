#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace bohmlab {

using cplx = std::complex<double>;
using Field = std::vector<double>;
using CField = std::vector<cplx>;

/// One periodic axis: nodes x_i = x_min + i*dx, i = 0..n-1, dx = (x_max-x_min)/n.
struct AxisSpec {
  double x_min = 0.0;
  double x_max = 1.0;
  int n = 0;
};

/// Uniform periodic grid in d = 1 or 2 dimensions, with its exact Fourier-dual
/// momentum grid (spacing 2*pi/L per axis).  Immutable after construction and
/// safe to share across threads.
class Grid {
 public:
  explicit Grid(AxisSpec x);
  Grid(AxisSpec x, AxisSpec y);

  int dim() const { return dim_; }
  int n(int axis = 0) const { return axes_[axis].n; }
  double x_min(int axis = 0) const { return axes_[axis].x_min; }
  double x_max(int axis = 0) const { return axes_[axis].x_max; }
  double length(int axis = 0) const { return axes_[axis].x_max - axes_[axis].x_min; }
  double dx(int axis = 0) const { return length(axis) / axes_[axis].n; }
  double node(int i, int axis = 0) const { return axes_[axis].x_min + i * dx(axis); }

  /// Signed dual wavenumber of FFT bin k: (2*pi/L) * m with m in [-n/2, n/2).
  double wavenumber(int k, int axis = 0) const;
  /// Dual momentum-grid spacing 2*pi/L.
  double dk(int axis = 0) const;

  /// Total number of nodes (n, or nx*ny).
  std::size_t size() const;
  /// Cell volume element (dx, or dx*dy).
  double cell_volume() const;

  /// Row-major flat index for d=2; identity for d=1.
  std::size_t index(int i, int j = 0) const;

  bool operator==(const Grid& other) const;

 private:
  void validate() const;
  int dim_;
  std::array<AxisSpec, 2> axes_;
};

}  // namespace bohmlab
