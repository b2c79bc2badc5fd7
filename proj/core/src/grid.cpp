#include "bohmlab/grid.hpp"

#include <cmath>
#include <numbers>

#include "bohmlab/errors.hpp"

namespace bohmlab {

namespace {
bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid::Grid(AxisSpec x) : dim_(1), axes_{x, AxisSpec{}} { validate(); }

Grid::Grid(AxisSpec x, AxisSpec y) : dim_(2), axes_{x, y} { validate(); }

void Grid::validate() const {
  for (int a = 0; a < dim_; ++a) {
    if (!(axes_[a].x_max > axes_[a].x_min))
      throw ConfigError("grid: x_max must exceed x_min");
    if (!is_power_of_two(axes_[a].n))
      throw ConfigError("grid: n must be a power of two, got " + std::to_string(axes_[a].n));
  }
}

double Grid::wavenumber(int k, int axis) const {
  const int nn = axes_[axis].n;
  const int m = (k < nn / 2) ? k : k - nn;
  return 2.0 * std::numbers::pi / length(axis) * m;
}

double Grid::dk(int axis) const { return 2.0 * std::numbers::pi / length(axis); }

std::size_t Grid::size() const {
  std::size_t s = 1;
  for (int a = 0; a < dim_; ++a) s *= static_cast<std::size_t>(axes_[a].n);
  return s;
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim_; ++a) v *= dx(a);
  return v;
}

std::size_t Grid::index(int i, int j) const {
  if (dim_ == 1) return static_cast<std::size_t>(i);
  return static_cast<std::size_t>(i) * axes_[1].n + j;
}

bool Grid::operator==(const Grid& other) const {
  if (dim_ != other.dim_) return false;
  for (int a = 0; a < dim_; ++a) {
    if (axes_[a].x_min != other.axes_[a].x_min || axes_[a].x_max != other.axes_[a].x_max ||
        axes_[a].n != other.axes_[a].n)
      return false;
  }
  return true;
}

}  // namespace bohmlab
