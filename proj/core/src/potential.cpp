#include "bohmlab/potential.hpp"

#include <cmath>

#include "bohmlab/errors.hpp"

namespace bohmlab {

Potential::Potential(std::string name, std::function<double(double)> v,
                     std::function<double(double)> dv, std::function<double(double)> d2v,
                     Smoothness tag, bool unbounded_test_only)
    : name_(std::move(name)),
      v_(std::move(v)),
      dv_(std::move(dv)),
      d2v_(std::move(d2v)),
      tag_(tag),
      unbounded_test_only_(unbounded_test_only) {}

Field Potential::sample(const Grid& grid) const {
  Field out(grid.size());
  for (int i = 0; i < grid.n(0); ++i) out[i] = v_(grid.node(i));
  return out;
}

Field Potential::sample_grad(const Grid& grid) const {
  Field out(grid.size());
  for (int i = 0; i < grid.n(0); ++i) out[i] = dv_(grid.node(i));
  return out;
}

void Potential::check_regularity(const Grid& grid) const {
  if (unbounded_test_only_) return;
  const Field v = sample(grid);
  double vmax = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) throw NumericalError("potential: non-finite sample");
    vmax = std::max(vmax, std::abs(x));
  }
  if (vmax > 1e6) throw NumericalError("potential: samples exceed boundedness guard");
  if (tag_ == Smoothness::C3b) {
    // third centered difference, interior only (V need not be box-periodic)
    const int n = grid.n(0);
    const double h = grid.dx(0);
    double d3max = 0.0;
    for (int i = 2; i + 2 < n; ++i) {
      const double d3 = (v[i + 2] - 2.0 * v[i + 1] + 2.0 * v[i - 1] - v[i - 2]) / (2.0 * h * h * h);
      d3max = std::max(d3max, std::abs(d3));
    }
    if (!(d3max < 1e6)) throw NumericalError("potential: third difference unbounded on grid");
  }
}

Potential Potential::zero() {
  auto z = [](double) { return 0.0; };
  Potential p("zero", z, z, z, Smoothness::C3b);
  p.zero_ = true;
  return p;
}

Potential Potential::harmonic(double omega) {
  const double w2 = omega * omega;
  return Potential(
      "harmonic", [w2](double x) { return 0.5 * w2 * x * x; }, [w2](double x) { return w2 * x; },
      [w2](double) { return w2; }, Smoothness::C3b, /*unbounded_test_only=*/true);
}

Potential Potential::lorentz_well(double depth, double width) {
  const double w2 = width * width;
  auto v = [depth, w2](double x) { return depth / (1.0 + x * x / w2); };
  auto dv = [depth, w2](double x) {
    const double u = 1.0 + x * x / w2;
    return -depth * 2.0 * x / (w2 * u * u);
  };
  auto d2v = [depth, w2](double x) {
    const double u = 1.0 + x * x / w2;
    return depth * (6.0 * x * x / w2 - 2.0) / (w2 * u * u * u);
  };
  return Potential("lorentz_well", v, dv, d2v, Smoothness::C3b);
}

}  // namespace bohmlab
