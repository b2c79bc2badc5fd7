#include "bohmlab/interpolant.hpp"

#include <algorithm>
#include <cmath>

#include "bohmlab/errors.hpp"
#include "bohmlab/spectral.hpp"

namespace bohmlab {

namespace {

// Cubic Lagrange weights for nodes {-1, 0, 1, 2} at offset theta in [0, 1].
inline void cubic_weights(double th, double w[4]) {
  w[0] = -th * (th - 1.0) * (th - 2.0) / 6.0;
  w[1] = (th + 1.0) * (th - 1.0) * (th - 2.0) / 2.0;
  w[2] = -(th + 1.0) * th * (th - 2.0) / 2.0;
  w[3] = (th + 1.0) * th * (th - 1.0) / 6.0;
}

}  // namespace

PeriodicInterpolant::PeriodicInterpolant(const Field& values, const Grid& grid, int refine)
    : x_min_(grid.x_min(0)), length_(grid.length(0)) {
  fine_ = (refine > 1) ? spectral::upsample_real(values, grid, refine) : values;
  nf_ = static_cast<int>(fine_.size());
  h_ = length_ / nf_;
}

PeriodicInterpolant::PeriodicInterpolant(Field fine_values, double x_min, double length)
    : x_min_(x_min), length_(length), fine_(std::move(fine_values)) {
  nf_ = static_cast<int>(fine_.size());
  h_ = length_ / nf_;
}

double PeriodicInterpolant::operator()(double x) const {
  double s = (x - x_min_) / h_;
  s -= std::floor(s / nf_) * nf_;
  int i = static_cast<int>(std::floor(s));
  if (i >= nf_) i -= nf_;
  const double th = s - i;
  double w[4];
  cubic_weights(th, w);
  const int im1 = (i + nf_ - 1) % nf_;
  const int ip1 = (i + 1) % nf_;
  const int ip2 = (i + 2) % nf_;
  return w[0] * fine_[im1] + w[1] * fine_[i] + w[2] * fine_[ip1] + w[3] * fine_[ip2];
}

PeriodicInterpolantC::PeriodicInterpolantC(const CField& values, const Grid& grid, int refine) {
  Field re(values.size()), im(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    re[i] = values[i].real();
    im[i] = values[i].imag();
  }
  re_ = PeriodicInterpolant(re, grid, refine);
  im_ = PeriodicInterpolant(im, grid, refine);
}

cplx PeriodicInterpolantC::operator()(double x) const { return cplx(re_(x), im_(x)); }

}  // namespace bohmlab
