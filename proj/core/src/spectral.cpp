#include "bohmlab/spectral.hpp"

#include <cmath>

#include "bohmlab/errors.hpp"
#include "bohmlab/fft.hpp"

namespace bohmlab::spectral {

namespace {

void check_size(std::size_t have, const Grid& grid) {
  if (have != grid.size()) throw InternalError("spectral: field size does not match grid");
}

// Applies `op(k, coeff)` to the 1-d spectrum along `axis` of a d=1 or d=2 field.
template <typename Op>
CField apply_multiplier(std::span<const cplx> f, const Grid& grid, int axis, Op op) {
  check_size(f.size(), grid);
  CField out(f.begin(), f.end());
  if (grid.dim() == 1) {
    Fft& fft = fft_for_size(grid.n(0));
    fft.forward(out);
    for (int k = 0; k < grid.n(0); ++k) out[k] = op(grid.wavenumber(k, 0), out[k], k, grid.n(0));
    fft.inverse(out);
    return out;
  }
  // d=2: transform along the requested axis row/column-wise.
  const int nx = grid.n(0), ny = grid.n(1);
  Fft& fft = fft_for_size(grid.n(axis));
  CField line(static_cast<std::size_t>(grid.n(axis)));
  const int n_lines = (axis == 0) ? ny : nx;
  for (int l = 0; l < n_lines; ++l) {
    for (int k = 0; k < grid.n(axis); ++k)
      line[k] = (axis == 0) ? out[grid.index(k, l)] : out[grid.index(l, k)];
    fft.forward(line);
    for (int k = 0; k < grid.n(axis); ++k)
      line[k] = op(grid.wavenumber(k, axis), line[k], k, grid.n(axis));
    fft.inverse(line);
    for (int k = 0; k < grid.n(axis); ++k) {
      if (axis == 0)
        out[grid.index(k, l)] = line[k];
      else
        out[grid.index(l, k)] = line[k];
    }
  }
  return out;
}

Field real_part(const CField& f) {
  Field out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i].real();
  return out;
}

CField to_complex(std::span<const double> f) {
  CField out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i];
  return out;
}

}  // namespace

CField gradient(std::span<const cplx> f, const Grid& grid, int axis) {
  return apply_multiplier(f, grid, axis, [](double k, cplx c, int bin, int n) {
    if (bin == n / 2) return cplx(0.0, 0.0);  // unpaired Nyquist mode
    return cplx(0.0, k) * c;
  });
}

Field gradient_real(std::span<const double> f, const Grid& grid, int axis) {
  return real_part(gradient(to_complex(f), grid, axis));
}

CField laplacian(std::span<const cplx> f, const Grid& grid) {
  CField out = apply_multiplier(f, grid, 0, [](double k, cplx c, int, int) { return -k * k * c; });
  if (grid.dim() == 2) {
    CField oy = apply_multiplier(f, grid, 1, [](double k, cplx c, int, int) { return -k * k * c; });
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += oy[i];
  }
  return out;
}

Field laplacian_real(std::span<const double> f, const Grid& grid) {
  return real_part(laplacian(to_complex(f), grid));
}

CField upsample(std::span<const cplx> f, const Grid& grid, int factor) {
  if (grid.dim() != 1) throw InternalError("spectral::upsample: d=1 only");
  if (factor < 1) throw InternalError("spectral::upsample: factor must be >= 1");
  const int n = grid.n(0);
  const int nf = n * factor;
  CField spec(f.begin(), f.end());
  fft_for_size(n).forward(spec);
  CField padded(static_cast<std::size_t>(nf), cplx(0.0, 0.0));
  const int half = n / 2;
  for (int k = 0; k < half; ++k) padded[k] = spec[k];
  for (int k = half + 1; k < n; ++k) padded[nf - n + k] = spec[k];
  // Split the Nyquist coefficient symmetrically so real fields stay real.
  padded[half] = 0.5 * spec[half];
  padded[nf - half] = 0.5 * spec[half];
  fft_for_size(nf).inverse(padded);
  const double scale = static_cast<double>(factor);
  for (auto& v : padded) v *= scale;
  return padded;
}

Field upsample_real(std::span<const double> f, const Grid& grid, int factor) {
  return real_part(upsample(to_complex(f), grid, factor));
}

double parseval_norm_sq(std::span<const cplx> f, const Grid& grid) {
  if (grid.dim() != 1) throw InternalError("parseval_norm_sq: d=1 only");
  CField spec(f.begin(), f.end());
  fft_for_size(grid.n(0)).forward(spec);
  double s = 0.0;
  const double inv_n = 1.0 / grid.n(0);
  for (const auto& c : spec) s += std::norm(c) * inv_n * inv_n;
  return s * grid.length(0);
}

}  // namespace bohmlab::spectral

namespace bohmlab {

double quadrature(std::span<const double> f, const Grid& grid) {
  if (f.size() != grid.size()) throw InternalError("quadrature: field size does not match grid");
  double s = 0.0;
  for (double v : f) s += v;
  return s * grid.cell_volume();
}

cplx quadrature(std::span<const cplx> f, const Grid& grid) {
  if (f.size() != grid.size()) throw InternalError("quadrature: field size does not match grid");
  cplx s = 0.0;
  for (const cplx& v : f) s += v;
  return s * grid.cell_volume();
}

}  // namespace bohmlab
