#pragma once

#include <span>

#include "bohmlab/grid.hpp"

namespace bohmlab {

/// Fourier-space differential calculus on periodic grids.  All operators are
/// exact on band-limited fields; the (asymmetric) Nyquist mode is zeroed for
/// odd-order derivatives.
namespace spectral {

/// d/dx_axis of a complex field.
CField gradient(std::span<const cplx> f, const Grid& grid, int axis = 0);

/// d/dx_axis of a real field (imaginary residue discarded).
Field gradient_real(std::span<const double> f, const Grid& grid, int axis = 0);

/// Laplacian (sum over axes).
CField laplacian(std::span<const cplx> f, const Grid& grid);
Field laplacian_real(std::span<const double> f, const Grid& grid);

/// Trigonometric interpolation onto a grid refined by `factor` per axis
/// (zero-padded FFT).  d=1 only.
CField upsample(std::span<const cplx> f, const Grid& grid, int factor);
Field upsample_real(std::span<const double> f, const Grid& grid, int factor);

/// Squared l2 norm of the normalized DFT coefficients times box volume;
/// equals quadrature(|f|^2) by Parseval.
double parseval_norm_sq(std::span<const cplx> f, const Grid& grid);

}  // namespace spectral

/// Rectangle rule on the periodic grid (spectrally accurate for smooth
/// periodic integrands): sum f_i * cell_volume.
double quadrature(std::span<const double> f, const Grid& grid);
cplx quadrature(std::span<const cplx> f, const Grid& grid);

}  // namespace bohmlab
