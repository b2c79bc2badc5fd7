#include "bohmlab/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bohmlab/errors.hpp"
#include "bohmlab/fft.hpp"
#include "bohmlab/spectral.hpp"

namespace bohmlab {

WignerPGrid wigner_p_grid(const Grid& grid, double epsilon) {
  const int np = 2 * grid.n(0);
  const double dp = std::numbers::pi * epsilon / grid.length(0);
  return WignerPGrid{np, -0.5 * np * dp, dp};
}

namespace {

// Shared row kernel: for each x node j emits the real Wigner row over the
// shifted p grid (index r = 0..2n-1 maps to p = p_min + r*dp).
//
// w(x, p) = (2pi)^{-1} Int psi(x - eps*y/2) conj(psi)(x + eps*y/2) e^{iyp} dy
// is discretized with the offset eps*y/2 on the half-step lattice, i.e.
// y_m = m*dx/eps, so the correlation product uses the spectrally refined
// (factor 2) samples of psi.  The full offset range is kept: the unpaired
// m = -n term (a half-box correlation) is what produces the reported
// imaginary residue, and it vanishes for states resolved by the box.
template <typename RowFn>
double wigner_rows(const WaveFunction& psi, RowFn&& row_fn) {
  if (psi.grid.dim() != 1) throw InternalError("wigner: d=1 only");
  const Grid& g = psi.grid;
  const int n = g.n(0);
  const int np = 2 * n;
  const double scale = g.dx(0) / (psi.epsilon * 2.0 * std::numbers::pi);  // dy / (2 pi)

  const CField fine = spectral::upsample(psi.values, g, 2);
  Fft& fft = fft_for_size(np);
  CField K(np);
  std::vector<double> row(np);
  double imag_residue = 0.0;

  for (int j = 0; j < n; ++j) {
    const int c = 2 * j;
    for (int m = 0; m < np; ++m) {
      const int ms = (m < n) ? m : m - np;  // signed offset
      const int ia = ((c - ms) % np + np) % np;
      const int ib = ((c + ms) % np + np) % np;
      K[m] = fine[ia] * std::conj(fine[ib]);
    }
    fft.inverse(K);  // (1/np) sum_m K_m e^{+2pi i m r / np}
    // undo the 1/np normalization and shift so r=0 is p_min
    for (int r = 0; r < np; ++r) {
      const int q = (r + n) % np;  // p index r corresponds to FFT bin r - n
      const cplx v = K[q] * static_cast<double>(np) * scale;
      imag_residue = std::max(imag_residue, std::abs(v.imag()));
      row[r] = v.real();
    }
    row_fn(j, row);
  }
  return imag_residue;
}

}  // namespace

WignerField wigner_transform(const WaveFunction& psi) {
  const Grid& g = psi.grid;
  const int n = g.n(0);
  if (n > 4096) throw ConfigError("wigner_transform: n too large for a full field; use wigner_analyze");
  WignerField out{g, psi.epsilon, wigner_p_grid(g, psi.epsilon), {}, 0.0};
  out.w.assign(static_cast<std::size_t>(n) * out.pgrid.np, 0.0);
  out.imag_residue = wigner_rows(psi, [&](int j, const std::vector<double>& row) {
    std::copy(row.begin(), row.end(), out.w.begin() + static_cast<std::size_t>(j) * out.pgrid.np);
  });
  return out;
}

WignerMoments wigner_moments(const WignerField& w) {
  const int n = w.xgrid.n(0);
  WignerMoments m{Field(n, 0.0), Field(n, 0.0)};
  for (int j = 0; j < n; ++j) {
    for (int r = 0; r < w.pgrid.np; ++r) {
      const double v = w.at(j, r);
      m.m0[j] += v;
      m.m1[j] += v * w.pgrid.p(r);
    }
    m.m0[j] *= w.pgrid.dp;
    m.m1[j] *= w.pgrid.dp;
  }
  return m;
}

WignerAnalysis wigner_analyze(const WaveFunction& psi, const Dictionary& dict) {
  const Grid& g = psi.grid;
  const int n = g.n(0);
  WignerAnalysis a{g,           psi.epsilon,  wigner_p_grid(g, psi.epsilon),
                   Field(n, 0.0), Field(n, 0.0), Field(n, 0.0),
                   0.0,         0.0,          0.0,
                   0.0,         {}};
  a.pairings.assign(dict.size(), 0.0);

  // wraparound guard: the p box spans the eps-scaled Nyquist window, so a
  // state is covered iff its spectrum stays clear of the outer band
  {
    CField spec(psi.values.begin(), psi.values.end());
    fft_for_size(n).forward(spec);
    double total = 0.0, edge = 0.0;
    const double k_edge = 0.9 * std::numbers::pi * n / g.length(0);
    for (int k = 0; k < n; ++k) {
      const double m = std::norm(spec[k]);
      total += m;
      if (std::abs(g.wavenumber(k)) >= k_edge) edge += m;
    }
    if (total > 0.0) a.spectral_edge_mass = edge / total;
  }

  const int np = a.pgrid.np;
  std::vector<double> pvals(np), pvals2(np);
  for (int r = 0; r < np; ++r) {
    pvals[r] = a.pgrid.p(r);
    pvals2[r] = pvals[r] * pvals[r];
  }
  const double dp = a.pgrid.dp;
  const double dx = g.dx(0);

  // per-dictionary-entry sigma values cached on the p grid
  std::vector<std::vector<double>> sig(dict.size(), std::vector<double>(np));
  for (std::size_t d = 0; d < dict.size(); ++d)
    for (int r = 0; r < np; ++r) sig[d][r] = dict[d].sigma().value(pvals[r]);

  a.imag_residue = wigner_rows(psi, [&](int j, const std::vector<double>& row) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, mn = 0.0;
    for (int r = 0; r < np; ++r) {
      s0 += row[r];
      s1 += row[r] * pvals[r];
      s2 += row[r] * pvals2[r];
      mn = std::min(mn, row[r]);
    }
    a.m0[j] = s0 * dp;
    a.m1[j] = s1 * dp;
    a.m2[j] = s2 * dp;
    a.min_w = std::min(a.min_w, mn);
    const double x = g.node(j);
    for (std::size_t d = 0; d < dict.size(); ++d) {
      const double chi = dict[d].chi().value(x) * dict[d].scale();
      if (chi == 0.0) continue;
      double sp = 0.0;
      for (int r = 0; r < np; ++r) sp += row[r] * sig[d][r];
      a.pairings[d] += chi * sp * dp * dx;
    }
  });
  for (int j = 0; j < n; ++j) a.mass += a.m0[j];
  a.mass *= dx;
  return a;
}

Field WignerAnalysis::rho_T(double eta) const {
  const int n = static_cast<int>(m0.size());
  double m0max = 0.0;
  for (double v : m0) m0max = std::max(m0max, v);
  Field out(n, 0.0);
  for (int j = 0; j < n; ++j)
    if (m0[j] >= eta * m0max) out[j] = m2[j] - m1[j] * m1[j] / m0[j];
  return out;
}

Field WignerAnalysis::temperature(double eta) const {
  const Field rt = rho_T(eta);
  double m0max = 0.0;
  for (double v : m0) m0max = std::max(m0max, v);
  Field out(rt.size(), 0.0);
  for (std::size_t j = 0; j < rt.size(); ++j)
    if (m0[j] >= eta * m0max) out[j] = rt[j] / m0[j];
  return out;
}

HusimiField husimi(const WaveFunction& psi, double width) {
  if (psi.grid.dim() != 1) throw InternalError("husimi: d=1 only");
  if (!(width > 0.0)) throw ConfigError("husimi: width must be positive");
  const Grid& g = psi.grid;
  const int n = g.n(0);
  if (n > 2048) throw ConfigError("husimi: n too large for a full field");
  const double eps = psi.epsilon;
  const double s = width * std::sqrt(0.5 * eps);  // window std in x
  const double L = g.length(0);
  const int np = 2 * n;

  HusimiField out{g, eps, wigner_p_grid(g, eps), {}, 0.0};
  out.h.assign(static_cast<std::size_t>(n) * np, 0.0);

  // normalized, periodically wrapped Gaussian window
  const double norm = std::pow(std::numbers::pi * s * s, -0.25);
  Fft& fft = fft_for_size(np);
  CField win(np);
  const double prefac = g.dx(0) * g.dx(0) / (2.0 * std::numbers::pi * eps);
  for (int j = 0; j < n; ++j) {
    const double x0 = g.node(j);
    for (int i = 0; i < n; ++i) {
      double d = g.node(i) - x0;
      d -= std::round(d / L) * L;
      // windowed state, modulated so that the FFT index gives p = eps*k;
      // zero-padding to 2n puts p on the half-step lattice dp = pi*eps/L
      win[i] = psi.values[i] * norm * std::exp(-d * d / (2.0 * s * s));
      win[i + n] = 0.0;
    }
    // overlap with e^{+ipx/eps}: forward FFT gives sum psi_i g_i e^{-2pi i ik/np}
    fft.forward(win);
    for (int r = 0; r < np; ++r) {
      // p index r -> p = (r - n) * dp; FFT bin for e^{-ikx} with k = p/eps:
      // p = dp*(r-n) = (pi*eps/L)(r-n) -> k index (r-n)/2 on the n-grid...
      // use the zero-padded transform directly: bin m corresponds to
      // wavenumber 2*pi*m/(np*dx) = p/eps with m signed.
      const int ms = r - n;
      const int bin = ((ms % np) + np) % np;
      out.h[static_cast<std::size_t>(j) * np + r] = std::norm(win[bin]) * prefac;
    }
  }
  out.min_value = 0.0;  // |.|^2 by construction
  return out;
}

}  // namespace bohmlab
