#include "bohmlab/wavefunction.hpp"

#include <cmath>

#include "bohmlab/errors.hpp"
#include "bohmlab/spectral.hpp"

namespace bohmlab {

WaveFunction::WaveFunction(Grid g, CField v, double eps)
    : grid(std::move(g)), values(std::move(v)), epsilon(eps) {
  if (values.size() != grid.size()) throw InternalError("WaveFunction: size mismatch");
  if (!(eps > 0.0 && eps <= 1.0)) throw ConfigError("WaveFunction: epsilon must be in (0, 1]");
}

WaveFunction WaveFunction::sample(const Grid& g, double eps,
                                  const std::function<cplx(double)>& psi) {
  if (g.dim() != 1) throw InternalError("WaveFunction::sample: d=1 only");
  CField v(g.size());
  for (int i = 0; i < g.n(0); ++i) v[i] = psi(g.node(i));
  return WaveFunction(g, std::move(v), eps);
}

double l2_norm_sq(const WaveFunction& psi) {
  double s = 0.0;
  for (const cplx& v : psi.values) {
    const double a = std::norm(v);
    if (!std::isfinite(a)) throw NumericalError("l2_norm_sq: non-finite wavefunction value");
    s += a;
  }
  return s * psi.grid.cell_volume();
}

WaveFunction normalized(const WaveFunction& psi) {
  const double m = l2_norm_sq(psi);
  if (m <= 0.0) throw NumericalError("normalized: zero-mass state");
  WaveFunction out = psi;
  const double scale = 1.0 / std::sqrt(m);
  for (auto& v : out.values) v *= scale;
  return out;
}

Field density(const WaveFunction& psi) {
  Field rho(psi.values.size());
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(psi.values[i]);
  return rho;
}

double boundary_mass(const WaveFunction& psi, double core_fraction) {
  if (psi.grid.dim() != 1) throw InternalError("boundary_mass: d=1 only");
  const Grid& g = psi.grid;
  const double margin = 0.5 * (1.0 - core_fraction) * g.length(0);
  const double lo = g.x_min(0) + margin;
  const double hi = g.x_max(0) - margin;
  double s = 0.0;
  for (int i = 0; i < g.n(0); ++i) {
    const double x = g.node(i);
    if (x < lo || x > hi) s += std::norm(psi.values[i]);
  }
  return s * g.cell_volume();
}

}  // namespace bohmlab
