#include "bohmlab/hydrodynamics.hpp"

#include <algorithm>
#include <cmath>

#include "bohmlab/errors.hpp"
#include "bohmlab/spectral.hpp"

namespace bohmlab {

HydroFields extract_fields(const WaveFunction& psi, double node_eta) {
  if (psi.grid.dim() != 1) throw InternalError("extract_fields: d=1 only");
  const Grid& g = psi.grid;
  const int n = g.n(0);
  const double eps = psi.epsilon;

  HydroFields f{g, eps, node_eta, Field(n), Field(n), Field(n, 0.0),
                Field(n, 0.0), Field(n, 0.0), Field(n, 0.0),
                std::vector<std::uint8_t>(n, 0), 0.0, 0};

  const CField dpsi = spectral::gradient(psi.values, g);
  double rho_max = 0.0;
  for (int i = 0; i < n; ++i) {
    f.rho[i] = std::norm(psi.values[i]);
    rho_max = std::max(rho_max, f.rho[i]);
  }
  if (!(rho_max > 0.0)) throw NumericalError("extract_fields: degenerate state (rho == 0)");
  const double floor = node_eta * rho_max;

  // sqrt(rho) derivatives from |psi| via d|psi| = Re(conj(psi) psi')/|psi|,
  // which avoids cancellation near nodes.  The mask governs u (and V_B);
  // d sqrt(rho) itself is defined wherever rho > 0.
  Field abs_psi(n);
  for (int i = 0; i < n; ++i) {
    const cplx corr = std::conj(psi.values[i]) * dpsi[i];
    f.J[i] = eps * corr.imag();
    abs_psi[i] = std::sqrt(f.rho[i]);
    if (f.rho[i] > 0.0) f.grad_sqrt_rho[i] = corr.real() / abs_psi[i];
    if (f.rho[i] < floor) {
      f.mask[i] = 1;
      f.masked_mass += f.rho[i];
      ++f.masked_count;
    } else {
      f.u[i] = f.J[i] / f.rho[i];
    }
  }
  f.masked_mass *= g.cell_volume();

  const Field lap_abs = spectral::laplacian_real(abs_psi, g);
  for (int i = 0; i < n; ++i)
    if (!f.mask[i]) f.V_B[i] = -0.5 * eps * eps * lap_abs[i] / abs_psi[i];

  // dV_B through the flux identity rho dV_B = -(eps^2/4) d^3 rho
  // + eps^2 d[(d sqrt rho)^2]: every derivative acts on a globally smooth
  // field, and the final division is node-regularized like the velocity.
  Field gs2(n);
  for (int i = 0; i < n; ++i) gs2[i] = f.grad_sqrt_rho[i] * f.grad_sqrt_rho[i];
  const Field d_gs2 = spectral::gradient_real(gs2, g);
  const Field d_lap_rho = spectral::gradient_real(spectral::laplacian_real(f.rho, g), g);
  const double delta = 0.25 * node_eta * rho_max;
  for (int i = 0; i < n; ++i) {
    const double flux = eps * eps * (-0.25 * d_lap_rho[i] + d_gs2[i]);
    f.dV_B[i] = flux * f.rho[i] / (f.rho[i] * f.rho[i] + delta * delta);
  }
  return f;
}

Field bohm_potential(const Field& rho, double epsilon, const Grid& grid, double node_eta) {
  const int n = grid.n(0);
  if (static_cast<int>(rho.size()) != n) throw InternalError("bohm_potential: size mismatch");
  double rho_max = 0.0;
  for (double r : rho) {
    if (r < 0.0) throw NumericalError("bohm_potential: negative density");
    rho_max = std::max(rho_max, r);
  }
  Field sq(n);
  for (int i = 0; i < n; ++i) sq[i] = std::sqrt(rho[i]);
  const Field lap = spectral::laplacian_real(sq, grid);
  const double floor = node_eta * rho_max;
  Field out(n, 0.0);
  for (int i = 0; i < n; ++i)
    if (rho[i] >= floor) out[i] = -0.5 * epsilon * epsilon * lap[i] / sq[i];
  return out;
}

KineticSplit kinetic_split(const WaveFunction& psi, double node_eta) {
  const HydroFields f = extract_fields(psi, node_eta);
  const double dv = psi.grid.cell_volume();
  // J^2/rho is summed down to a machine floor (not the node mask): the
  // spectral noise floor of J makes the quotient meaningless only below
  // ~1e-20 of the peak density.  The dropped share is reported.
  double rho_max = 0.0;
  for (double r : f.rho) rho_max = std::max(rho_max, r);
  const double floor = 1e-20 * rho_max;
  KineticSplit out{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < f.rho.size(); ++i) {
    out.quantum_energy += f.grad_sqrt_rho[i] * f.grad_sqrt_rho[i];
    if (f.rho[i] < floor) {
      out.masked_current += f.rho[i];
      continue;
    }
    out.current_energy += 0.5 * f.J[i] * f.J[i] / f.rho[i];
  }
  out.current_energy *= dv;
  out.quantum_energy *= 0.5 * psi.epsilon * psi.epsilon * dv;
  out.masked_current *= dv;
  return out;
}

std::vector<QhdResidual> qhd_residual(const Timeline& tl, const Potential& V,
                                      const std::vector<BumpProfile>& tests, double node_eta) {
  if (tl.frames.size() < 3) throw NumericalError("qhd_residual: need at least 3 stored frames");
  const Grid& g = tl.grid;
  const int n = g.n(0);
  const double dv = g.cell_volume();
  const double eps = tl.epsilon;

  std::vector<QhdResidual> out(tests.size(), QhdResidual{0.0, 0.0});

  std::vector<HydroFields> fields;
  fields.reserve(tl.frames.size());
  for (std::size_t k = 0; k < tl.frames.size(); ++k)
    fields.push_back(extract_fields(tl.state(k), node_eta));

  const Field vgrad = V.sample_grad(g);

  for (std::size_t k = 1; k + 1 < tl.frames.size(); ++k) {
    const double two_h = tl.frames[k + 1].t - tl.frames[k - 1].t;
    const HydroFields& f = fields[k];
    // Laplacian of rho for the weak Bohm flux (eps^2/4) <Lap rho, chi'>.
    const Field lap_rho = spectral::laplacian_real(f.rho, g);
    for (std::size_t ti = 0; ti < tests.size(); ++ti) {
      const BumpProfile& chi = tests[ti];
      double r1 = 0.0, r2 = 0.0;
      for (int i = 0; i < n; ++i) {
        const double x = g.node(i);
        const double c = chi.value(x);
        const double dc = chi.deriv(x);
        if (c == 0.0 && dc == 0.0) continue;
        const double drho_dt = (fields[k + 1].rho[i] - fields[k - 1].rho[i]) / two_h;
        const double dJ_dt = (fields[k + 1].J[i] - fields[k - 1].J[i]) / two_h;
        r1 += drho_dt * c - f.J[i] * dc;
        r2 += dJ_dt * c + f.rho[i] * vgrad[i] * c;
        if (!f.mask[i]) {
          r2 -= f.J[i] * f.u[i] * dc;
          r2 -= eps * eps * f.grad_sqrt_rho[i] * f.grad_sqrt_rho[i] * dc;
        }
        r2 += 0.25 * eps * eps * lap_rho[i] * dc;
      }
      out[ti].continuity = std::max(out[ti].continuity, std::abs(r1 * dv));
      out[ti].momentum = std::max(out[ti].momentum, std::abs(r2 * dv));
    }
  }
  return out;
}

}  // namespace bohmlab
