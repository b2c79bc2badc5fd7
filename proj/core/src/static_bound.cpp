#include "bohmlab/static_bound.hpp"

#include <algorithm>
#include <cmath>

#include "bohmlab/errors.hpp"
#include "bohmlab/spectral.hpp"

namespace bohmlab {

StaticBoundReport static_bound(const WaveFunction& psi, const PhaseSpaceTest& phi, double node_eta,
                               double tol) {
  if (psi.grid.dim() != 1) throw InternalError("static_bound: d=1 only");
  const Grid& g = psi.grid;
  const int n = g.n(0);
  const double eps = psi.epsilon;

  const HydroFields f = extract_fields(psi, node_eta);
  const CField dpsi = spectral::gradient(psi.values, g);
  const CField d2psi = spectral::laplacian(psi.values, g);

  // lhs = d/dx of (d|psi|/dx)^2, with d|psi| taken as Re(conj(psi) psi')/|psi|.
  Field gsq(n, 0.0);
  for (int i = 0; i < n; ++i) gsq[i] = f.grad_sqrt_rho[i] * f.grad_sqrt_rho[i];
  StaticBoundReport rep;
  rep.lhs_field = spectral::gradient_real(gsq, g);
  rep.rhs_field.assign(n, 0.0);

  double norm_dpsi_sq = 0.0, norm_d2psi_sq = 0.0;
  rep.min_margin = std::numeric_limits<double>::infinity();
  bool any = false;
  for (int i = 0; i < n; ++i) {
    const double ad1 = std::abs(dpsi[i]);
    const double ad2 = std::abs(d2psi[i]);
    norm_dpsi_sq += ad1 * ad1;
    norm_d2psi_sq += ad2 * ad2;
    if (f.mask[i]) continue;
    any = true;
    const double im_ratio = std::abs(f.u[i]) / eps;  // |Im(psi'/psi)| = |u|/eps
    rep.rhs_field[i] = 2.0 * ad2 * ad1 + im_ratio * ad1 * ad1;
    const double lhs = std::abs(rep.lhs_field[i]);
    rep.lhs_max = std::max(rep.lhs_max, lhs);
    rep.min_margin = std::min(rep.min_margin, rep.rhs_field[i] - lhs);
  }
  if (!any) throw NumericalError("static_bound: all nodes masked");
  norm_dpsi_sq *= g.cell_volume();
  norm_d2psi_sq *= g.cell_volume();

  const double scale = std::max({std::abs(rep.lhs_max), 1.0});
  rep.pointwise_ok = rep.min_margin > -tol * scale;

  // integral of |lhs * phi(x, u)| over unmasked nodes
  double integral = 0.0;
  for (int i = 0; i < n; ++i) {
    if (f.mask[i]) continue;
    integral += std::abs(rep.lhs_field[i] * phi(g.node(i), f.u[i]));
  }
  rep.integral_lhs = integral * g.cell_volume();

  // sup_xi |xi sigma(xi)| by fine scan of the sigma profile
  const BumpProfile& sigma = phi.sigma();
  double sup_xsig = 0.0;
  {
    const int m = 1 << 12;
    const double lo = sigma.support_lo(), hi = sigma.support_hi();
    for (int i = 0; i <= m; ++i) {
      const double p = lo + (hi - lo) * i / m;
      sup_xsig = std::max(sup_xsig, std::abs(p * sigma.value(p)));
    }
  }
  const double sup_chi = phi.chi().sup_value() * phi.scale();
  const double sup_phi = sup_chi * sigma.sup_value();
  sup_xsig *= sup_chi;

  rep.M_eps = (1.0 / eps) * sup_xsig * norm_dpsi_sq +
              2.0 * sup_phi * std::sqrt(norm_dpsi_sq * norm_d2psi_sq);
  rep.integral_ok = rep.integral_lhs <= rep.M_eps * (1.0 + 1e-8) + tol;
  return rep;
}

}  // namespace bohmlab
