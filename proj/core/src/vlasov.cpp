#include "bohmlab/vlasov.hpp"

#include <cmath>
#include <vector>

#include "bohmlab/errors.hpp"

namespace bohmlab {

namespace {

// Composite Simpson weights on a uniform grid of `m` points (m >= 3); when
// the interval count is odd the last three intervals use the 3/8 rule.
std::vector<double> simpson_weights(std::size_t m, double h) {
  std::vector<double> w(m, 0.0);
  if (m < 3) throw NumericalError("vlasov: need at least 3 frames for time quadrature");
  const std::size_t intervals = m - 1;
  std::size_t even_end = (intervals % 2 == 0) ? intervals : intervals - 3;
  for (std::size_t i = 0; i + 2 <= even_end; i += 2) {
    w[i] += h / 3.0;
    w[i + 1] += 4.0 * h / 3.0;
    w[i + 2] += h / 3.0;
  }
  if (intervals % 2 != 0) {
    const std::size_t s = even_end;
    w[s] += 3.0 * h / 8.0;
    w[s + 1] += 9.0 * h / 8.0;
    w[s + 2] += 9.0 * h / 8.0;
    w[s + 3] += 3.0 * h / 8.0;
  }
  return w;
}

}  // namespace

double vlasov_weak_residual(const Timeline& tl, const Potential& V, const VlasovTest& test,
                            double node_eta) {
  if (tl.frames.size() < 3) throw NumericalError("vlasov_weak_residual: need >= 3 frames");
  const Grid& g = tl.grid;
  const int n = g.n(0);
  const double dv = g.cell_volume();

  // support checks: chi inside the box, tau inside [0, t_end]
  if (test.chi.support_lo() < g.x_min(0) || test.chi.support_hi() > g.x_max(0))
    throw ConfigError("vlasov_weak_residual: chi support exceeds the box");
  if (test.tau.support_hi() > tl.t_end() + 1e-12)
    throw ConfigError("vlasov_weak_residual: tau support exceeds the timeline");

  const Field vgrad = V.sample_grad(g);
  const std::vector<double> wt = simpson_weights(tl.frames.size(), tl.frame_dt);

  double acc = 0.0;
  for (std::size_t k = 0; k < tl.frames.size(); ++k) {
    const double t = tl.frames[k].t;
    const double tauv = test.tau.value(t);
    const double taud = test.tau.deriv(t);
    if (wt[k] == 0.0 || (tauv == 0.0 && taud == 0.0)) continue;
    const HydroFields f = extract_fields(tl.state(k), node_eta);
    double gk = 0.0;
    for (int i = 0; i < n; ++i) {
      if (f.mask[i]) continue;
      const double x = g.node(i);
      const double chi = test.chi.value(x);
      const double dchi = test.chi.deriv(x);
      if (chi == 0.0 && dchi == 0.0) continue;
      const double u = f.u[i];
      const double sig = test.sigma.value(u);
      const double dsig = test.sigma.deriv(u);
      double term = sig * (taud * chi + tauv * u * dchi);
      term -= tauv * chi * (vgrad[i] + f.dV_B[i]) * dsig;
      gk += f.rho[i] * term;
    }
    acc += wt[k] * gk * dv;
  }

  // initial-data term
  const double tau0 = test.tau.value(0.0);
  if (tau0 != 0.0) {
    const HydroFields f0 = extract_fields(tl.state(0), node_eta);
    double b = 0.0;
    for (int i = 0; i < n; ++i) {
      if (f0.mask[i]) continue;
      b += f0.rho[i] * test.chi.value(g.node(i)) * test.sigma.value(f0.u[i]);
    }
    acc += tau0 * b * dv;
  }
  return std::abs(acc);
}

}  // namespace bohmlab
