#include "bohmlab/cone.hpp"

#include <cmath>
#include <numbers>

#include "bohmlab/errors.hpp"
#include "bohmlab/hydrodynamics.hpp"
#include "bohmlab/wigner.hpp"

namespace bohmlab {

ConeSpec ConeSpec::gaussian(double s0) {
  ConeSpec spec;
  spec.rho_prof = [](double r) { return std::exp(-r * r) / std::sqrt(std::numbers::pi); };
  spec.s0 = s0;
  return spec;
}

double cone_phase(const ConeSpec& spec, double x, double delta0) {
  return spec.s0 * (std::sqrt(x * x + delta0 * delta0) - delta0);
}

double cone_phase_grad(const ConeSpec& spec, double x, double delta0) {
  return spec.s0 * x / std::sqrt(x * x + delta0 * delta0);
}

WaveFunction build_cone_state(const ConeSpec& spec, const Grid& grid, double eps) {
  if (grid.dim() != 1) throw InternalError("build_cone_state: d=1 only");
  const double sq = std::sqrt(eps);
  const double delta0 = (spec.delta0 > 0.0) ? spec.delta0 : 2.0 * grid.dx(0);
  // support guard: the sqrt(eps)-profile must fit well inside the box
  const double half = 0.5 * grid.length(0);
  if (10.0 * sq > 0.8 * half)
    throw NumericalError("build_cone_state: sqrt(eps) support violates the box");
  CField v(grid.size());
  const double amp = std::pow(eps, -0.25);
  for (int i = 0; i < grid.n(0); ++i) {
    const double x = grid.node(i);
    const double prof = spec.rho_prof(std::abs(x) / sq);
    v[i] = amp * std::sqrt(std::max(prof, 0.0)) *
           std::polar(1.0, cone_phase(spec, x, delta0) / eps);
  }
  return WaveFunction(grid, std::move(v), eps);
}

ConeLimitReport cone_limit_pairing(const ConeSpec& spec, const PhaseSpaceTest& phi,
                                   std::span<const double> eps_list,
                                   const std::function<Grid(double)>& grid_for_eps,
                                   double node_eta) {
  ConeLimitReport rep;
  // profile line integral by fine Simpson over [-R, R]
  double prof_mass = 0.0;
  {
    const int m = 1 << 15;
    const double R = 16.0, h = 2.0 * R / m;
    for (int i = 0; i <= m; ++i) {
      const double r = -R + i * h;
      const double w = (i == 0 || i == m) ? 1.0 : ((i % 2) ? 4.0 : 2.0);
      prof_mass += w * spec.rho_prof(std::abs(r));
    }
    prof_mass *= h / 3.0;
  }
  rep.limit = prof_mass * 0.5 * (phi(0.0, spec.s0) + phi(0.0, -spec.s0));

  std::vector<double> eps(eps_list.begin(), eps_list.end());
  std::vector<double> betas, wigs;
  for (double e : eps) {
    const Grid grid = grid_for_eps(e);
    const WaveFunction psi = build_cone_state(spec, grid, e);
    const HydroFields f = extract_fields(psi, node_eta);
    const double beta = bohmian_measure(f).pair(phi);
    const WignerAnalysis wa = wigner_analyze(psi, Dictionary{phi});
    rep.pairs.push_back({e, beta, wa.pairings[0]});
    betas.push_back(beta);
    wigs.push_back(wa.pairings[0]);
  }
  rep.beta_fit = fit_rate(eps, betas);
  rep.wigner_fit = fit_rate(eps, wigs);
  rep.beta_gap_at_min_eps = std::abs(betas.back() - rep.limit);
  rep.wigner_gap_at_min_eps = std::abs(wigs.back() - rep.limit);
  rep.mutual_gap_at_min_eps = std::abs(betas.back() - wigs.back());
  return rep;
}

}  // namespace bohmlab
