#include "bohmlab/propagator.hpp"

#include <algorithm>
#include <cmath>

#include "bohmlab/errors.hpp"
#include "bohmlab/fft.hpp"
#include "bohmlab/spectral.hpp"

namespace bohmlab {

double default_dt(const Grid& grid, double epsilon) {
  const double dx = grid.dx(0);
  return 0.5 * std::min(epsilon * dx, dx * dx / epsilon);
}

namespace {

void check_frame_health(const CField& values, const Grid& grid, double t, double abort_threshold,
                        bool guard) {
  double m = 0.0;
  for (const cplx& v : values) m += std::norm(v);
  m *= grid.cell_volume();
  if (!std::isfinite(m)) throw NumericalError("propagate: instability (non-finite state) at t=" +
                                              std::to_string(t));
  if (!guard) return;
  // boundary-mass guard over the outer 20% of the box
  const double margin = 0.1 * grid.length(0);
  const double lo = grid.x_min(0) + margin, hi = grid.x_max(0) - margin;
  double bm = 0.0;
  for (int i = 0; i < grid.n(0); ++i) {
    const double x = grid.node(i);
    if (x < lo || x > hi) bm += std::norm(values[i]);
  }
  bm *= grid.cell_volume();
  if (bm > abort_threshold)
    throw NumericalError("propagate: domain escape, boundary mass " + std::to_string(bm) +
                         " at t=" + std::to_string(t));
}

}  // namespace

Timeline propagate(const WaveFunction& psi0, const Potential& V, const PropagatorConfig& cfg) {
  if (psi0.grid.dim() != 1) throw InternalError("propagate: d=1 only");
  if (!(cfg.dt > 0.0)) throw ConfigError("propagate: dt must be positive");
  if (cfg.n_steps < 0) throw ConfigError("propagate: n_steps must be >= 0");
  if (cfg.store_every < 1) throw ConfigError("propagate: store_every must be >= 1");

  const double m0 = l2_norm_sq(psi0);
  if (std::abs(m0 - 1.0) > 1e-6)
    throw NumericalError("propagate: initial state not normalized (mass " + std::to_string(m0) +
                         ")");
  if (cfg.boundary_guard && boundary_mass(psi0) > 1e-8)
    throw NumericalError("propagate: initial boundary mass exceeds 1e-8");

  const Grid& grid = psi0.grid;
  const int n = grid.n(0);
  const double eps = psi0.epsilon;
  const double dt = cfg.dt;

  // Phase multipliers: kinetic exp(-i*eps*k^2*dt/4) per half step (the
  // kinetic symbol is eps^2 k^2/2 and the generator is H/eps), potential
  // exp(-i*V*dt/eps).
  CField half_kin(n), full_kin(n), pot_phase(n);
  for (int k = 0; k < n; ++k) {
    const double kk = grid.wavenumber(k);
    const double w = 0.25 * eps * kk * kk * dt;
    half_kin[k] = std::polar(1.0, -w);
    full_kin[k] = std::polar(1.0, -2.0 * w);
  }
  const Field vs = V.sample(grid);
  for (int i = 0; i < n; ++i) pot_phase[i] = std::polar(1.0, -vs[i] * dt / eps);

  Timeline tl(grid, eps);
  tl.frame_dt = dt * cfg.store_every;
  tl.frames.push_back({0.0, psi0.values});

  CField phi = psi0.values;
  Fft& fft = fft_for_size(n);

  long done = 0;
  while (done < cfg.n_steps) {
    const long block = std::min<long>(cfg.store_every, cfg.n_steps - done);
    fft.forward(phi);
    for (int k = 0; k < n; ++k) phi[k] *= half_kin[k];
    for (long s = 0; s < block; ++s) {
      fft.inverse(phi);
      for (int i = 0; i < n; ++i) phi[i] *= pot_phase[i];
      fft.forward(phi);
      const CField& kin = (s + 1 == block) ? half_kin : full_kin;
      for (int k = 0; k < n; ++k) phi[k] *= kin[k];
    }
    fft.inverse(phi);
    done += block;
    const double t = done * dt;
    check_frame_health(phi, grid, t, cfg.boundary_abort, cfg.boundary_guard);
    tl.frames.push_back({t, phi});
  }
  return tl;
}

double mass(const WaveFunction& psi) { return l2_norm_sq(psi); }

double kinetic_energy(const WaveFunction& psi) {
  const CField g = spectral::gradient(psi.values, psi.grid);
  double s = 0.0;
  for (const cplx& v : g) s += std::norm(v);
  return 0.5 * psi.epsilon * psi.epsilon * s * psi.grid.cell_volume();
}

double energy(const WaveFunction& psi, const Potential& V) {
  double pot = 0.0;
  for (int i = 0; i < psi.grid.n(0); ++i)
    pot += V.value(psi.grid.node(i)) * std::norm(psi.values[i]);
  pot *= psi.grid.cell_volume();
  const double e = kinetic_energy(psi) + pot;
  if (!std::isfinite(e)) throw NumericalError("energy: non-finite result");
  return e;
}

}  // namespace bohmlab
