#include "bohmlab/envelope.hpp"

#include <cmath>

#include "bohmlab/errors.hpp"
#include "bohmlab/fft.hpp"
#include "bohmlab/spectral.hpp"

namespace bohmlab {

Envelope envelope_solve(const std::function<cplx(double)>& a, const ClassicalTrajectory& traj,
                        const Potential& V, const EnvelopeConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw ConfigError("envelope_solve: dt must be positive");
  Grid ygrid(AxisSpec{-cfg.y_half_width, cfg.y_half_width, cfg.ny});
  const int n = cfg.ny;

  Envelope env{ygrid, cfg.dt * cfg.store_every, {}, {}, 0.0};

  CField v(n);
  for (int i = 0; i < n; ++i) v[i] = a(ygrid.node(i));
  {
    double m = 0.0;
    for (const cplx& c : v) m += std::norm(c);
    env.norm_a = std::sqrt(m * ygrid.cell_volume());
  }

  const long n_steps = std::lround(traj.T() / cfg.dt);
  CField half_kin(n);
  for (int k = 0; k < n; ++k) {
    const double kk = ygrid.wavenumber(k);
    half_kin[k] = std::polar(1.0, -0.25 * kk * kk * cfg.dt);
  }
  Fft& fft = fft_for_size(n);

  env.times.push_back(0.0);
  env.frames.push_back(v);

  for (long s = 0; s < n_steps; ++s) {
    const double t_mid = (s + 0.5) * cfg.dt;
    const double Q = V.hess(traj.x_at(std::min(t_mid, traj.T())));
    fft.forward(v);
    for (int k = 0; k < n; ++k) v[k] *= half_kin[k];
    fft.inverse(v);
    for (int i = 0; i < n; ++i) {
      const double y = ygrid.node(i);
      v[i] *= std::polar(1.0, -0.5 * Q * y * y * cfg.dt);
    }
    fft.forward(v);
    for (int k = 0; k < n; ++k) v[k] *= half_kin[k];
    fft.inverse(v);
    if ((s + 1) % cfg.store_every == 0 || s + 1 == n_steps) {
      double m = 0.0;
      for (const cplx& c : v) m += std::norm(c);
      if (!std::isfinite(m)) throw NumericalError("envelope_solve: instability");
      env.times.push_back((s + 1) * cfg.dt);
      env.frames.push_back(v);
    }
  }
  return env;
}

EnvelopeBounds envelope_bounds(const Envelope& env, std::size_t frame) {
  const CField& v = env.frames.at(frame);
  const Grid& g = env.ygrid;
  double ym = 0.0;
  for (int i = 0; i < g.n(0); ++i) {
    const double y = g.node(i);
    ym += y * y * std::norm(v[i]);
  }
  ym = std::sqrt(ym * g.cell_volume());
  const CField dv = spectral::gradient(v, g);
  double gn = 0.0;
  for (const cplx& c : dv) gn += std::norm(c);
  gn = std::sqrt(gn * g.cell_volume());
  return EnvelopeBounds{ym, gn};
}

}  // namespace bohmlab
