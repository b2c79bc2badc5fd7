#include "bohmlab/wavepacket.hpp"

#include <cmath>

#include "bohmlab/errors.hpp"
#include "bohmlab/hydrodynamics.hpp"
#include "bohmlab/interpolant.hpp"
#include "bohmlab/spectral.hpp"
#include "bohmlab/wigner.hpp"

namespace bohmlab {

WaveFunction assemble_packet(const Envelope& env, std::size_t frame,
                             const ClassicalTrajectory& traj, double eps, const Grid& xgrid) {
  const CField& v = env.frames.at(frame);
  const Grid& yg = env.ygrid;
  const double y_max = yg.x_max(0);

  // support guards: negligible envelope mass near the y-box edge, and the
  // effective support (mass outside below 1e-10) must map inside the x box
  double edge = 0.0, total = 0.0;
  for (int i = 0; i < yg.n(0); ++i) {
    const double m = std::norm(v[i]);
    total += m;
    if (std::abs(yg.node(i)) > 0.8 * y_max) edge += m;
  }
  if (edge > 1e-10 * total)
    throw NumericalError("assemble_packet: envelope reaches the y-box edge");
  double y_eff = 0.0, tail = 0.0;
  for (int i = 0; i < yg.n(0) / 2 && tail <= 1e-10 * total; ++i) {
    tail += std::norm(v[i]) + std::norm(v[yg.n(0) - 1 - i]);
    y_eff = std::abs(yg.node(i));
  }

  const double t = env.times.at(frame);
  const double X = traj.x_at(t), P = traj.p_at(t), S = traj.s_at(t);
  const double sq = std::sqrt(eps);
  if (X - sq * y_eff < xgrid.x_min(0) + 0.05 * xgrid.length(0) ||
      X + sq * y_eff > xgrid.x_max(0) - 0.05 * xgrid.length(0))
    throw NumericalError("assemble_packet: packet support violates the x box");

  PeriodicInterpolantC vi(v, yg, 8);
  CField out(xgrid.size(), cplx(0.0, 0.0));
  const double amp = std::pow(eps, -0.25);
  for (int i = 0; i < xgrid.n(0); ++i) {
    const double x = xgrid.node(i);
    const double y = (x - X) / sq;
    if (std::abs(y) >= y_max) continue;  // Schwartz tail
    out[i] = amp * vi(y) * std::polar(1.0, (P * (x - X) + S) / eps);
  }
  return WaveFunction(xgrid, std::move(out), eps);
}

std::vector<std::pair<double, double>> packet_error(const Timeline& exact, const Envelope& env,
                                                    const ClassicalTrajectory& traj) {
  std::vector<std::pair<double, double>> errs;
  std::size_t ef = 0;
  for (std::size_t k = 0; k < exact.frames.size(); ++k) {
    const double t = exact.frames[k].t;
    while (ef + 1 < env.times.size() && env.times[ef] < t - 1e-12) ++ef;
    if (std::abs(env.times[ef] - t) > 1e-9 * std::max(1.0, std::abs(t))) continue;
    const WaveFunction packet = assemble_packet(env, ef, traj, exact.epsilon, exact.grid);
    double e = 0.0;
    for (std::size_t i = 0; i < packet.values.size(); ++i)
      e += std::norm(exact.frames[k].values[i] - packet.values[i]);
    errs.push_back({t, std::sqrt(e * exact.grid.cell_volume())});
  }
  if (errs.empty()) throw NumericalError("packet_error: no common frame times");
  return errs;
}

PacketPairingGap packet_limit_pairing(const WaveFunction& psi, double X, double P,
                                      const PhaseSpaceTest& phi, double norm_a_sq,
                                      double node_eta) {
  PacketPairingGap g{};
  const HydroFields f = extract_fields(psi, node_eta);
  g.beta_pair = bohmian_measure(f).pair(phi);
  const WignerAnalysis wa = wigner_analyze(psi, Dictionary{phi});
  g.wigner_pair = wa.pairings.at(0);
  g.target = norm_a_sq * phi(X, P);
  g.beta_gap = std::abs(g.beta_pair - g.target);
  g.wigner_gap = std::abs(g.wigner_pair - g.target);
  return g;
}

TransformedState to_packet_frame(const WaveFunction& psi, double X, double P, double S,
                                 const Grid& ygrid) {
  const Grid& xg = psi.grid;
  const double eps = psi.epsilon;
  const double sq = std::sqrt(eps);

  // demodulate on the x nodes (exact there), leaving a field smooth on the
  // sqrt(eps) scale which interpolates cleanly
  CField demod(xg.size());
  for (int i = 0; i < xg.n(0); ++i) {
    const double x = xg.node(i);
    demod[i] = psi.values[i] * std::polar(1.0, -(P * (x - X) + S) / eps);
  }
  PeriodicInterpolantC di(demod, xg, 8);

  TransformedState ts{ygrid, CField(ygrid.size())};
  const double amp = std::pow(eps, 0.25);
  for (int i = 0; i < ygrid.n(0); ++i) {
    const double y = ygrid.node(i);
    ts.v[i] = amp * di(X + sq * y);
  }
  return ts;
}

EnvelopeBounds packet_frame_bounds(const TransformedState& ts) {
  const Grid& g = ts.ygrid;
  double ym = 0.0;
  for (int i = 0; i < g.n(0); ++i) {
    const double y = g.node(i);
    ym += y * y * std::norm(ts.v[i]);
  }
  ym = std::sqrt(ym * g.cell_volume());
  const CField dv = spectral::gradient(ts.v, g);
  double gn = 0.0;
  for (const cplx& c : dv) gn += std::norm(c);
  gn = std::sqrt(gn * g.cell_volume());
  return EnvelopeBounds{ym, gn};
}

}  // namespace bohmlab
