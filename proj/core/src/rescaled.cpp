#include "bohmlab/rescaled.hpp"

#include <cmath>

#include "bohmlab/errors.hpp"
#include "bohmlab/interpolant.hpp"

namespace bohmlab {

RescaledEnsemble rescaled_trajectories(const Timeline& tl, const std::function<cplx(double)>& a,
                                       double x0, double y_half_width, int n_seeds,
                                       const TrajectoryOptions& opt, double alpha) {
  if (n_seeds < 2) throw ConfigError("rescaled_trajectories: need at least 2 seeds");
  const double sq = std::pow(tl.epsilon, alpha);
  RescaledEnsemble out;
  out.epsilon = tl.epsilon;
  out.x0 = x0;
  out.dy = 2.0 * y_half_width / n_seeds;
  std::vector<double> seeds(n_seeds), weights(n_seeds);
  for (int i = 0; i < n_seeds; ++i) {
    const double y = -y_half_width + (i + 0.5) * out.dy;
    out.y.push_back(y);
    seeds[i] = x0 + sq * y;
    weights[i] = std::norm(a(y)) * out.dy;
  }
  out.weights = weights;
  TrajectoryEnsemble ens = integrate_kinematic(tl, seeds, weights, opt);
  out.times = std::move(ens.times);
  out.Y = std::move(ens.X);
  out.Z = std::move(ens.P);
  out.flagged = std::move(ens.flagged);
  return out;
}

PushforwardCheck pushforward_identity(const RescaledEnsemble& ens, const Timeline& tl,
                                      std::size_t k, const PhaseSpaceTest& phi) {
  if (k >= ens.times.size()) throw InternalError("pushforward_identity: bad time index");
  // recover the seed scale from the stored lattice (supports any alpha)
  const double sq = (ens.Y[0][1] - ens.Y[0][0]) / (ens.y[1] - ens.y[0]);
  PeriodicInterpolant rho0(density(tl.state(0)), tl.grid, 4);
  PushforwardCheck c{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < ens.y.size(); ++i) {
    if (ens.flagged[i]) continue;
    const double f = phi(ens.Y[k][i], ens.Z[k][i]);
    c.via_y += ens.weights[i] * f;
    c.via_x += rho0(ens.x0 + sq * ens.y[i]) * (sq * ens.dy) * f;
  }
  c.gap = std::abs(c.via_x - c.via_y);
  return c;
}

double bad_set_measure(const RescaledEnsemble& ens, const ClassicalTrajectory& traj, double delta,
                       const OmegaBox& omega) {
  double measure = 0.0;
  std::size_t nt = 0;
  for (std::size_t k = 0; k < ens.times.size(); ++k) {
    const double t = ens.times[k];
    if (t < omega.t0 - 1e-12 || t > omega.t1 + 1e-12) continue;
    ++nt;
    const double X = traj.x_at(t), P = traj.p_at(t);
    for (std::size_t i = 0; i < ens.y.size(); ++i) {
      if (ens.y[i] < omega.y_lo || ens.y[i] > omega.y_hi) continue;
      const double dxv = ens.Y[k][i] - X;
      const double dpv = ens.Z[k][i] - P;
      const bool bad = ens.flagged[i] || std::hypot(dxv, dpv) >= delta;
      if (bad) measure += 1.0;
    }
  }
  if (nt == 0) throw NumericalError("bad_set_measure: omega box covers no stored times");
  const double dt_cell = (omega.t1 - omega.t0) / nt;
  return measure * dt_cell * ens.dy;
}

double good_set_probability(const TrajectoryEnsemble& ens, const ClassicalTrajectory& traj,
                            double R, double T) {
  const double bound = R * std::sqrt(ens.epsilon);
  double good = 0.0, total = 0.0;
  for (std::size_t i = 0; i < ens.n_atoms(); ++i) {
    total += ens.weights[i];
    if (ens.flagged[i]) continue;
    bool ok = true;
    for (std::size_t k = 0; k < ens.times.size() && ok; ++k) {
      if (ens.times[k] > T + 1e-12) break;
      ok = std::abs(ens.X[k][i] - traj.x_at(ens.times[k])) <= bound;
    }
    if (ok) good += ens.weights[i];
  }
  if (!(total > 0.0)) throw NumericalError("good_set_probability: zero total weight");
  return good / total;
}

double YoungHistogram::cell_fraction_above(double threshold) const {
  if (cells.empty()) return 0.0;
  std::size_t n = 0;
  for (const YoungCell& c : cells)
    if (c.score >= threshold) ++n;
  return static_cast<double>(n) / cells.size();
}

YoungHistogram young_histogram(const RescaledEnsemble& ens, const ClassicalTrajectory& traj,
                               int t_cells, int y_cells, double delta, const OmegaBox& omega) {
  if (t_cells < 1 || y_cells < 1) throw ConfigError("young_histogram: need >= 1 cell per axis");
  YoungHistogram h;
  const double dt_cell = (omega.t1 - omega.t0) / t_cells;
  const double dy_cell = (omega.y_hi - omega.y_lo) / y_cells;
  std::vector<int> in(t_cells * y_cells, 0), tot(t_cells * y_cells, 0);

  for (std::size_t k = 0; k < ens.times.size(); ++k) {
    const double t = ens.times[k];
    if (t < omega.t0 - 1e-12 || t > omega.t1 + 1e-12) continue;
    int tc = static_cast<int>((t - omega.t0) / dt_cell);
    tc = std::min(tc, t_cells - 1);
    const double X = traj.x_at(t), P = traj.p_at(t);
    for (std::size_t i = 0; i < ens.y.size(); ++i) {
      if (ens.y[i] < omega.y_lo || ens.y[i] > omega.y_hi) continue;
      int yc = static_cast<int>((ens.y[i] - omega.y_lo) / dy_cell);
      yc = std::min(yc, y_cells - 1);
      const int c = tc * y_cells + yc;
      ++tot[c];
      if (!ens.flagged[i] &&
          std::hypot(ens.Y[k][i] - X, ens.Z[k][i] - P) <= delta)
        ++in[c];
    }
  }

  double score_sum = 0.0;
  int filled = 0;
  for (int tc = 0; tc < t_cells; ++tc)
    for (int yc = 0; yc < y_cells; ++yc) {
      const int c = tc * y_cells + yc;
      if (tot[c] == 0) continue;
      YoungCell cell{omega.t0 + tc * dt_cell,       omega.t0 + (tc + 1) * dt_cell,
                     omega.y_lo + yc * dy_cell,     omega.y_lo + (yc + 1) * dy_cell,
                     static_cast<double>(in[c]) / tot[c], tot[c]};
      h.min_score = std::min(h.min_score, cell.score);
      score_sum += cell.score;
      ++filled;
      h.cells.push_back(cell);
    }
  if (filled == 0) throw NumericalError("young_histogram: omega box covers no samples");
  h.mean_score = score_sum / filled;
  return h;
}

}  // namespace bohmlab
