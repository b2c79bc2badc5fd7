#pragma once

#include <functional>

#include "bohmlab/classical_flow.hpp"
#include "bohmlab/phase_measure.hpp"
#include "bohmlab/trajectories.hpp"

namespace bohmlab {

/// Bohmian trajectories re-seeded on the sqrt(eps)-zoomed lattice
/// x = x0 + sqrt(eps) y, carrying |a(y)|^2 dy weights:
///   Y(t, y) = X^eps(t, x0 + sqrt(eps) y),  Z(t, y) = P^eps(t, ...).
struct RescaledEnsemble {
  double epsilon = 0.0;
  double x0 = 0.0;
  std::vector<double> y;        // seed lattice in y
  std::vector<double> weights;  // |a(y)|^2 * dy
  std::vector<double> times;
  std::vector<std::vector<double>> Y, Z;  // [time][seed]
  std::vector<std::uint8_t> flagged;
  double dy = 0.0;
};

/// `alpha` rescales the seed lattice as x = x0 + eps^alpha y; 1/2 is the
/// critical scaling the analysis rests on, other values are exploratory.
RescaledEnsemble rescaled_trajectories(const Timeline& tl, const std::function<cplx(double)>& a,
                                       double x0, double y_half_width, int n_seeds,
                                       const TrajectoryOptions& opt = {}, double alpha = 0.5);

/// Change-of-variables identity: the pairing of beta^eps(t) against phi
/// computed through x seeds with rho_0 dx weights must equal the y-seed
/// route with |a|^2 dy weights.
struct PushforwardCheck {
  double via_x, via_y, gap;
};
PushforwardCheck pushforward_identity(const RescaledEnsemble& ens, const Timeline& tl,
                                      std::size_t time_index, const PhaseSpaceTest& phi);

struct OmegaBox {
  double t0, t1, y_lo, y_hi;
  double volume() const { return (t1 - t0) * (y_hi - y_lo); }
};

/// Cell-counting Lebesgue measure of
///   { (t, y) in Omega : |(Y, Z) - (X, P)| >= delta }.
double bad_set_measure(const RescaledEnsemble& ens, const ClassicalTrajectory& traj, double delta,
                       const OmegaBox& omega);

/// Weighted rho_0-probability of
///   { x0 : max_{t in [0, T]} |X^eps(t, x0) - X(t)| <= R sqrt(eps) }.
/// Flagged atoms count as bad.
double good_set_probability(const TrajectoryEnsemble& ens, const ClassicalTrajectory& traj,
                            double R, double T);

/// Per-(t, y)-cell concentration of the empirical Young measure: the
/// fraction of sample points within radius delta of (X(t), P(t)).
struct YoungCell {
  double t_lo, t_hi, y_lo, y_hi;
  double score;
  int points;
};
struct YoungHistogram {
  std::vector<YoungCell> cells;
  double min_score = 1.0;
  double mean_score = 1.0;
  double cell_fraction_above(double threshold) const;
};
YoungHistogram young_histogram(const RescaledEnsemble& ens, const ClassicalTrajectory& traj,
                               int t_cells, int y_cells, double delta, const OmegaBox& omega);

}  // namespace bohmlab
