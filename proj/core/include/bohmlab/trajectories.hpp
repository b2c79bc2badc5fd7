#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bohmlab/interpolant.hpp"
#include "bohmlab/potential.hpp"
#include "bohmlab/propagator.hpp"

namespace bohmlab {

struct TrajectoryOptions {
  double node_eta = 1e-6;  // node floor relative to max rho(t)
  int substeps = 1;        // integrator substeps per frame interval
  int refine = 8;          // spatial spectral-refinement factor
};

/// Bohmian phase-space paths (X_i(t_k), P_i(t_k)) with quadrature weights.
/// Atoms that enter the node mask are flagged, frozen and excluded from
/// statistics; their total weight is reported.
struct TrajectoryEnsemble {
  double epsilon = 0.0;
  std::vector<double> seeds;    // X_i(0)
  std::vector<double> weights;  // rho_0(x_i) * seed spacing
  std::vector<double> times;    // stored times (frame grid)
  std::vector<std::vector<double>> X;  // [time][atom]
  std::vector<std::vector<double>> P;
  std::vector<std::uint8_t> flagged;

  double total_weight() const;
  double excluded_mass() const;
  std::size_t n_atoms() const { return seeds.size(); }
};

/// Deterministic quadrature seeds: the grid lattice refined by `refine`
/// (refine=2 doubles the seed count).
std::vector<double> lattice_seeds(const Grid& grid, int refine = 1);

/// Weights rho_0(x_i) * h from the first frame of the timeline (h = seed
/// spacing), evaluated by trigonometric interpolation.
std::vector<double> seed_weights(const Timeline& tl, std::span<const double> seeds);

/// Kinematic form dX/dt = u(t, X), RK4 over the frame grid with spectral
/// interpolation in x and cubic interpolation in t; P is recorded as
/// u(t, X(t)).
TrajectoryEnsemble integrate_kinematic(const Timeline& tl, std::span<const double> seeds,
                                       std::span<const double> weights,
                                       const TrajectoryOptions& opt = {});

/// Dynamic form dX/dt = P, dP/dt = -V'(X) - d_x V_B(t, X) via velocity
/// Verlet, with P(0) = u(0, X(0)) (seeding on the initial velocity graph).
TrajectoryEnsemble integrate_dynamic(const Timeline& tl, const Potential& V,
                                     std::span<const double> seeds,
                                     std::span<const double> weights,
                                     const TrajectoryOptions& opt = {});

struct EquivarianceResult {
  double w1;        // 1-Wasserstein distance (sorted-CDF formula, d=1)
  double hist_l1;   // L1 distance of the cell histogram vs rho(t)
  double excluded_mass;
};

/// Compares the push-forward of rho_0 under the trajectory map at time t
/// against rho(t, .) from the timeline.  t must lie on the stored time grid.
EquivarianceResult equivariance_check(const TrajectoryEnsemble& ens, const Timeline& tl, double t);

}  // namespace bohmlab
