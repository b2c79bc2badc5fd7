#pragma once

#include <vector>

#include "bohmlab/potential.hpp"
#include "bohmlab/wavefunction.hpp"

namespace bohmlab {

struct PropagatorConfig {
  double dt = 0.0;
  long n_steps = 0;
  int store_every = 1;           // frame stride on the stored timeline
  double boundary_abort = 1e-4;  // abort threshold for mass outside the core box
  bool boundary_guard = true;    // off for intrinsically box-filling states
};

/// Recommended step for eps-oscillatory states: 0.5 * min(eps*dx, dx^2/eps).
double default_dt(const Grid& grid, double epsilon);

struct Frame {
  double t;
  CField values;
};

/// Uniformly spaced wavefunction history sharing one grid and epsilon.
struct Timeline {
  Grid grid;
  double epsilon;
  double frame_dt = 0.0;  // spacing of stored frames (= dt * store_every)
  std::vector<Frame> frames;

  Timeline(Grid g, double eps) : grid(std::move(g)), epsilon(eps) {}

  std::size_t size() const { return frames.size(); }
  double t_begin() const { return frames.front().t; }
  double t_end() const { return frames.back().t; }
  WaveFunction state(std::size_t k) const {
    return WaveFunction(grid, frames[k].values, epsilon);
  }
};

/// Strang kinetic-potential-kinetic split-step spectral propagator for
/// i*eps*d_t psi = -(eps^2/2) Lap psi + V psi.  Unitary in exact arithmetic,
/// second order in dt, spectral in space.
///
/// Throws NumericalError if the initial state is not normalized, if the
/// boundary-mass guard trips (domain escape), or if the state stops being
/// finite (instability).
Timeline propagate(const WaveFunction& psi0, const Potential& V, const PropagatorConfig& cfg);

double mass(const WaveFunction& psi);
double energy(const WaveFunction& psi, const Potential& V);

/// Kinetic part (eps^2/2)*||grad psi||^2 alone.
double kinetic_energy(const WaveFunction& psi);

}  // namespace bohmlab
