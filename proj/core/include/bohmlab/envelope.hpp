#pragma once

#include <functional>
#include <vector>

#include "bohmlab/classical_flow.hpp"
#include "bohmlab/grid.hpp"

namespace bohmlab {

/// Envelope v(t, y) of the semiclassical packet: solution of the
/// eps-independent Schrödinger equation
///   i d_t v = -(1/2) Lap_y v + (1/2) Q(t) y^2 v,  v(0) = a,
/// with Q(t) = V''(X(t)) frozen at the step midpoint inside the splitting.
/// The L2 norm of v is conserved exactly by the scheme.
struct Envelope {
  Grid ygrid;
  double frame_dt = 0.0;
  std::vector<double> times;
  std::vector<CField> frames;  // v at stored times
  double norm_a = 0.0;         // ||a||_L2

  const CField& at(std::size_t k) const { return frames[k]; }
};

struct EnvelopeConfig {
  double dt = 1e-3;
  int store_every = 1;
  double y_half_width = 12.0;  // y-grid is [-w, w)
  int ny = 1024;
};

Envelope envelope_solve(const std::function<cplx(double)>& a, const ClassicalTrajectory& traj,
                        const Potential& V, const EnvelopeConfig& cfg);

/// ||y v(t)|| and ||d_y v(t)|| at a stored frame (the a-priori bound
/// quantities; both are eps-independent here).
struct EnvelopeBounds {
  double y_moment;  // || |y| v ||_L2
  double grad_norm; // || d_y v ||_L2
};
EnvelopeBounds envelope_bounds(const Envelope& env, std::size_t frame);

}  // namespace bohmlab
