#pragma once

#include <utility>
#include <vector>

#include "bohmlab/classical_flow.hpp"
#include "bohmlab/envelope.hpp"
#include "bohmlab/phase_measure.hpp"
#include "bohmlab/propagator.hpp"

namespace bohmlab {

/// Samples the coherent ansatz
///   u(x) = eps^{-1/4} v(t, (x - X)/sqrt(eps)) e^{i(P (x - X) + S)/eps}
/// on the x-grid at stored envelope frame `frame`.  The envelope is
/// evaluated by trigonometric interpolation and cut to its y box (Schwartz
/// decay makes the truncation negligible); throws NumericalError if the
/// envelope carries visible mass near the y-box edge or the packet leaves
/// the core of the x box (support violation).
WaveFunction assemble_packet(const Envelope& env, std::size_t frame,
                             const ClassicalTrajectory& traj, double eps, const Grid& xgrid);

/// L2 errors ||psi_exact(t_k) - u(t_k)|| over the common frame times.
std::vector<std::pair<double, double>> packet_error(const Timeline& exact, const Envelope& env,
                                                    const ClassicalTrajectory& traj);

/// |<beta^eps(t), phi> - ||a||^2 phi(X(t), P(t))| and the Wigner analogue.
struct PacketPairingGap {
  double beta_pair, wigner_pair, target;
  double beta_gap, wigner_gap;
};
PacketPairingGap packet_limit_pairing(const WaveFunction& psi, double X, double P,
                                      const PhaseSpaceTest& phi, double norm_a_sq,
                                      double node_eta = 1e-6);

/// Exact solution moved to the packet frame (the unitary transformation
/// psi -> v^eps): v^eps(y) = eps^{1/4} psi(X + sqrt(eps) y) e^{-i(P sqrt(eps) y + S)/eps},
/// demodulated at the grid nodes before interpolation.
struct TransformedState {
  Grid ygrid;
  CField v;
};
TransformedState to_packet_frame(const WaveFunction& psi, double X, double P, double S,
                                 const Grid& ygrid);

/// || |y| v || and ||d_y v|| of a transformed state (the a-priori bound
/// quantities of the packet analysis; eps-uniform for C3b potentials).
EnvelopeBounds packet_frame_bounds(const TransformedState& ts);

}  // namespace bohmlab
