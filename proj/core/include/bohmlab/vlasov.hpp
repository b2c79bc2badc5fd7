#pragma once

#include "bohmlab/hydrodynamics.hpp"
#include "bohmlab/potential.hpp"
#include "bohmlab/propagator.hpp"
#include "bohmlab/test_function.hpp"

namespace bohmlab {

/// Space-time-momentum test function chi(t, x) sigma(p) = tau(t) chi(x) sigma(p)
/// for the weak form of the Vlasov-type equation satisfied by the Bohmian
/// measure.  tau must be supported in [0, t_end(timeline)] (tau(0) != 0 is
/// allowed; the initial-data term is included); chi must be supported inside
/// the box.
struct VlasovTest {
  BumpProfile tau;    // time profile
  BumpProfile chi;    // space profile
  BumpProfile sigma;  // momentum profile
};

/// Absolute residual of
///   Int Int [ sigma(p)(d_t phi + p d_x phi) - phi d_x(V + V_B) sigma'(p) ] dbeta dt
///   + Int phi(0, x) sigma(u_0(x)) rho_0(x) dx,
/// assembled from frame-wise Bohmian atoms with composite Simpson in time.
double vlasov_weak_residual(const Timeline& tl, const Potential& V, const VlasovTest& test,
                            double node_eta = 1e-6);

}  // namespace bohmlab
