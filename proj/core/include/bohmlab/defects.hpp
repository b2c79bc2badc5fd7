#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bohmlab/hydrodynamics.hpp"
#include "bohmlab/phase_measure.hpp"
#include "bohmlab/propagator.hpp"
#include "bohmlab/ratefit.hpp"
#include "bohmlab/test_function.hpp"
#include "bohmlab/wigner.hpp"

namespace bohmlab {

/// eps^2 * (d sqrt(rho)) (x) (d sqrt(rho)) as a field (d=1 scalar); zero on
/// masked nodes.  Its weak limit is the defect tensor A.
Field defect_A_field(const HydroFields& fields);

/// Temperature tensor T = (Int (p-u)^2 w dp) / rho of a full Wigner field,
/// masked where the zeroth moment is below eta * max.
Field temperature_tensor(const WignerField& w, double eta = 1e-6);

struct DefectOptions {
  double node_eta = 1e-6;
  double p_cutoff = 3.0;        // sigma_cut = 1 on |p| <= p_cutoff, 0 beyond 2x
  int bins = 32;                // x-bins across the bump support (B defect)
  double time_halfwidth = 0.0;  // half width of the time localization bump
  Dictionary dictionary;        // dictionary for the beta-vs-wigner limit comparison
  int workers = 1;              // parallelism across eps instances
};

/// Raw pairings of one scenario instance at one eps, time-localized around
/// t_star.  All "normalized" entries are divided by <rho^eps, chi> so that
/// they read as mass-weighted local averages.
struct DefectSample {
  double eps = 0.0;
  double rho_chi = 0.0;      // <rho, chi> (the normalizer)
  double A = 0.0;            // <eps^2 (d sqrt rho)^2, chi> / <rho, chi>
  double j2_rho = 0.0;       // <J^2/rho, chi> / <rho, chi>
  double beta_m2_cut = 0.0;  // <beta, p^2 sigma_cut chi> / <rho, chi>
  double rhoT = 0.0;         // <m2w - m1w^2/m0w, chi> / <rho, chi>
  std::vector<double> bin_m0, bin_m1, bin_m2;  // cutoff beta moments per bin
  double route1_A_dchi = 0.0;       // <eps^2 (d sqrt rho)^2, chi'>
  double route1_j2_dchi = 0.0;      // <J^2/rho, chi'>
  double route1_beta_cut_dchi = 0.0;
  double route2_force = 0.0;        // <-rho dV_B, chi> via the weak flux form
  std::vector<double> beta_dict, wigner_dict;  // dictionary pairings
};

std::vector<DefectSample> defect_samples(const Timeline& tl, double t_star,
                                         const std::vector<BumpProfile>& bumps,
                                         const DefectOptions& opt);

/// Per-bump cross-eps assembly of the defect tensors (d=1):
///   A   = lim eps^2 (d sqrt rho)^2
///   C   = lim J^2/rho - (second moment of the limit measure)
///   B   = Cauchy-Schwarz gap of the limit measure's binned moments
///   rhoT= lim (m2w - m1w^2/m0w)
/// and the residual of the identity rho T = A + rho B + C.
struct DefectSweepResult {
  std::string bump_id;
  std::vector<double> eps;
  std::vector<double> A, j2_rho, beta_m2_cut, rhoT;
  RateFit A_fit, rhoT_fit, j2_rho_fit, beta_m2_cut_fit;
  double C = 0.0;
  double B = 0.0;
  double teq_residual = 0.0;
  bool positivity_ok = false;
  double first_moment_route_div = 0.0;  // lim <A + C, chi'>
  double first_moment_route_force = 0.0;  // lim <-rho dV_B, chi>
  double first_moment_gap = 0.0;
  bool converged = false;
};

/// Extrapolated dictionary pairings of beta^eps vs w^eps: when the wigner
/// limit is mono-kinetic the two limits must coincide.
struct MeasureLimitComparison {
  std::vector<std::string> ids;
  std::vector<RateFit> beta_fits, wigner_fits;
  double max_gap = 0.0;
  bool converged = false;
};

using InstanceFactory = std::function<Timeline(double eps)>;

struct DefectReport {
  std::vector<double> eps;
  std::vector<DefectSweepResult> per_bump;
  MeasureLimitComparison measures;
};

DefectReport defect_sweep(const InstanceFactory& factory, std::span<const double> eps_list,
                          double t_star, const std::vector<BumpProfile>& bumps,
                          const DefectOptions& opt);

}  // namespace bohmlab
