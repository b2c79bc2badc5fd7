#pragma once

#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "bohmlab/config.hpp"
#include "bohmlab/cone.hpp"
#include "bohmlab/potential.hpp"
#include "bohmlab/propagator.hpp"
#include "bohmlab/wavefunction.hpp"

namespace bohmlab {

/// One fully resolved (scenario, eps) job: grid, initial state, time stepping.
struct ScenarioInstanceSpec {
  double epsilon;  // possibly snapped to a box-commensurate value
  Grid grid;
  double dt;
  double t_final;
  int store_every;
};

/// Wave-packet data for scenarios built from the coherent ansatz.
struct PacketParams {
  double x0, p0;
  std::function<cplx(double)> amplitude;  // a(y), Schwartz
  double norm_a_sq;                       // ||a||^2 (analytic)
};

/// Catalog entry.  Immutable; instances are resolved per (eps, config).
class Scenario {
 public:
  std::string id;
  std::string description;
  bool oscillatory = false;
  Potential potential = Potential::zero();
  std::vector<double> default_epsilon;
  std::vector<std::string> default_analyses;
  double defect_time = 0.0;   // time localization point for the defect pairings
  bool boundary_guard = true; // off for box-filling states (plane waves)

  /// Grid, (snapped) epsilon and stepping defaults for one eps, honoring
  /// config overrides for n / box / dt / t_final / store_every.
  ScenarioInstanceSpec instance(double eps, const ExperimentConfig& cfg) const;

  /// Initial wavefunction on the instance grid (normalized).
  WaveFunction initial_state(const ScenarioInstanceSpec& inst) const;

  /// Minimal spectral content the grid must resolve at this eps.
  double required_kmax(double eps) const;

  std::optional<PacketParams> packet;  // harmonic_coherent, packet_c3b
  std::optional<ConeSpec> cone;        // cone

  /// Where the scenario's mass lives: bump/plateau geometry for defect and
  /// Vlasov test functions, plus the dictionary phase-space window.
  struct TestRegion {
    double center = 0.0, inner = 2.0, outer = 3.0;  // spatial plateau radii
    double p_lo = -2.5, p_hi = 2.5;                 // momentum window
  };
  TestRegion region;

  // internals wired by the catalog
  std::function<ScenarioInstanceSpec(double, const ExperimentConfig&)> make_instance;
  std::function<WaveFunction(const ScenarioInstanceSpec&)> make_initial;
  std::function<double(double)> kmax_fn;
};

const Scenario& find_scenario(const std::string& id);  // throws ConfigError
std::vector<std::string> scenario_ids();
bool analysis_known(const std::string& id);
std::vector<std::string> analysis_ids();

}  // namespace bohmlab
