#pragma once

#include "bohmlab/config.hpp"
#include "bohmlab/report_io.hpp"
#include "bohmlab/scenario.hpp"

namespace bohmlab {

/// Builds a propagated timeline for one (scenario, eps) instance.
Timeline build_timeline(const Scenario& sc, const ScenarioInstanceSpec& inst);

/// Runs every requested analysis of the configured scenario and returns the
/// in-memory report.  Deterministic: serial reruns are bitwise identical and
/// parallel reruns produce identical values (independent jobs, declared
/// reduction order).
RunReport run_experiment(const ExperimentConfig& cfg);

/// run_experiment + artifact files under cfg.output:
///   run.json            the report (with timestamp)
///   defects.json        when the defects analysis ran
///   hydro_<eps>.csv     Madelung fields of the final frame (first eps)
///   trajectories.csv    when the equivariance analysis ran
/// Returns the report.
RunReport run_experiment_to_dir(const ExperimentConfig& cfg);

}  // namespace bohmlab
