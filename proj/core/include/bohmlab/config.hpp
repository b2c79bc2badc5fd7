#pragma once

#include <optional>
#include <string>
#include <vector>

namespace bohmlab {

/// Flat key/value experiment configuration with typed sections.  The
/// canonical serialization (serialize()) round-trips bit-exactly through
/// parse_config.
struct ExperimentConfig {
  // [experiment]
  std::string scenario;
  std::string output = "out";
  std::vector<std::string> analyses;  // empty -> scenario defaults
  int workers = 0;                    // 0 -> BOHMLAB_WORKERS env or hardware
  long seed = 0;                      // reserved for randomized dictionaries

  // [sweep]
  std::vector<double> epsilon;  // empty -> scenario defaults; must decrease

  // [grid]
  std::optional<int> n;
  std::optional<double> x_min, x_max;

  // [time]
  std::optional<double> dt;
  std::optional<double> t_final;
  std::optional<int> store_every;
  std::optional<long> n_steps;  // overrides t_final when set

  std::string serialize() const;
  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses the [section] key = value format; '#' starts a comment.  Throws
/// ConfigError naming the offending key or value.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

/// Scenario-aware validation: scenario exists, epsilon strictly decreasing,
/// the grid resolves the most oscillatory instance, time stepping sane.
/// Throws ConfigError with a diagnostic naming the offending key.
void validate_config(const ExperimentConfig& cfg);

}  // namespace bohmlab
