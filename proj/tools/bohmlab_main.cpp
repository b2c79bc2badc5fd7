/// bohmlab CLI: run config-driven experiments, validate configs, list the
/// scenario catalog and re-render stored reports.
///
/// Exit codes: 0 success, 1 config error, 2 numerical failure (including
/// flagged non-convergence), 3 internal error.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "bohmlab/errors.hpp"
#include "bohmlab/experiment.hpp"

namespace {

int run_command(const std::string& config_path, const std::string& out_override, int workers) {
  bohmlab::ExperimentConfig cfg = bohmlab::load_config_file(config_path);
  if (!out_override.empty()) cfg.output = out_override;
  if (workers > 0) cfg.workers = workers;
  const bohmlab::RunReport rep = bohmlab::run_experiment_to_dir(cfg);
  std::cout << bohmlab::render_report(rep);
  for (const auto& e : rep.entries) {
    if (e.ok && !*e.ok) {
      std::cerr << "numerical failure: " << e.quantity << "\n";
      return 2;
    }
    if (e.fit && !e.fit->converged) {
      std::cerr << "numerical failure: non-convergent fit for " << e.quantity << "\n";
      return 2;
    }
  }
  std::cout << "report written to " << cfg.output << "/run.json\n";
  return 0;
}

int validate_command(const std::string& config_path) {
  const bohmlab::ExperimentConfig cfg = bohmlab::load_config_file(config_path);
  bohmlab::validate_config(cfg);
  std::cout << "config ok\n" << cfg.serialize();
  return 0;
}

int list_command() {
  for (const std::string& id : bohmlab::scenario_ids()) {
    const bohmlab::Scenario& sc = bohmlab::find_scenario(id);
    std::cout << id << "\n    " << sc.description << "\n    analyses:";
    for (const auto& a : sc.default_analyses) std::cout << " " << a;
    std::cout << "\n";
  }
  return 0;
}

int report_command(const std::string& dir) {
  const std::string path = std::filesystem::is_directory(dir) ? dir + "/run.json" : dir;
  std::cout << bohmlab::render_report(bohmlab::read_report_file(path));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bohmlab: semiclassical Schrodinger / Bohmian measure laboratory"};
  app.require_subcommand(1);

  std::string config_path, out_override, report_dir;
  int workers = 0;

  auto* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("config", config_path, "config file")->required();
  run->add_option("--out", out_override, "override output directory");
  run->add_option("--workers", workers, "worker threads (default: BOHMLAB_WORKERS or hardware)");

  auto* validate = app.add_subcommand("validate", "validate a config file");
  validate->add_option("config", config_path, "config file")->required();

  app.add_subcommand("list-scenarios", "list the scenario catalog");

  auto* report = app.add_subcommand("report", "render a stored report as tables");
  report->add_option("dir", report_dir, "output directory or run.json path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("run")) return run_command(config_path, out_override, workers);
    if (app.got_subcommand("validate")) return validate_command(config_path);
    if (app.got_subcommand("list-scenarios")) return list_command();
    if (app.got_subcommand("report")) return report_command(report_dir);
  } catch (const bohmlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const bohmlab::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
