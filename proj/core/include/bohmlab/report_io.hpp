#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bohmlab/defects.hpp"
#include "bohmlab/hydrodynamics.hpp"
#include "bohmlab/ratefit.hpp"
#include "bohmlab/trajectories.hpp"
#include "bohmlab/wigner.hpp"

namespace bohmlab {

/// One reported quantity: either a scalar, a flag, or an eps sweep with its
/// fitted limit/rate.
struct ReportEntry {
  std::string quantity;
  std::optional<double> scalar;
  std::optional<bool> ok;
  std::vector<std::pair<double, double>> pairs;  // (eps, value), eps descending
  std::optional<RateFit> fit;

  static ReportEntry make_scalar(std::string q, double v);
  static ReportEntry make_flag(std::string q, bool v);
  static ReportEntry make_sweep(std::string q, std::vector<std::pair<double, double>> p,
                                std::optional<RateFit> f = std::nullopt);
};

struct RunReport {
  int schema_version = 1;
  std::string scenario;
  std::string config_text;  // canonical serialization
  std::vector<ReportEntry> entries;

  const ReportEntry* find(const std::string& quantity) const;
};

/// JSON serialization (schema_version field included; the generated_at
/// timestamp is added at write time and excluded from determinism
/// comparisons).
std::string report_to_json(const RunReport& report);
RunReport report_from_json(const std::string& text);
void write_report_file(const std::string& path, const RunReport& report);
RunReport read_report_file(const std::string& path);

/// Renders a report as human-readable fixed-width tables.
std::string render_report(const RunReport& report);

std::string defect_report_to_json(const DefectReport& report, const std::string& scenario);

// CSV / binary artifact exports
void export_hydro_csv(const std::string& path, const HydroFields& fields);
void export_trajectories_csv(const std::string& path, const TrajectoryEnsemble& ens);
void export_wigner_csv(const std::string& path, const WignerField& w);
void export_wigner_raster(const std::string& path, const WignerField& w);
WignerField import_wigner_raster(const std::string& path);

}  // namespace bohmlab
