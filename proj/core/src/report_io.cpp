#include "bohmlab/report_io.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "bohmlab/errors.hpp"

namespace bohmlab {

using nlohmann::json;

ReportEntry ReportEntry::make_scalar(std::string q, double v) {
  ReportEntry e;
  e.quantity = std::move(q);
  e.scalar = v;
  return e;
}

ReportEntry ReportEntry::make_flag(std::string q, bool v) {
  ReportEntry e;
  e.quantity = std::move(q);
  e.ok = v;
  return e;
}

ReportEntry ReportEntry::make_sweep(std::string q, std::vector<std::pair<double, double>> p,
                                    std::optional<RateFit> f) {
  ReportEntry e;
  e.quantity = std::move(q);
  e.pairs = std::move(p);
  e.fit = f;
  return e;
}

const ReportEntry* RunReport::find(const std::string& quantity) const {
  for (const auto& e : entries)
    if (e.quantity == quantity) return &e;
  return nullptr;
}

namespace {

json fit_to_json(const RateFit& f) {
  return json{{"limit", f.limit},
              {"rate", f.rate},
              {"residual", f.residual},
              {"converged", f.converged}};
}

RateFit fit_from_json(const json& j) {
  RateFit f;
  f.limit = j.at("limit").get<double>();
  f.rate = j.at("rate").get<double>();
  f.residual = j.at("residual").get<double>();
  f.converged = j.at("converged").get<bool>();
  return f;
}

}  // namespace

std::string report_to_json(const RunReport& report) {
  json j;
  j["schema_version"] = report.schema_version;
  j["scenario"] = report.scenario;
  j["config"] = report.config_text;
  json entries = json::array();
  for (const auto& e : report.entries) {
    json je;
    je["quantity"] = e.quantity;
    if (e.scalar) je["value"] = *e.scalar;
    if (e.ok) je["ok"] = *e.ok;
    if (!e.pairs.empty()) {
      json pairs = json::array();
      for (const auto& [eps, v] : e.pairs) pairs.push_back(json::array({eps, v}));
      je["pairs"] = pairs;
    }
    if (e.fit) je["fit"] = fit_to_json(*e.fit);
    entries.push_back(je);
  }
  j["reports"] = entries;
  return j.dump(2);
}

RunReport report_from_json(const std::string& text) {
  const json j = json::parse(text);
  RunReport r;
  r.schema_version = j.at("schema_version").get<int>();
  if (r.schema_version != 1) throw NumericalError("report: unsupported schema version");
  r.scenario = j.at("scenario").get<std::string>();
  r.config_text = j.at("config").get<std::string>();
  for (const auto& je : j.at("reports")) {
    ReportEntry e;
    e.quantity = je.at("quantity").get<std::string>();
    if (je.contains("value")) e.scalar = je.at("value").get<double>();
    if (je.contains("ok")) e.ok = je.at("ok").get<bool>();
    if (je.contains("pairs"))
      for (const auto& p : je.at("pairs"))
        e.pairs.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    if (je.contains("fit")) e.fit = fit_from_json(je.at("fit"));
    r.entries.push_back(std::move(e));
  }
  return r;
}

void write_report_file(const std::string& path, const RunReport& report) {
  json j = json::parse(report_to_json(report));
  const auto now = std::chrono::system_clock::now();
  j["generated_at"] =
      static_cast<std::int64_t>(std::chrono::system_clock::to_time_t(now));
  std::ofstream os(path);
  if (!os) throw Error("report: cannot open " + path + " for writing");
  os << j.dump(2) << "\n";
}

RunReport read_report_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("report: cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return report_from_json(ss.str());
}

std::string render_report(const RunReport& report) {
  std::ostringstream os;
  os << "scenario: " << report.scenario << "\n";
  os << std::left;
  for (const auto& e : report.entries) {
    os << "  " << std::setw(44) << e.quantity;
    if (e.scalar) os << std::scientific << std::setprecision(6) << *e.scalar;
    if (e.ok) os << (*e.ok ? "ok" : "FAILED");
    if (e.fit)
      os << "  limit=" << std::scientific << std::setprecision(4) << e.fit->limit
         << " rate=" << std::fixed << std::setprecision(3) << e.fit->rate
         << (e.fit->converged ? "" : " (non-convergent)");
    os << "\n";
    if (!e.pairs.empty()) {
      for (const auto& [eps, v] : e.pairs)
        os << "      eps=" << std::scientific << std::setprecision(3) << eps << "  "
           << std::setprecision(8) << v << "\n";
    }
  }
  return os.str();
}

std::string defect_report_to_json(const DefectReport& report, const std::string& scenario) {
  json j;
  j["schema_version"] = 1;
  j["scenario"] = scenario;
  j["epsilon"] = report.eps;
  json bumps = json::array();
  for (const auto& b : report.per_bump) {
    json jb;
    jb["bump"] = b.bump_id;
    jb["A"] = b.A;
    jb["j2_rho"] = b.j2_rho;
    jb["beta_m2_cut"] = b.beta_m2_cut;
    jb["rhoT"] = b.rhoT;
    jb["A_fit"] = fit_to_json(b.A_fit);
    jb["rhoT_fit"] = fit_to_json(b.rhoT_fit);
    jb["B"] = b.B;
    jb["C"] = b.C;
    jb["teq_residual"] = b.teq_residual;
    jb["positivity_ok"] = b.positivity_ok;
    jb["first_moment_gap"] = b.first_moment_gap;
    jb["converged"] = b.converged;
    bumps.push_back(jb);
  }
  j["bumps"] = bumps;
  json meas;
  meas["ids"] = report.measures.ids;
  meas["max_gap"] = report.measures.max_gap;
  meas["converged"] = report.measures.converged;
  json bf = json::array(), wf = json::array();
  for (const auto& f : report.measures.beta_fits) bf.push_back(fit_to_json(f));
  for (const auto& f : report.measures.wigner_fits) wf.push_back(fit_to_json(f));
  meas["beta_fits"] = bf;
  meas["wigner_fits"] = wf;
  j["measures"] = meas;
  return j.dump(2);
}

namespace {
std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream os(path, mode);
  if (!os) throw Error("export: cannot open " + path + " for writing");
  return os;
}
}  // namespace

void export_hydro_csv(const std::string& path, const HydroFields& f) {
  auto os = open_out(path);
  os << "x,rho,Jx,ux,V_B,masked\n";
  os << std::setprecision(17);
  for (int i = 0; i < f.grid.n(0); ++i)
    os << f.grid.node(i) << ',' << f.rho[i] << ',' << f.J[i] << ',' << f.u[i] << ',' << f.V_B[i]
       << ',' << int(f.mask[i]) << "\n";
}

void export_trajectories_csv(const std::string& path, const TrajectoryEnsemble& ens) {
  auto os = open_out(path);
  os << "t,i,X,P,w,flag\n";
  os << std::setprecision(17);
  for (std::size_t k = 0; k < ens.times.size(); ++k)
    for (std::size_t i = 0; i < ens.n_atoms(); ++i)
      os << ens.times[k] << ',' << i << ',' << ens.X[k][i] << ',' << ens.P[k][i] << ','
         << ens.weights[i] << ',' << int(ens.flagged[i]) << "\n";
}

void export_wigner_csv(const std::string& path, const WignerField& w) {
  auto os = open_out(path);
  os << "x,p,w\n";
  os << std::setprecision(17);
  for (int i = 0; i < w.xgrid.n(0); ++i)
    for (int r = 0; r < w.pgrid.np; ++r)
      os << w.xgrid.node(i) << ',' << w.pgrid.p(r) << ',' << w.at(i, r) << "\n";
}

void export_wigner_raster(const std::string& path, const WignerField& w) {
  auto os = open_out(path, std::ios::binary);
  auto put = [&os](auto v) { os.write(reinterpret_cast<const char*>(&v), sizeof v); };
  put(std::uint32_t{1});  // raster version
  put(std::uint32_t(w.xgrid.n(0)));
  put(std::uint32_t(w.pgrid.np));
  put(w.epsilon);
  put(w.xgrid.x_min(0));
  put(w.xgrid.x_max(0));
  put(w.pgrid.p_min);
  put(w.pgrid.dp);
  for (double v : w.w) put(v);
}

WignerField import_wigner_raster(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("import: cannot open " + path);
  auto get = [&is](auto& v) {
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!is) throw NumericalError("wigner raster: truncated file");
  };
  std::uint32_t version, n, np;
  get(version);
  if (version != 1) throw NumericalError("wigner raster: unsupported version");
  get(n);
  get(np);
  double eps, x0, x1, pmin, dp;
  get(eps);
  get(x0);
  get(x1);
  get(pmin);
  get(dp);
  WignerField w{Grid(AxisSpec{x0, x1, static_cast<int>(n)}), eps,
                WignerPGrid{static_cast<int>(np), pmin, dp}, {}, 0.0};
  w.w.resize(static_cast<std::size_t>(n) * np);
  for (double& v : w.w) get(v);
  return w;
}

}  // namespace bohmlab
