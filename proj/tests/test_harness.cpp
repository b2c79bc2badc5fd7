#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "bohmlab/errors.hpp"
#include "bohmlab/experiment.hpp"
#include "bohmlab/report_io.hpp"
#include "bohmlab/snapshot_io.hpp"

using namespace bohmlab;
namespace {
std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}
}  // namespace

TEST_CASE("config parsing, defaults and diagnostics") {
  const ExperimentConfig cfg = parse_config("[experiment]\nscenario = plane_wave\n");
  CHECK(cfg.scenario == "plane_wave");
  CHECK(cfg.output == "out");
  CHECK(cfg.workers == 0);
  CHECK(cfg.epsilon.empty());
  validate_config(cfg);  // scenario defaults fill in

  CHECK_THROWS_AS(parse_config(""), ConfigError);  // missing scenario
  CHECK_THROWS_AS(parse_config("[experiment]\nscenario = warp_drive\n"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[experiment]\nscenario = plane_wave\nfoo = 1\n"),
                       doctest::Contains("experiment.foo"), ConfigError);
  CHECK_THROWS_AS(parse_config("[experiment]\nscenario = plane_wave\nworkers = x\n"),
                  ConfigError);

  // increasing eps list is rejected with a named diagnostic
  ExperimentConfig bad = cfg;
  bad.epsilon = {0.1, 0.2};
  CHECK_THROWS_WITH_AS(validate_config(bad), doctest::Contains("decreasing"), ConfigError);

  // grid too small for the smallest eps of an oscillatory scenario
  ExperimentConfig coarse = cfg;
  coarse.scenario = "two_wave";
  coarse.epsilon = {1e-3};
  coarse.n = 256;
  CHECK_THROWS_WITH_AS(validate_config(coarse), doctest::Contains("k_max"), ConfigError);

  CHECK_THROWS_AS(load_config_file("/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("config serialization round-trips bit exactly") {
  ExperimentConfig cfg;
  cfg.scenario = "free_gaussian";
  cfg.output = "out/fg";
  cfg.analyses = {"conservation", "equivariance"};
  cfg.workers = 3;
  cfg.seed = 42;
  cfg.epsilon = {0.1, 0.037, 1.0 / 3.0 * 1e-2};
  cfg.n = 2048;
  cfg.x_min = -20.0;
  cfg.x_max = 20.0;
  cfg.dt = 1e-3;
  cfg.t_final = 1.0;
  cfg.store_every = 5;

  const std::string text = cfg.serialize();
  const ExperimentConfig back = parse_config(text);
  CHECK(back == cfg);
  CHECK(back.serialize() == text);  // canonical form is a fixed point
}

TEST_CASE("scenario catalog instances are valid states") {
  ExperimentConfig cfg;
  for (const std::string& id : scenario_ids()) {
    cfg.scenario = id;
    const Scenario& sc = find_scenario(id);
    for (double eps : {sc.default_epsilon.front(), sc.default_epsilon.back()}) {
      const ScenarioInstanceSpec inst = sc.instance(eps, cfg);
      CHECK(inst.grid.n(0) <= 4096);  // desk scale
      const WaveFunction psi = sc.initial_state(inst);
      CHECK(l2_norm_sq(psi) == doctest::Approx(1.0).epsilon(1e-6));
      if (sc.boundary_guard) CHECK(boundary_mass(psi) < 1e-8);
      // the instance grid resolves the scenario's spectral content
      const double kmax = std::numbers::pi * inst.grid.n(0) / inst.grid.length(0);
      CHECK(kmax >= sc.required_kmax(inst.epsilon));
    }
  }
}

TEST_CASE("report json round-trip and rendering") {
  RunReport rep;
  rep.scenario = "plane_wave";
  rep.config_text = "[experiment]\nscenario = plane_wave\n";
  rep.entries.push_back(ReportEntry::make_scalar("a.b", 1.5e-9));
  rep.entries.push_back(ReportEntry::make_flag("c.ok", true));
  RateFit fit{0.5, 1.0, 1e-12, true};
  rep.entries.push_back(ReportEntry::make_sweep("d.sweep", {{0.1, 1.0}, {0.01, 0.6}}, fit));

  const std::string json = report_to_json(rep);
  const RunReport back = report_from_json(json);
  CHECK(back.scenario == rep.scenario);
  REQUIRE(back.entries.size() == 3);
  CHECK(*back.entries[0].scalar == 1.5e-9);
  CHECK(*back.entries[1].ok);
  CHECK(back.entries[2].pairs.size() == 2);
  CHECK(back.entries[2].fit->rate == 1.0);
  CHECK(back.find("d.sweep") != nullptr);
  CHECK(back.find("missing") == nullptr);

  const std::string table = render_report(back);
  CHECK(table.find("plane_wave") != std::string::npos);
  CHECK(table.find("d.sweep") != std::string::npos);

  const std::string path = tmp_path("bohmlab_report.json");
  write_report_file(path, rep);
  const RunReport fromfile = read_report_file(path);
  CHECK(report_to_json(fromfile) == json);  // timestamp excluded from the comparison
  std::remove(path.c_str());
}

TEST_CASE("csv and raster exports") {
  Grid g(AxisSpec{-2.0, 2.0, 64});
  const WaveFunction psi = normalized(WaveFunction::sample(g, 0.5, [](double x) {
    return cplx(std::exp(-2.0 * x * x), 0.1 * x);
  }));
  const HydroFields f = extract_fields(psi);
  const std::string hydro = tmp_path("bohmlab_hydro.csv");
  export_hydro_csv(hydro, f);
  {
    std::ifstream is(hydro);
    std::string header;
    std::getline(is, header);
    CHECK(header == "x,rho,Jx,ux,V_B,masked");
    int lines = 0;
    for (std::string line; std::getline(is, line);) ++lines;
    CHECK(lines == 64);
  }
  std::remove(hydro.c_str());

  const WignerField w = wigner_transform(psi);
  const std::string wcsv = tmp_path("bohmlab_w.csv");
  export_wigner_csv(wcsv, w);
  {
    std::ifstream is(wcsv);
    std::string header;
    std::getline(is, header);
    CHECK(header == "x,p,w");
    int lines = 0;
    for (std::string line; std::getline(is, line);) ++lines;
    CHECK(lines == w.xgrid.n(0) * w.pgrid.np);
  }
  std::remove(wcsv.c_str());

  const std::string raster = tmp_path("bohmlab_w.raster");
  export_wigner_raster(raster, w);
  const WignerField back = import_wigner_raster(raster);
  CHECK(back.pgrid.np == w.pgrid.np);
  CHECK(back.epsilon == w.epsilon);
  for (std::size_t i = 0; i < w.w.size(); i += 101) CHECK(back.w[i] == w.w[i]);
  std::remove(raster.c_str());
}

TEST_CASE("plane wave smoke run: fast, conservative, stationary") {
  ExperimentConfig cfg;
  cfg.scenario = "plane_wave";
  cfg.output = "";  // no artifacts
  cfg.workers = 1;
  cfg.n_steps = 2000;
  const RunReport rep = run_experiment(cfg);

  const ReportEntry* md = rep.find("conservation.mass_drift");
  REQUIRE(md != nullptr);
  CHECK(*md->scalar <= 1e-10);
  const ReportEntry* ed = rep.find("conservation.energy_drift_rel");
  REQUIRE(ed != nullptr);
  CHECK(*ed->scalar <= 1e-8);
  const ReportEntry* vr = rep.find("vlasov.residual");
  REQUIRE(vr != nullptr);
  CHECK(*vr->scalar <= 1e-8);
  CHECK(rep.find("identities.beta_m0_vs_rho")->scalar.value() <= 1e-10);
  CHECK(rep.find("identities.wigner_m0_vs_rho")->scalar.value() <= 1e-6);
}

TEST_CASE("serial reruns are bitwise identical; parallel matches serial") {
  ExperimentConfig cfg;
  cfg.scenario = "plane_wave";
  cfg.output = "";
  cfg.n_steps = 500;
  cfg.analyses = {"conservation", "identities"};

  cfg.workers = 1;
  const RunReport a = run_experiment(cfg);
  const RunReport b = run_experiment(cfg);
  cfg.workers = 4;
  const RunReport c = run_experiment(cfg);

  REQUIRE(a.entries.size() == b.entries.size());
  REQUIRE(a.entries.size() == c.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    if (a.entries[i].scalar) {
      CHECK(*a.entries[i].scalar == *b.entries[i].scalar);  // bitwise
      CHECK(*a.entries[i].scalar == *c.entries[i].scalar);
    }
  }
  CHECK(report_to_json(a) == report_to_json(b));
}
