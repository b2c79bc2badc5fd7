#include "bohmlab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "bohmlab/errors.hpp"

namespace bohmlab {

namespace {

constexpr double kPi = std::numbers::pi;

int next_pow2(double x) {
  int n = 16;
  while (n < x && n < (1 << 22)) n *= 2;
  return n;
}

ScenarioInstanceSpec resolve(const ExperimentConfig& cfg, double eps, double x_min, double x_max,
                             int n, double dt, double t_final, int store_every) {
  if (cfg.x_min) {
    x_min = *cfg.x_min;
    x_max = *cfg.x_max;
  }
  if (cfg.n) n = *cfg.n;
  if (cfg.dt) dt = *cfg.dt;
  if (cfg.t_final) t_final = *cfg.t_final;
  if (cfg.store_every) store_every = *cfg.store_every;
  return ScenarioInstanceSpec{eps, Grid(AxisSpec{x_min, x_max, n}), dt, t_final, store_every};
}

// snaps 1/eps to the nearest positive multiple of dk so the carrier wave is
// box-commensurate
double snap_eps(double eps, double dk) {
  const double m = std::max(1.0, std::round(1.0 / (eps * dk)));
  return 1.0 / (m * dk);
}

cplx gaussian_amp(double y) {
  return std::pow(kPi, -0.25) * std::exp(-0.5 * y * y);
}

std::map<std::string, Scenario> build_catalog() {
  std::map<std::string, Scenario> cat;
  const std::vector<double> sweep7 = {1e-1, 4.6415888336127775e-2, 2.1544346900318832e-2,
                                      1e-2, 4.6415888336127775e-3, 2.1544346900318832e-3, 1e-3};

  {  // plane_wave: exact eigenfunction of both split factors, u = p0 everywhere
    Scenario s;
    s.id = "plane_wave";
    s.region = Scenario::TestRegion{0.0, 1.5, 2.5, -2.5, 2.5};
    s.description = "free plane wave exp(i p0 x / eps) on a commensurate box";
    s.oscillatory = true;
    s.potential = Potential::zero();
    s.default_epsilon = {0.1};
    s.default_analyses = {"conservation", "identities", "vlasov"};
    s.defect_time = 0.05;
    s.boundary_guard = false;  // translation invariant: fills the box
    const double p0 = 1.0;
    const double L = 2.0 * kPi;
    s.make_instance = [p0, L](double eps, const ExperimentConfig& cfg) {
      const double dk = 2.0 * kPi / L;
      const double es = snap_eps(eps, dk / p0) /* carrier k = p0/eps */;
      const int n = next_pow2(std::max(256.0, L * 1.3 * (p0 / es) / kPi));
      return resolve(cfg, es, -kPi, kPi, n, 1e-3, 1.0, 20);
    };
    s.make_initial = [p0, L](const ScenarioInstanceSpec& inst) {
      const double amp = 1.0 / std::sqrt(L);
      return WaveFunction::sample(inst.grid, inst.epsilon, [&](double x) {
        return amp * std::polar(1.0, p0 * x / inst.epsilon);
      });
    };
    s.kmax_fn = [p0](double eps) { return 1.2 * p0 / eps; };
    cat.emplace(s.id, std::move(s));
  }

  {  // free_gaussian: dispersive Gaussian with a closed-form solution
    Scenario s;
    s.id = "free_gaussian";
    s.region = Scenario::TestRegion{-1.0, 2.5, 4.0, -1.5, 3.5};
    s.description = "free Gaussian, width 1, drifting at p0 = 1";
    s.oscillatory = true;
    s.potential = Potential::zero();
    s.default_epsilon = {0.5};
    s.default_analyses = {"conservation", "identities", "equivariance", "vlasov"};
    s.defect_time = 0.2;
    const double x0 = -2.0, p0 = 1.0, s0 = 1.0;
    s.make_instance = [](double eps, const ExperimentConfig& cfg) {
      const int n = next_pow2(std::max(2048.0, 40.0 * 1.3 * (7.0 / eps) / kPi));
      return resolve(cfg, eps, -20.0, 20.0, n, 1e-3, 1.0, 5);
    };
    s.make_initial = [x0, p0, s0](const ScenarioInstanceSpec& inst) {
      const double norm = std::pow(kPi * s0 * s0, -0.25);
      return WaveFunction::sample(inst.grid, inst.epsilon, [&](double x) {
        const double d = x - x0;
        return norm * std::exp(-0.5 * d * d / (s0 * s0)) *
               std::polar(1.0, p0 * d / inst.epsilon);
      });
    };
    s.kmax_fn = [p0, s0](double eps) { return 1.2 * (p0 + 6.0 / s0) / eps; };
    cat.emplace(s.id, std::move(s));
  }

  {  // harmonic_coherent: exact coherent state in V = x^2/2 (guarded box)
    Scenario s;
    s.id = "harmonic_coherent";
    s.region = Scenario::TestRegion{0.3, 1.2, 1.55, -2.5, 2.5};
    s.description = "coherent state of width sqrt(eps) in the harmonic well";
    s.oscillatory = true;
    s.potential = Potential::harmonic(1.0);
    s.default_epsilon = sweep7;
    s.default_analyses = {"conservation", "identities", "equivariance", "defects", "packet"};
    s.defect_time = 0.3;
    s.packet = PacketParams{0.0, 1.0, gaussian_amp, 1.0};
    s.make_instance = [](double eps, const ExperimentConfig& cfg) {
      const double half = std::ceil(1.6 + 12.0 * std::sqrt(eps));
      const double kneed = 1.2 * (1.0 / eps + 8.0 / std::sqrt(eps));
      const int n = next_pow2(std::max(512.0, 2.0 * half * kneed / kPi));
      return resolve(cfg, eps, -half, half, n, 5e-4, 1.0, 10);
    };
    s.make_initial = [](const ScenarioInstanceSpec& inst) {
      // ground-state-width coherent packet at (x0, p0) = (0, 1)
      const double norm = std::pow(kPi * inst.epsilon, -0.25);
      return WaveFunction::sample(inst.grid, inst.epsilon, [&](double x) {
        return norm * std::exp(-0.5 * x * x / inst.epsilon) *
               std::polar(1.0, x / inst.epsilon);
      });
    };
    s.kmax_fn = [](double eps) { return 1.2 * (1.0 / eps + 8.0 / std::sqrt(eps)); };
    cat.emplace(s.id, std::move(s));
  }

  {  // wkb_single: single-phase WKB state, caustic-free window
    Scenario s;
    s.id = "wkb_single";
    s.region = Scenario::TestRegion{0.0, 3.5, 4.5, -1.2, 1.2};
    s.description = "WKB state a(x) exp(i S(x)/eps), S = sin(x)/2, V = 0";
    s.oscillatory = true;
    s.potential = Potential::zero();
    s.default_epsilon = sweep7;
    s.default_analyses = {"conservation", "identities", "defects", "static_bound"};
    s.defect_time = 0.2;
    s.make_instance = [](double eps, const ExperimentConfig& cfg) {
      const double L = 4.0 * kPi;
      const double kneed = 1.2 * (0.5 / eps + 6.0);
      const int n = next_pow2(std::max(512.0, L * kneed / kPi));
      return resolve(cfg, eps, -2.0 * kPi, 2.0 * kPi, n, 5e-4, 0.4, 10);
    };
    s.make_initial = [](const ScenarioInstanceSpec& inst) {
      const double norm = std::pow(kPi, -0.25);
      return WaveFunction::sample(inst.grid, inst.epsilon, [&](double x) {
        return norm * std::exp(-0.5 * x * x) *
               std::polar(1.0, 0.5 * std::sin(x) / inst.epsilon);
      });
    };
    s.kmax_fn = [](double eps) { return 1.2 * (0.5 / eps + 6.0); };
    cat.emplace(s.id, std::move(s));
  }

  {  // two_wave: standing wave under a Gaussian envelope; A -> g^2, T -> g^2
    Scenario s;
    s.id = "two_wave";
    s.region = Scenario::TestRegion{0.0, 3.5, 4.4, -2.0, 2.0};
    s.description = "g(x) cos(x/eps): two-wave superposition with envelope";
    s.oscillatory = true;
    s.potential = Potential::zero();
    s.default_epsilon = sweep7;
    s.default_analyses = {"conservation", "identities", "defects"};
    s.defect_time = 0.01;  // before the two envelopes separate visibly
    s.make_instance = [](double eps, const ExperimentConfig& cfg) {
      const double L = 11.0;
      const double dk = 2.0 * kPi / L;
      const double es = snap_eps(eps, dk);
      const double kneed = 1.1 * (1.0 / es + 8.0);
      const int n = next_pow2(std::max(1024.0, L * kneed / kPi));
      return resolve(cfg, es, -5.5, 5.5, n, 5e-4, 0.02, 4);
    };
    s.make_initial = [](const ScenarioInstanceSpec& inst) {
      WaveFunction psi = WaveFunction::sample(inst.grid, inst.epsilon, [&](double x) {
        return cplx(std::exp(-0.5 * x * x) * std::cos(x / inst.epsilon), 0.0);
      });
      return normalized(psi);
    };
    s.kmax_fn = [](double eps) { return 1.1 * (1.0 / eps + 8.0); };
    cat.emplace(s.id, std::move(s));
  }

  {  // packet_c3b: semiclassical packet crossing a smooth bounded barrier
    Scenario s;
    s.id = "packet_c3b";
    s.region = Scenario::TestRegion{-1.6, 2.2, 3.2, -0.5, 2.5};
    s.description = "coherent packet in the C3b barrier 0.5/(1+x^2)";
    s.oscillatory = true;
    s.potential = Potential::lorentz_well(0.5, 1.0);
    s.default_epsilon = sweep7;
    s.default_analyses = {"conservation", "identities", "defects", "packet"};
    s.defect_time = 0.3;
    s.packet = PacketParams{-2.0, 1.0, gaussian_amp, 1.0};
    s.make_instance = [](double eps, const ExperimentConfig& cfg) {
      const double kneed = 1.15 * (1.1 / eps + 8.0 / std::sqrt(eps));
      const int n = next_pow2(std::max(1024.0, 8.0 * kneed / kPi));
      return resolve(cfg, eps, -6.0, 2.0, n, 5e-4, 1.0, 10);
    };
    s.make_initial = [](const ScenarioInstanceSpec& inst) {
      const double norm = std::pow(kPi * inst.epsilon, -0.25);
      return WaveFunction::sample(inst.grid, inst.epsilon, [&](double x) {
        const double d = x + 2.0;
        return norm * std::exp(-0.5 * d * d / inst.epsilon) *
               std::polar(1.0, d / inst.epsilon);
      });
    };
    s.kmax_fn = [](double eps) { return 1.15 * (1.1 / eps + 8.0 / std::sqrt(eps)); };
    cat.emplace(s.id, std::move(s));
  }

  {  // cone: sqrt(eps)-concentrated profile with the |x| cone phase
    Scenario s;
    s.id = "cone";
    s.region = Scenario::TestRegion{0.0, 1.5, 2.5, -2.5, 2.5};
    s.description = "sqrt(eps)-concentrated profile with cone phase s0 |x|";
    s.oscillatory = true;
    s.potential = Potential::zero();
    s.default_epsilon = sweep7;
    s.default_analyses = {"conservation", "cone"};
    s.defect_time = 0.0;
    s.cone = ConeSpec::gaussian(1.0);
    s.make_instance = [](double eps, const ExperimentConfig& cfg) {
      const double half = 14.0 * std::sqrt(eps);
      return resolve(cfg, eps, -half, half, 4096, 2e-6, 0.02, 50);
    };
    s.make_initial = [spec = ConeSpec::gaussian(1.0)](const ScenarioInstanceSpec& inst) {
      return normalized(build_cone_state(spec, inst.grid, inst.epsilon));
    };
    s.kmax_fn = [](double eps) { return 1.3 * (1.0 / eps + 10.0 / std::sqrt(eps)); };
    cat.emplace(s.id, std::move(s));
  }

  return cat;
}

const std::map<std::string, Scenario>& catalog() {
  static const std::map<std::string, Scenario> cat = build_catalog();
  return cat;
}

}  // namespace

ScenarioInstanceSpec Scenario::instance(double eps, const ExperimentConfig& cfg) const {
  return make_instance(eps, cfg);
}

WaveFunction Scenario::initial_state(const ScenarioInstanceSpec& inst) const {
  return make_initial(inst);
}

double Scenario::required_kmax(double eps) const { return kmax_fn(eps); }

const Scenario& find_scenario(const std::string& id) {
  const auto& cat = catalog();
  const auto it = cat.find(id);
  if (it == cat.end()) throw ConfigError("unknown scenario '" + id + "'");
  return it->second;
}

std::vector<std::string> scenario_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, sc] : catalog()) ids.push_back(id);
  return ids;
}

const std::vector<std::string>& all_analyses() {
  static const std::vector<std::string> ids = {"conservation", "identities",   "equivariance",
                                               "vlasov",       "defects",      "static_bound",
                                               "packet",       "cone"};
  return ids;
}

bool analysis_known(const std::string& id) {
  const auto& ids = all_analyses();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

std::vector<std::string> analysis_ids() { return all_analyses(); }

}  // namespace bohmlab
