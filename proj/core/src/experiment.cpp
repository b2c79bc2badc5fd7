#include "bohmlab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "bohmlab/cone.hpp"
#include "bohmlab/defects.hpp"
#include "bohmlab/envelope.hpp"
#include "bohmlab/errors.hpp"
#include "bohmlab/parallel.hpp"
#include "bohmlab/spectral.hpp"
#include "bohmlab/rescaled.hpp"
#include "bohmlab/static_bound.hpp"
#include "bohmlab/vlasov.hpp"
#include "bohmlab/wavepacket.hpp"

namespace bohmlab {

namespace {

constexpr double kNodeEta = 1e-6;

struct Ctx {
  const Scenario& sc;
  const ExperimentConfig& cfg;
  std::vector<double> eps;
  RunReport& rep;
  int workers;
};

PropagatorConfig stepping(const Scenario& sc, const ScenarioInstanceSpec& inst) {
  PropagatorConfig p;
  p.dt = inst.dt;
  p.n_steps = std::lround(inst.t_final / inst.dt);
  p.store_every = inst.store_every;
  p.boundary_guard = sc.boundary_guard;
  return p;
}

Dictionary scenario_dictionary(const Scenario& sc) {
  const auto& r = sc.region;
  return default_dictionary(r.center - r.outer, r.center + r.outer, r.p_lo, r.p_hi);
}

void run_conservation(Ctx& c) {
  const ScenarioInstanceSpec inst = c.sc.instance(c.eps.front(), c.cfg);
  PropagatorConfig p;
  p.dt = inst.dt;
  p.n_steps = c.cfg.n_steps.value_or(10000);
  p.store_every = static_cast<int>(std::max<long>(p.n_steps / 100, 1));
  p.boundary_guard = c.sc.boundary_guard;
  const WaveFunction psi0 = c.sc.initial_state(inst);
  const Timeline tl = propagate(psi0, c.sc.potential, p);

  const double m0 = mass(tl.state(0));
  const double e0 = energy(tl.state(0), c.sc.potential);
  double dm = 0.0, de = 0.0;
  for (std::size_t k = 1; k < tl.size(); ++k) {
    dm = std::max(dm, std::abs(mass(tl.state(k)) - m0));
    de = std::max(de, std::abs(energy(tl.state(k), c.sc.potential) - e0));
  }
  c.rep.entries.push_back(ReportEntry::make_scalar("conservation.steps", double(p.n_steps)));
  c.rep.entries.push_back(ReportEntry::make_scalar("conservation.mass_drift", dm));
  c.rep.entries.push_back(
      ReportEntry::make_scalar("conservation.energy_drift_rel", de / std::max(std::abs(e0), 1e-30)));
  c.rep.entries.push_back(ReportEntry::make_scalar("conservation.initial_energy", e0));
}

void run_identities(Ctx& c) {
  const ScenarioInstanceSpec inst = c.sc.instance(c.eps.front(), c.cfg);
  const WaveFunction psi = c.sc.initial_state(inst);
  const HydroFields f = extract_fields(psi, kNodeEta);
  const Grid& g = psi.grid;

  c.rep.entries.push_back(ReportEntry::make_scalar(
      "identities.rho_mass_err", std::abs(quadrature(std::span<const double>(f.rho), g) -
                                          mass(psi))));

  const EmpiricalPhaseMeasure beta = bohmian_measure(f);
  const MomentGrid mg = moments(beta, g);
  double em0 = 0.0, em1 = 0.0, ecs = 0.0, eju = 0.0;
  for (int i = 0; i < g.n(0); ++i) {
    if (f.mask[i]) continue;
    em0 = std::max(em0, std::abs(mg.m0[i] - f.rho[i]));
    em1 = std::max(em1, std::abs(mg.m1[i] - f.J[i]));
    ecs = std::min(ecs, mg.cs_gap[i]);
    eju = std::max(eju, std::abs(f.J[i] - f.rho[i] * f.u[i]));
  }
  c.rep.entries.push_back(ReportEntry::make_scalar("identities.beta_m0_vs_rho", em0));
  c.rep.entries.push_back(ReportEntry::make_scalar("identities.beta_m1_vs_J", em1));
  c.rep.entries.push_back(ReportEntry::make_scalar("identities.beta_cs_gap_min", ecs));
  c.rep.entries.push_back(ReportEntry::make_scalar("identities.J_two_routes", eju));

  const WignerAnalysis wa = wigner_analyze(psi);
  double wm0 = 0.0, wm1 = 0.0;
  for (int i = 0; i < g.n(0); ++i) {
    wm0 = std::max(wm0, std::abs(wa.m0[i] - f.rho[i]));
    wm1 = std::max(wm1, std::abs(wa.m1[i] - f.J[i]));
  }
  c.rep.entries.push_back(ReportEntry::make_scalar("identities.wigner_m0_vs_rho", wm0));
  c.rep.entries.push_back(ReportEntry::make_scalar("identities.wigner_m1_vs_J", wm1));
  c.rep.entries.push_back(
      ReportEntry::make_scalar("identities.wigner_mass_err", std::abs(wa.mass - mass(psi))));
  c.rep.entries.push_back(
      ReportEntry::make_scalar("identities.wigner_imag_residue", wa.imag_residue));
  c.rep.entries.push_back(ReportEntry::make_scalar("identities.spectral_edge_mass",
                                                   wa.spectral_edge_mass));

  const KineticSplit ks = kinetic_split(psi, kNodeEta);
  const double ekin = kinetic_energy(psi);
  const double split_err =
      std::abs(ks.current_energy + ks.quantum_energy - ekin) / std::max(ekin, 1e-30);
  c.rep.entries.push_back(ReportEntry::make_scalar("identities.kinetic_split_rel", split_err));
  c.rep.entries.push_back(ReportEntry::make_scalar("identities.masked_mass", f.masked_mass));
}

void run_equivariance(Ctx& c) {
  const ScenarioInstanceSpec inst = c.sc.instance(c.eps.front(), c.cfg);
  const Timeline tl = build_timeline(c.sc, inst);
  const std::vector<double> seeds = lattice_seeds(tl.grid, 2);
  const std::vector<double> weights = seed_weights(tl, seeds);

  TrajectoryOptions topt;
  topt.node_eta = kNodeEta;
  const TrajectoryEnsemble kin = integrate_kinematic(tl, seeds, weights, topt);
  const EquivarianceResult eq = equivariance_check(kin, tl, tl.t_end());
  c.rep.entries.push_back(ReportEntry::make_scalar("equivariance.w1", eq.w1));
  c.rep.entries.push_back(ReportEntry::make_scalar("equivariance.hist_l1", eq.hist_l1));
  c.rep.entries.push_back(
      ReportEntry::make_scalar("equivariance.excluded_mass", eq.excluded_mass));
  c.rep.entries.push_back(
      ReportEntry::make_flag("equivariance.excluded_ok", eq.excluded_mass < 1e-3));

  if (!c.cfg.output.empty()) {
    std::filesystem::create_directories(c.cfg.output);
    export_trajectories_csv(c.cfg.output + "/trajectories.csv", kin);
  }

  const TrajectoryEnsemble dyn = integrate_dynamic(tl, c.sc.potential, seeds, weights, topt);
  double cross = 0.0;
  const std::size_t last = kin.times.size() - 1;
  for (std::size_t i = 0; i < kin.n_atoms(); ++i) {
    if (kin.flagged[i] || dyn.flagged[i]) continue;
    cross = std::max(cross, std::abs(kin.X[last][i] - dyn.X[last][i]));
  }
  c.rep.entries.push_back(ReportEntry::make_scalar("equivariance.cross_method_sup", cross));
}

VlasovTest make_vlasov_test(const Scenario& sc, double T) {
  const auto& r = sc.region;
  return VlasovTest{BumpProfile::plateau(0.0, 0.3 * T, 0.8 * T),
                    BumpProfile::bump(r.center, r.outer),
                    BumpProfile::plateau(0.5 * (r.p_lo + r.p_hi), 0.45 * (r.p_hi - r.p_lo),
                                         0.75 * (r.p_hi - r.p_lo))};
}

void run_vlasov(Ctx& c) {
  // dense frames: the time quadrature of the steep tau profile must stay far
  // below the O(dt^2) solver error this residual measures
  ScenarioInstanceSpec inst = c.sc.instance(c.eps.front(), c.cfg);
  inst.store_every = 1;
  const Timeline tl = build_timeline(c.sc, inst);
  const VlasovTest test = make_vlasov_test(c.sc, inst.t_final);
  const double res = vlasov_weak_residual(tl, c.sc.potential, test, kNodeEta);
  c.rep.entries.push_back(ReportEntry::make_scalar("vlasov.residual", res));

  // dt refinement, measured on a coarse pair where the O(dt^2) term still
  // dominates the quadrature floor
  ScenarioInstanceSpec coarse = inst;
  coarse.dt = 8e-3;
  ScenarioInstanceSpec fine = inst;
  fine.dt = 4e-3;
  const double res1 = vlasov_weak_residual(build_timeline(c.sc, coarse), c.sc.potential, test,
                                           kNodeEta);
  const double res2 = vlasov_weak_residual(build_timeline(c.sc, fine), c.sc.potential, test,
                                           kNodeEta);
  c.rep.entries.push_back(ReportEntry::make_scalar("vlasov.residual_coarse_dt", res1));
  c.rep.entries.push_back(ReportEntry::make_scalar("vlasov.residual_half_dt", res2));
  c.rep.entries.push_back(ReportEntry::make_scalar(
      "vlasov.refinement_ratio", res1 / std::max(res2, 1e-300)));
}

void run_defects(Ctx& c) {
  const auto& r = c.sc.region;
  DefectOptions opt;
  opt.node_eta = kNodeEta;
  opt.p_cutoff = std::max(std::abs(r.p_lo), std::abs(r.p_hi)) * 1.5;
  opt.bins = 32;
  opt.workers = c.workers;
  opt.dictionary = scenario_dictionary(c.sc);

  std::vector<BumpProfile> bumps = {BumpProfile::plateau(r.center, r.inner, r.outer),
                                    BumpProfile::bump(r.center, r.outer)};
  const InstanceFactory factory = [&](double e) {
    return build_timeline(c.sc, c.sc.instance(e, c.cfg));
  };
  // time localization window from the coarsest instance (frame grids agree
  // across the sweep by construction)
  {
    const ScenarioInstanceSpec inst0 = c.sc.instance(c.eps.front(), c.cfg);
    opt.time_halfwidth = 1.6 * inst0.dt * inst0.store_every;
  }
  const DefectReport rep = defect_sweep(factory, c.eps, c.sc.defect_time, bumps, opt);
  const DefectSweepResult& b0 = rep.per_bump.at(0);

  auto pairs_of = [&](const std::vector<double>& v) {
    std::vector<std::pair<double, double>> p;
    for (std::size_t i = 0; i < rep.eps.size(); ++i) p.push_back({rep.eps[i], v[i]});
    return p;
  };
  c.rep.entries.push_back(ReportEntry::make_sweep("defects.A", pairs_of(b0.A), b0.A_fit));
  c.rep.entries.push_back(ReportEntry::make_sweep("defects.rhoT", pairs_of(b0.rhoT), b0.rhoT_fit));
  c.rep.entries.push_back(ReportEntry::make_scalar("defects.B", b0.B));
  c.rep.entries.push_back(ReportEntry::make_scalar("defects.C", b0.C));
  c.rep.entries.push_back(ReportEntry::make_scalar("defects.teq_residual", b0.teq_residual));
  c.rep.entries.push_back(ReportEntry::make_flag("defects.positivity", b0.positivity_ok));
  c.rep.entries.push_back(
      ReportEntry::make_scalar("defects.first_moment_gap", rep.per_bump.at(1).first_moment_gap));
  c.rep.entries.push_back(
      ReportEntry::make_scalar("defects.measure_limit_gap", rep.measures.max_gap));
  // the wigner limit being mono-kinetic is a property of the scenario, not a
  // pass/fail condition; the beta = w conclusion is checked only when it
  // applies
  const bool mono = b0.rhoT_fit.limit <= 0.02;
  c.rep.entries.push_back(
      ReportEntry::make_scalar("defects.monokinetic_limit", mono ? 1.0 : 0.0));
  if (mono)
    c.rep.entries.push_back(
        ReportEntry::make_flag("defects.monokinetic_beta_eq_w", rep.measures.max_gap <= 0.05));

  // artifact: full defect report
  if (!c.cfg.output.empty()) {
    std::filesystem::create_directories(c.cfg.output);
    std::ofstream os(c.cfg.output + "/defects.json");
    os << defect_report_to_json(rep, c.sc.id) << "\n";
  }
}

void run_static_bound(Ctx& c) {
  const auto& r = c.sc.region;
  const PhaseSpaceTest phi("sb", BumpProfile::bump(r.center, r.outer),
                           BumpProfile::plateau(0.0, std::max(std::abs(r.p_lo), r.p_hi),
                                                2.0 * std::max(std::abs(r.p_lo), r.p_hi)));
  std::vector<std::pair<double, double>> meps;
  bool pointwise = true;
  double min_margin = std::numeric_limits<double>::infinity();
  std::vector<StaticBoundReport> reps(c.eps.size());
  parallel_for(c.eps.size(), c.workers, [&](std::size_t i) {
    const ScenarioInstanceSpec inst = c.sc.instance(c.eps[i], c.cfg);
    reps[i] = static_bound(c.sc.initial_state(inst), phi, kNodeEta);
  });
  for (std::size_t i = 0; i < c.eps.size(); ++i) {
    meps.push_back({c.eps[i], reps[i].M_eps});
    pointwise = pointwise && reps[i].pointwise_ok;
    min_margin = std::min(min_margin, reps[i].min_margin);
    if (!reps[i].integral_ok) pointwise = false;
  }
  // growth exponent: least-squares slope of log M vs log(1/eps)
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [e, m] : meps) {
    const double x = std::log(1.0 / e), y = std::log(std::max(m, 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double nn = static_cast<double>(meps.size());
  const double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
  c.rep.entries.push_back(ReportEntry::make_sweep("static_bound.M_eps", meps));
  c.rep.entries.push_back(ReportEntry::make_scalar("static_bound.growth_exponent", slope));
  c.rep.entries.push_back(ReportEntry::make_flag("static_bound.pointwise_ok", pointwise));
  c.rep.entries.push_back(ReportEntry::make_scalar("static_bound.min_margin", min_margin));
}

struct PacketRun {
  double err_final = 0.0;
  bool err_monotone = true;
  double beta_gap = 0.0, wigner_gap = 0.0, mutual_gap = 0.0;
  double y_moment = 0.0, grad_norm = 0.0;
  double push_gap = 0.0;
  double bad_set = 0.0;
  double good_set = 0.0;
  double young_frac = 0.0, young_t0 = 0.0;
};

void run_packet(Ctx& c) {
  if (!c.sc.packet) throw ConfigError("analysis 'packet' needs a wave-packet scenario");
  const PacketParams& pp = *c.sc.packet;
  const auto& r = c.sc.region;

  const PhaseSpaceTest phi("packet_phi", BumpProfile::plateau(r.center, r.inner, r.outer),
                           BumpProfile::poly_plateau(0.0, std::max(std::abs(r.p_lo), r.p_hi),
                                                     2.0 * std::max(std::abs(r.p_lo), r.p_hi), 1));
  const double delta = 0.1, R_good = 5.0;
  const double y_half = 2.0;

  std::vector<PacketRun> runs(c.eps.size());
  parallel_for(c.eps.size(), c.workers, [&](std::size_t i) {
    const double e = c.eps[i];
    const ScenarioInstanceSpec inst = c.sc.instance(e, c.cfg);
    const double T = inst.t_final;
    const ClassicalTrajectory traj =
        classical_flow(c.sc.potential, pp.x0, pp.p0, T, std::min(inst.dt, 2e-4));

    EnvelopeConfig ecfg;
    ecfg.dt = inst.dt;
    ecfg.store_every = inst.store_every;
    const Envelope env = envelope_solve(pp.amplitude, traj, c.sc.potential, ecfg);

    const WaveFunction psi0 = assemble_packet(env, 0, traj, e, inst.grid);
    const Timeline tl = propagate(normalized(psi0), c.sc.potential, stepping(c.sc, inst));

    PacketRun& out = runs[i];
    const auto errs = packet_error(tl, env, traj);
    out.err_final = errs.back().second;
    for (std::size_t k = 1; k < errs.size(); ++k)
      if (errs[k].second < 0.95 * errs[k - 1].second - 1e-12) out.err_monotone = false;

    const double Xf = traj.x_at(T), Pf = traj.p_at(T);
    const PacketPairingGap g =
        packet_limit_pairing(tl.state(tl.size() - 1), Xf, Pf, phi, pp.norm_a_sq, kNodeEta);
    out.beta_gap = g.beta_gap;
    out.wigner_gap = g.wigner_gap;
    out.mutual_gap = std::abs(g.beta_pair - g.wigner_pair);

    // a-priori bound quantities of the transformed exact solution
    for (std::size_t k : {std::size_t(0), tl.size() / 2, tl.size() - 1}) {
      const double t = tl.frames[k].t;
      const TransformedState ts = to_packet_frame(
          tl.state(k), traj.x_at(t), traj.p_at(t), traj.s_at(t), env.ygrid);
      const EnvelopeBounds b = packet_frame_bounds(ts);
      out.y_moment = std::max(out.y_moment, b.y_moment);
      out.grad_norm = std::max(out.grad_norm, b.grad_norm);
    }

    TrajectoryOptions topt;
    topt.node_eta = kNodeEta;
    const RescaledEnsemble ens =
        rescaled_trajectories(tl, pp.amplitude, pp.x0, y_half, 256, topt);
    out.push_gap =
        pushforward_identity(ens, tl, ens.times.size() / 2, phi).gap;
    const OmegaBox omega{0.0, T, -y_half, y_half};
    out.bad_set = bad_set_measure(ens, traj, delta, omega);

    const std::vector<double> seeds = lattice_seeds(tl.grid, 1);
    const std::vector<double> weights = seed_weights(tl, seeds);
    const TrajectoryEnsemble xens = integrate_kinematic(tl, seeds, weights, topt);
    out.good_set = good_set_probability(xens, traj, R_good, T);

    const YoungHistogram yh = young_histogram(ens, traj, 8, 8, delta, omega);
    out.young_frac = yh.cell_fraction_above(0.95);
    const YoungHistogram y0 =
        young_histogram(ens, traj, 1, 8, delta, {0.0, ens.times[1], -y_half, y_half});
    out.young_t0 = y0.min_score;
  });

  std::vector<std::pair<double, double>> errp, betap, badp, goodp;
  bool monotone_err = true;
  double y_m = 0.0, g_m = 0.0, push = 0.0, mutual = 0.0;
  for (std::size_t i = 0; i < c.eps.size(); ++i) {
    errp.push_back({c.eps[i], runs[i].err_final});
    betap.push_back({c.eps[i], runs[i].beta_gap});
    badp.push_back({c.eps[i], runs[i].bad_set});
    goodp.push_back({c.eps[i], runs[i].good_set});
    monotone_err = monotone_err && runs[i].err_monotone;
    y_m = std::max(y_m, runs[i].y_moment);
    g_m = std::max(g_m, runs[i].grad_norm);
    push = std::max(push, runs[i].push_gap);
    mutual = std::max(mutual, runs[i].mutual_gap);
  }
  auto loglog_slope = [](const std::vector<std::pair<double, double>>& p) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [e, v] : p) {
      const double x = std::log(e), y = std::log(std::max(v, 1e-300));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double n = static_cast<double>(p.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  c.rep.entries.push_back(ReportEntry::make_sweep("packet.error", errp));
  c.rep.entries.push_back(
      ReportEntry::make_scalar("packet.error_exponent", loglog_slope(errp)));
  c.rep.entries.push_back(ReportEntry::make_flag("packet.error_monotone_t", monotone_err));
  c.rep.entries.push_back(ReportEntry::make_sweep("packet.beta_gap", betap));
  c.rep.entries.push_back(
      ReportEntry::make_scalar("packet.beta_gap_exponent", loglog_slope(betap)));
  c.rep.entries.push_back(ReportEntry::make_scalar("packet.mutual_gap_max", mutual));
  c.rep.entries.push_back(ReportEntry::make_scalar(
      "packet.mutual_gap_min_eps", runs.back().mutual_gap));
  c.rep.entries.push_back(ReportEntry::make_scalar("packet.apriori_y_moment", y_m));
  c.rep.entries.push_back(ReportEntry::make_scalar("packet.apriori_grad_norm", g_m));
  c.rep.entries.push_back(ReportEntry::make_scalar("packet.pushforward_gap", push));
  c.rep.entries.push_back(ReportEntry::make_sweep("packet.bad_set", badp));
  bool bad_monotone = true;
  for (std::size_t i = 1; i < badp.size(); ++i)
    if (badp[i].second > 1.1 * badp[i - 1].second + 1e-12) bad_monotone = false;
  c.rep.entries.push_back(ReportEntry::make_flag("packet.bad_set_monotone", bad_monotone));
  const OmegaBox omega{0.0, c.sc.instance(c.eps.front(), c.cfg).t_final, -y_half, y_half};
  c.rep.entries.push_back(ReportEntry::make_scalar(
      "packet.bad_set_final_fraction", runs.back().bad_set / omega.volume()));
  c.rep.entries.push_back(ReportEntry::make_sweep("packet.good_set", goodp));
  double good_min = 1.0;
  for (const auto& [e, v] : goodp) good_min = std::min(good_min, v);
  c.rep.entries.push_back(ReportEntry::make_scalar("packet.good_set_min", good_min));
  bool young_monotone = true;
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (runs[i].young_frac < runs[i - 1].young_frac - 0.1) young_monotone = false;
  c.rep.entries.push_back(ReportEntry::make_flag("packet.young_monotone", young_monotone));
  c.rep.entries.push_back(
      ReportEntry::make_scalar("packet.young_frac_final", runs.back().young_frac));
  c.rep.entries.push_back(
      ReportEntry::make_scalar("packet.young_t0_min_score", runs.back().young_t0));
}

void run_cone(Ctx& c) {
  if (!c.sc.cone) throw ConfigError("analysis 'cone' needs the cone scenario");
  const ConeSpec& spec = *c.sc.cone;
  auto grid_for_eps = [&](double e) { return c.sc.instance(e, c.cfg).grid; };

  const double pr = 3.0;
  const PhaseSpaceTest phi_p2("p2", BumpProfile::plateau(0.0, 1.5, 2.5),
                              BumpProfile::poly_plateau(0.0, 1.8, pr, 2));
  const PhaseSpaceTest phi_p1("p1_odd", BumpProfile::plateau(0.0, 1.5, 2.5),
                              BumpProfile::poly_plateau(0.0, 1.8, pr, 1));
  const PhaseSpaceTest phi_m0("m0", BumpProfile::plateau(0.0, 1.5, 2.5),
                              BumpProfile::plateau(0.0, 1.8, pr));

  const ConeLimitReport p2 = cone_limit_pairing(spec, phi_p2, c.eps, grid_for_eps, kNodeEta);
  const ConeLimitReport p1 = cone_limit_pairing(spec, phi_p1, c.eps, grid_for_eps, kNodeEta);
  const ConeLimitReport m0 = cone_limit_pairing(spec, phi_m0, c.eps, grid_for_eps, kNodeEta);

  auto emit = [&](const std::string& name, const ConeLimitReport& r) {
    std::vector<std::pair<double, double>> bp, wp;
    for (const auto& pr2 : r.pairs) {
      bp.push_back({pr2.eps, pr2.beta});
      wp.push_back({pr2.eps, pr2.wigner});
    }
    c.rep.entries.push_back(ReportEntry::make_sweep("cone." + name + "_beta", bp, r.beta_fit));
    c.rep.entries.push_back(ReportEntry::make_sweep("cone." + name + "_wigner", wp, r.wigner_fit));
    c.rep.entries.push_back(ReportEntry::make_scalar("cone." + name + "_limit", r.limit));
    c.rep.entries.push_back(
        ReportEntry::make_scalar("cone." + name + "_beta_gap", r.beta_gap_at_min_eps));
    c.rep.entries.push_back(
        ReportEntry::make_scalar("cone." + name + "_wigner_gap", r.wigner_gap_at_min_eps));
    c.rep.entries.push_back(
        ReportEntry::make_scalar("cone." + name + "_mutual_gap", r.mutual_gap_at_min_eps));
  };
  emit("p2", p2);
  emit("p1", p1);
  emit("m0", m0);

  // non-mono-kinetic certificate from the extrapolated moments
  const double m0l = m0.beta_fit.limit, m1l = p1.beta_fit.limit, m2l = p2.beta_fit.limit;
  const double cs_gap = (m0l > 0.0) ? (m2l - m1l * m1l / m0l) : 0.0;
  c.rep.entries.push_back(ReportEntry::make_scalar("cone.limit_cs_gap", cs_gap));
}

}  // namespace

Timeline build_timeline(const Scenario& sc, const ScenarioInstanceSpec& inst) {
  const WaveFunction psi0 = sc.initial_state(inst);
  return propagate(psi0, sc.potential, stepping(sc, inst));
}

RunReport run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const Scenario& sc = find_scenario(cfg.scenario);
  sc.potential.check_regularity(sc.instance(
      (cfg.epsilon.empty() ? sc.default_epsilon : cfg.epsilon).front(), cfg).grid);

  RunReport rep;
  rep.scenario = sc.id;
  rep.config_text = cfg.serialize();

  Ctx ctx{sc, cfg, cfg.epsilon.empty() ? sc.default_epsilon : cfg.epsilon, rep,
          resolve_workers(cfg.workers)};
  const std::vector<std::string> analyses =
      cfg.analyses.empty() ? sc.default_analyses : cfg.analyses;

  for (const std::string& a : analyses) {
    if (a == "conservation")
      run_conservation(ctx);
    else if (a == "identities")
      run_identities(ctx);
    else if (a == "equivariance")
      run_equivariance(ctx);
    else if (a == "vlasov")
      run_vlasov(ctx);
    else if (a == "defects")
      run_defects(ctx);
    else if (a == "static_bound")
      run_static_bound(ctx);
    else if (a == "packet")
      run_packet(ctx);
    else if (a == "cone")
      run_cone(ctx);
    else
      throw ConfigError("unknown analysis '" + a + "'");
  }
  return rep;
}

RunReport run_experiment_to_dir(const ExperimentConfig& cfg) {
  std::filesystem::create_directories(cfg.output);
  const RunReport rep = run_experiment(cfg);
  write_report_file(cfg.output + "/run.json", rep);

  // reference field dump of the first-eps initial state
  const Scenario& sc = find_scenario(cfg.scenario);
  const std::vector<double> eps = cfg.epsilon.empty() ? sc.default_epsilon : cfg.epsilon;
  const ScenarioInstanceSpec inst = sc.instance(eps.front(), cfg);
  export_hydro_csv(cfg.output + "/hydro_initial.csv",
                   extract_fields(sc.initial_state(inst), 1e-6));
  return rep;
}

}  // namespace bohmlab
