#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bohmlab/defects.hpp"
#include "bohmlab/propagator.hpp"
#include "bohmlab/vlasov.hpp"

using namespace bohmlab;
namespace {
constexpr double kPi = std::numbers::pi;

// two-wave instance on the production box, carrier snapped to the lattice
Timeline two_wave_timeline(double eps_req, int n, double dt, double T, int store) {
  Grid g(AxisSpec{-5.5, 5.5, n});
  const double dk = 2.0 * kPi / 11.0;
  const double eps = 1.0 / (std::round(1.0 / (eps_req * dk)) * dk);
  const WaveFunction psi = normalized(WaveFunction::sample(g, eps, [&](double x) {
    return cplx(std::exp(-0.5 * x * x) * std::cos(x / eps), 0.0);
  }));
  return propagate(psi, Potential::zero(), PropagatorConfig{dt, std::lround(T / dt), store});
}

Timeline wkb_timeline(double eps, int n, double dt, double T, int store) {
  Grid g(AxisSpec{-2.0 * kPi, 2.0 * kPi, n});
  const WaveFunction psi = WaveFunction::sample(g, eps, [&](double x) {
    return std::pow(kPi, -0.25) * std::exp(-0.5 * x * x) *
           std::polar(1.0, 0.5 * std::sin(x) / eps);
  });
  return propagate(psi, Potential::zero(), PropagatorConfig{dt, std::lround(T / dt), store});
}
}  // namespace

TEST_CASE("vlasov weak residual: vanishing, stationary, dt refinement") {
  // far-away test function: every pairing vanishes identically
  {
    Grid g(AxisSpec{-20.0, 20.0, 512});
    WaveFunction psi0 = WaveFunction::sample(g, 0.5, [&](double x) {
      return std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
    });
    const Timeline tl = propagate(psi0, Potential::zero(), PropagatorConfig{1e-3, 40, 10});
    const VlasovTest far{BumpProfile::plateau(0.0, 0.01, 0.03), BumpProfile::bump(15.0, 1.0),
                         BumpProfile::plateau(0.0, 1.0, 2.0)};
    CHECK(vlasov_weak_residual(tl, Potential::zero(), far) < 1e-14);
  }

  // stationary plane wave: all fields constant in time
  {
    Grid g(AxisSpec{-kPi, kPi, 256});
    const double eps = 0.1;
    const double amp = 1.0 / std::sqrt(2.0 * kPi);
    WaveFunction pw = WaveFunction::sample(
        g, eps, [&](double x) { return amp * std::polar(1.0, x / eps); });
    PropagatorConfig pc{1e-3, 200, 1};
    pc.boundary_guard = false;
    const Timeline tl = propagate(pw, Potential::zero(), pc);
    const VlasovTest test{BumpProfile::plateau(0.0, 0.06, 0.16), BumpProfile::bump(0.0, 2.5),
                          BumpProfile::plateau(1.0, 1.0, 2.0)};
    CHECK(vlasov_weak_residual(tl, Potential::zero(), test) < 1e-8);
  }

  // free gaussian: residual is O(dt^2); halving dt gains >= 3.5x
  {
    Grid g(AxisSpec{-20.0, 20.0, 1024});
    const double eps = 0.5;
    auto initial = [&] {
      return WaveFunction::sample(g, eps, [&](double x) {
        const double d = x + 2.0;
        return std::pow(kPi, -0.25) * std::exp(-0.5 * d * d) * std::polar(1.0, d / eps);
      });
    };
    const VlasovTest test{BumpProfile::plateau(0.0, 0.2, 0.55), BumpProfile::bump(-1.0, 4.0),
                          BumpProfile::plateau(1.0, 1.6, 2.6)};
    auto residual = [&](double dt) {
      const Timeline tl =
          propagate(initial(), Potential::zero(), PropagatorConfig{dt, std::lround(0.7 / dt), 1});
      return vlasov_weak_residual(tl, Potential::zero(), test);
    };
    // halving dt in the dt^2-dominated regime; below ~4e-3 the residual
    // bottoms out at the bump-quadrature floor near 4e-9
    const double r1 = residual(8e-3);
    const double r2 = residual(4e-3);
    CHECK(r1 / r2 > 3.5);
    CHECK(r2 < 1e-5);
  }
}

TEST_CASE("defect A field: plane wave zero, WKB O(eps^2), two-wave oracle") {
  {
    Grid g(AxisSpec{-kPi, kPi, 256});
    const WaveFunction pw = WaveFunction::sample(
        g, 0.1, [&](double x) { return std::polar(1.0, x / 0.1); });
    const Field A = defect_A_field(extract_fields(pw));
    for (double v : A) CHECK(std::abs(v) < 1e-18);
  }

  {  // fixed-amplitude WKB family: pairing = O(eps^2) -> limit 0 at rate ~2
    const BumpProfile chi = BumpProfile::plateau(0.0, 3.0, 4.0);
    std::vector<double> eps_list = {0.1, 0.05, 0.025, 0.0125}, vals;
    for (double eps : eps_list) {
      Grid g(AxisSpec{-2.0 * kPi, 2.0 * kPi, 2048});
      const WaveFunction psi = WaveFunction::sample(g, eps, [&](double x) {
        return std::pow(kPi, -0.25) * std::exp(-0.5 * x * x) *
               std::polar(1.0, 0.5 * std::sin(x) / eps);
      });
      const Field A = defect_A_field(extract_fields(psi));
      double pairing = 0.0;
      for (int i = 0; i < g.n(0); ++i) pairing += A[i] * chi.value(g.node(i));
      vals.push_back(pairing * g.dx());
    }
    const RateFit fit = fit_rate(eps_list, vals);
    CHECK(fit.converged);
    CHECK(std::abs(fit.limit) < 1e-4);
    CHECK(fit.rate == doctest::Approx(2.0).epsilon(0.15));
  }

  {  // bare two-wave state sqrt(2) cos(x/eps): A = 2 sin^2, pairing -> bump mass
    Grid g(AxisSpec{-5.5, 5.5, 2048});
    const double dk = 2.0 * kPi / 11.0;
    const double eps = 1.0 / (std::round(1.0 / (0.01 * dk)) * dk);
    const WaveFunction psi = WaveFunction::sample(g, eps, [&](double x) {
      return cplx(std::sqrt(2.0) * std::cos(x / eps), 0.0);
    });
    const Field A = defect_A_field(extract_fields(psi));
    const BumpProfile chi = BumpProfile::bump(0.0, 3.0);
    double pairing = 0.0, chi_mass = 0.0;
    for (int i = 0; i < g.n(0); ++i) {
      pairing += A[i] * chi.value(g.node(i));
      chi_mass += chi.value(g.node(i));
    }
    CHECK(pairing / chi_mass == doctest::Approx(1.0).epsilon(0.02));
  }
}

TEST_CASE("temperature tensor: plane wave zero, two-wave variance one") {
  {
    Grid g(AxisSpec{-kPi, kPi, 256});
    const double amp = 1.0 / std::sqrt(2.0 * kPi);
    const WaveFunction pw = WaveFunction::sample(
        g, 0.1, [&](double x) { return amp * std::polar(1.0, x / 0.1); });
    const Field T = temperature_tensor(wigner_transform(pw));
    for (double v : T) CHECK(std::abs(v) < 1e-8);
  }
  {
    // equal two-wave superposition p = +-1: T -> ((p1-p2)/2)^2 = 1
    Grid g(AxisSpec{-5.5, 5.5, 2048});
    const double dk = 2.0 * kPi / 11.0;
    const double eps = 1.0 / (std::round(1.0 / (0.005 * dk)) * dk);
    const WaveFunction psi = normalized(WaveFunction::sample(g, eps, [&](double x) {
      return cplx(std::exp(-0.5 * x * x) * std::cos(x / eps), 0.0);
    }));
    const WignerAnalysis a = wigner_analyze(psi);
    const Field rhoT = a.rho_T();
    // <rho T, chi> / <rho, chi> ~ 1 (mass-weighted temperature)
    const BumpProfile chi = BumpProfile::plateau(0.0, 3.0, 4.0);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < g.n(0); ++i) {
      num += rhoT[i] * chi.value(g.node(i));
      den += a.m0[i] * chi.value(g.node(i));
    }
    CHECK(num / den == doctest::Approx(1.0).epsilon(0.02));
  }
}

TEST_CASE("defect sweep: two-wave teq identity at moderate eps") {
  DefectOptions opt;
  opt.p_cutoff = 3.0;
  opt.bins = 32;
  opt.workers = 4;
  opt.dictionary = default_dictionary(-4.4, 4.4, -2.0, 2.0);
  const std::vector<double> eps = {0.1, 0.0464, 0.0215, 0.01};
  const std::vector<BumpProfile> bumps = {BumpProfile::plateau(0.0, 3.5, 4.4),
                                          BumpProfile::bump(0.0, 4.4)};
  const InstanceFactory factory = [&](double e) {
    const int n = (e > 0.02) ? 1024 : 2048;
    return two_wave_timeline(e, n, 5e-4, 0.02, 10);
  };
  opt.time_halfwidth = 0.012;
  const DefectReport rep = defect_sweep(factory, eps, 0.01, bumps, opt);
  const DefectSweepResult& b = rep.per_bump.front();
  CHECK(b.A_fit.limit == doctest::Approx(1.0).epsilon(0.08));
  CHECK(b.rhoT_fit.limit == doctest::Approx(1.0).epsilon(0.08));
  CHECK(std::abs(b.B) < 0.05);
  CHECK(std::abs(b.C) < 0.05);
  CHECK(b.teq_residual < 0.1);
  CHECK(b.positivity_ok);
  CHECK(rep.per_bump.at(1).first_moment_gap < 0.1);
}

TEST_CASE("defect sweep: single WKB branch is mono-kinetic (B = C = 0)") {
  DefectOptions opt;
  opt.p_cutoff = 1.8;
  opt.bins = 32;
  opt.workers = 4;
  opt.dictionary = default_dictionary(-4.5, 4.5, -1.2, 1.2);
  const std::vector<double> eps = {0.1, 0.0464, 0.0215, 0.01};
  const std::vector<BumpProfile> bumps = {BumpProfile::plateau(0.0, 3.5, 4.5),
                                          BumpProfile::bump(0.0, 4.5)};
  const InstanceFactory factory = [&](double e) {
    return wkb_timeline(e, 1024, 5e-4, 0.04, 10);
  };
  opt.time_halfwidth = 0.012;
  const DefectReport rep = defect_sweep(factory, eps, 0.02, bumps, opt);
  const DefectSweepResult& b = rep.per_bump.front();
  CHECK(std::abs(b.A_fit.limit) < 0.02);
  CHECK(std::abs(b.rhoT_fit.limit) < 0.02);
  CHECK(std::abs(b.B) < 0.02);
  CHECK(std::abs(b.C) < 0.02);
  CHECK(b.teq_residual < 0.02);
  CHECK(b.positivity_ok);
  // mono-kinetic wigner limit: beta and wigner dictionary limits agree
  CHECK(rep.measures.max_gap < 0.05);
}
