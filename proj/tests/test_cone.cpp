#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bohmlab/cone.hpp"
#include "bohmlab/errors.hpp"
#include "bohmlab/hydrodynamics.hpp"
#include "bohmlab/phase_measure.hpp"
#include "bohmlab/wigner.hpp"

using namespace bohmlab;
namespace {
constexpr double kPi = std::numbers::pi;

Grid cone_grid(double eps) {
  const double half = 14.0 * std::sqrt(eps);
  return Grid(AxisSpec{-half, half, 4096});
}
}  // namespace

TEST_CASE("cone state: unit mass, concentration, directional phase limits") {
  const ConeSpec spec = ConeSpec::gaussian(1.0);
  for (double eps : {0.1, 0.01, 0.001}) {
    const Grid g = cone_grid(eps);
    const WaveFunction psi = build_cone_state(spec, g, eps);
    CHECK(l2_norm_sq(psi) == doctest::Approx(1.0).epsilon(1e-8));

    // mass concentrates: fraction inside |x| <= 10 sqrt(eps) >= 0.99
    const Field rho = density(psi);
    double inside = 0.0;
    for (int i = 0; i < g.n(0); ++i)
      if (std::abs(g.node(i)) <= 10.0 * std::sqrt(eps)) inside += rho[i];
    inside *= g.cell_volume();
    CHECK(inside >= 0.99);

    // S'(delta w) -> chi(w) = +-1 along rays away from the mollified tip
    const double d0 = 2.0 * g.dx();
    CHECK(cone_phase_grad(spec, 30.0 * d0, d0) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(cone_phase_grad(spec, -30.0 * d0, d0) == doctest::Approx(-1.0).epsilon(1e-3));
    CHECK(std::abs(cone_phase_grad(spec, 0.0, d0)) < 1e-14);
  }

  // d=1 sign phase: u = sign(x) away from the tip (derivative of |x|)
  {
    const double eps = 0.01;
    const Grid g = cone_grid(eps);
    const WaveFunction psi = build_cone_state(spec, g, eps);
    const HydroFields f = extract_fields(psi);
    const double d0 = 2.0 * g.dx();
    for (int i = 0; i < g.n(0); i += 37) {
      const double x = g.node(i);
      if (f.mask[i] || std::abs(x) < 20.0 * d0 || std::abs(x) > 5.0 * std::sqrt(eps)) continue;
      CHECK(f.u[i] == doctest::Approx(x > 0 ? 1.0 : -1.0).epsilon(5e-3));
    }
  }
}

TEST_CASE("cone pairings converge to the non-mono-kinetic limit") {
  const ConeSpec spec = ConeSpec::gaussian(1.0);
  const std::vector<double> eps = {1e-1, 4.6416e-2, 2.1544e-2, 1e-2, 4.6416e-3};

  // phi = p^2 times a spatial plateau: limit = (1 + 1)/2 = 1
  const PhaseSpaceTest p2("p2", BumpProfile::plateau(0.0, 1.5, 2.5),
                          BumpProfile::poly_plateau(0.0, 1.8, 3.0, 2));
  const ConeLimitReport r2 = cone_limit_pairing(spec, p2, eps, cone_grid);
  CHECK(r2.limit == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(r2.beta_fit.limit - 1.0) < 0.05);
  CHECK(std::abs(r2.wigner_fit.limit - 1.0) < 0.05);
  CHECK(r2.mutual_gap_at_min_eps < 0.05);

  // odd phi: S even makes the limit symmetric, pairings -> 0
  const PhaseSpaceTest p1("p1", BumpProfile::plateau(0.0, 1.5, 2.5),
                          BumpProfile::poly_plateau(0.0, 1.8, 3.0, 1));
  const ConeLimitReport r1 = cone_limit_pairing(spec, p1, eps, cone_grid);
  CHECK(r1.limit == doctest::Approx(0.0).scale(1.0));
  CHECK(std::abs(r1.beta_fit.limit) < 0.05);
  CHECK(std::abs(r1.wigner_fit.limit) < 0.05);

  // mass pairing: limit = prof_mass = 1
  const PhaseSpaceTest m0("m0", BumpProfile::plateau(0.0, 1.5, 2.5),
                          BumpProfile::plateau(0.0, 1.8, 3.0));
  const ConeLimitReport rm = cone_limit_pairing(spec, m0, eps, cone_grid);
  CHECK(std::abs(rm.beta_fit.limit - 1.0) < 0.02);

  // the extrapolated second-moment gap certifies non-mono-kinetic limits
  const double cs_gap =
      r2.beta_fit.limit - r1.beta_fit.limit * r1.beta_fit.limit / rm.beta_fit.limit;
  CHECK(cs_gap >= 0.5);

  // beta is exactly mono-kinetic at every eps: each atom sits at p = S'(x)
  {
    const double e = eps.back();
    const Grid g = cone_grid(e);
    const WaveFunction psi = build_cone_state(spec, g, e);
    const HydroFields f = extract_fields(psi);
    const double d0 = 2.0 * g.dx();
    const EmpiricalPhaseMeasure beta = bohmian_measure(f);
    for (std::size_t a = 0; a < beta.atoms().size(); a += 97) {
      const PhaseAtom& atom = beta.atoms()[a];
      CHECK(atom.p == doctest::Approx(cone_phase_grad(spec, atom.x, d0)).epsilon(5e-3).scale(1.0));
    }
  }
}

TEST_CASE("cone guards") {
  const ConeSpec spec = ConeSpec::gaussian(1.0);
  Grid tiny(AxisSpec{-0.05, 0.05, 256});
  CHECK_THROWS_AS(build_cone_state(spec, tiny, 0.1), NumericalError);
}
