#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bohmlab/errors.hpp"
#include "bohmlab/grid.hpp"
#include "bohmlab/interpolant.hpp"
#include "bohmlab/parallel.hpp"
#include "bohmlab/potential.hpp"
#include "bohmlab/ratefit.hpp"
#include "bohmlab/spectral.hpp"
#include "bohmlab/test_function.hpp"
#include "bohmlab/wavefunction.hpp"

using namespace bohmlab;
namespace {
constexpr double kPi = std::numbers::pi;

// deterministic band-limited smooth periodic field
CField random_smooth_field(const Grid& g, unsigned seed, int kmax = 12) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> N(0.0, 1.0);
  CField f(g.size(), cplx(0.0, 0.0));
  for (int k = -kmax; k <= kmax; ++k) {
    const cplx c(N(rng), N(rng));
    const double decay = std::exp(-0.08 * k * k);
    for (int i = 0; i < g.n(0); ++i)
      f[i] += c * decay * std::polar(1.0, k * 2.0 * kPi / g.length(0) * g.node(i));
  }
  return f;
}
}  // namespace

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(Grid(AxisSpec{0.0, 1.0, 100}), ConfigError);  // not a power of two
  CHECK_THROWS_AS(Grid(AxisSpec{1.0, -1.0, 64}), ConfigError);
  Grid g(AxisSpec{-20.0, 20.0, 1024});
  CHECK(g.dx() == doctest::Approx(40.0 / 1024));
  // momentum grid is the exact Fourier dual
  CHECK(g.wavenumber(1) == doctest::Approx(2.0 * kPi / 40.0).epsilon(1e-15));
  CHECK(g.wavenumber(1023) == doctest::Approx(-2.0 * kPi / 40.0).epsilon(1e-15));
  CHECK(g.dk() * g.length() == doctest::Approx(2.0 * kPi));
}

TEST_CASE("l2 norm: normalized gaussian, homogeneity, plane wave") {
  Grid g(AxisSpec{-20.0, 20.0, 1024});
  const double s0 = 1.3;
  WaveFunction psi = WaveFunction::sample(g, 0.5, [&](double x) {
    return std::pow(kPi * s0 * s0, -0.25) * std::exp(-0.5 * x * x / (s0 * s0));
  });
  CHECK(l2_norm_sq(psi) == doctest::Approx(1.0).epsilon(1e-12));

  WaveFunction two = psi;
  for (auto& v : two.values) v *= 2.0;
  CHECK(l2_norm_sq(two) == doctest::Approx(4.0 * l2_norm_sq(psi)).epsilon(1e-14));

  Grid unit(AxisSpec{0.0, 1.0, 128});
  WaveFunction pw = WaveFunction::sample(unit, 0.5, [&](double x) {
    return std::polar(1.0, 2.0 * kPi * 4.0 * x / 0.5);
  });
  CHECK(l2_norm_sq(pw) == doctest::Approx(1.0).epsilon(1e-14));  // box length 1

  WaveFunction bad = psi;
  bad.values[3] = cplx(std::nan(""), 0.0);
  CHECK_THROWS_AS(l2_norm_sq(bad), NumericalError);
}

TEST_CASE("spectral gradient: constant, Fourier eigenfunction, FD oracle") {
  Grid g(AxisSpec{-kPi, kPi, 256});
  CField c(g.size(), cplx(2.5, -1.0));
  for (const cplx& v : spectral::gradient(c, g)) CHECK(std::abs(v) < 1e-13);

  const double k = 7.0;  // integer box wavenumber (L = 2 pi)
  CField e(g.size());
  for (int i = 0; i < g.n(0); ++i) e[i] = std::polar(1.0, k * g.node(i));
  const CField de = spectral::gradient(e, g);
  for (int i = 0; i < g.n(0); ++i) CHECK(std::abs(de[i] - cplx(0.0, k) * e[i]) < 1e-12 * k);

  // Gaussian bump vs 2nd-order centered differences: error O(dx^2)
  auto fd_error = [](int n) {
    Grid gg(AxisSpec{-10.0, 10.0, n});
    Field f(gg.size());
    for (int i = 0; i < n; ++i) f[i] = std::exp(-gg.node(i) * gg.node(i));
    const Field df = spectral::gradient_real(f, gg);
    double err = 0.0;
    const double h = gg.dx();
    for (int i = 0; i < n; ++i) {
      const double fd = (f[(i + 1) % n] - f[(i + n - 1) % n]) / (2.0 * h);
      err = std::max(err, std::abs(df[i] - fd));
    }
    return err;
  };
  const double e1 = fd_error(256), e2 = fd_error(512);
  CHECK(e1 / e2 > 3.5);  // the FD oracle approaches the spectral value at order 2
  CHECK(e2 < 1e-2);
}

TEST_CASE("quadrature: constant, periodic orthogonality, gaussian") {
  Grid g(AxisSpec{-20.0, 20.0, 512});
  Field one(g.size(), 1.0);
  CHECK(quadrature(one, g) == doctest::Approx(40.0).epsilon(1e-15));

  Field sinx(g.size());
  for (int i = 0; i < g.n(0); ++i) sinx[i] = std::sin(2.0 * kPi * g.node(i) / 40.0);
  CHECK(std::abs(quadrature(sinx, g)) < 1e-14);

  Field gauss(g.size());
  for (int i = 0; i < g.n(0); ++i) gauss[i] = std::exp(-g.node(i) * g.node(i)) / std::sqrt(kPi);
  CHECK(quadrature(gauss, g) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("parseval and laplacian composition properties") {
  Grid g(AxisSpec{-5.0, 5.0, 256});
  for (unsigned seed : {1u, 7u, 23u}) {
    CField f = random_smooth_field(g, seed);
    WaveFunction psi(g, f, 1.0);
    CHECK(spectral::parseval_norm_sq(f, g) == doctest::Approx(l2_norm_sq(psi)).epsilon(1e-12));
    const CField g2 = spectral::gradient(spectral::gradient(f, g), g);
    const CField lap = spectral::laplacian(f, g);
    double scale = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      scale = std::max(scale, std::abs(lap[i]));
      diff = std::max(diff, std::abs(g2[i] - lap[i]));
    }
    CHECK(diff < 1e-10 * std::max(scale, 1.0));
  }
}

TEST_CASE("spectral upsample and interpolant reproduce band-limited values") {
  Grid g(AxisSpec{0.0, 2.0 * kPi, 64});
  CField f(g.size());
  for (int i = 0; i < g.n(0); ++i)
    f[i] = std::polar(1.0, 3.0 * g.node(i)) + 0.5 * std::polar(1.0, -5.0 * g.node(i));
  const CField fine = spectral::upsample(f, g, 4);
  for (int j = 0; j < 4 * g.n(0); ++j) {
    const double x = g.x_min() + j * g.dx() / 4.0;
    const cplx exact = std::polar(1.0, 3.0 * x) + 0.5 * std::polar(1.0, -5.0 * x);
    CHECK(std::abs(fine[j] - exact) < 1e-12);
  }

  Field re(g.size());
  for (int i = 0; i < g.n(0); ++i) re[i] = std::cos(3.0 * g.node(i));
  PeriodicInterpolant interp(re, g, 8);
  for (double x : {0.123, 1.77, 4.1, 6.2})
    CHECK(interp(x) == doctest::Approx(std::cos(3.0 * x)).epsilon(1e-6));
}

TEST_CASE("bump profiles: compact support, derivative consistency") {
  const auto check_profile = [](const BumpProfile& b) {
    CHECK(b.value(b.support_lo() - 0.1) == 0.0);
    CHECK(b.value(b.support_hi() + 0.1) == 0.0);
    CHECK(b.deriv(b.support_lo() - 0.1) == 0.0);
    const double h = 1e-6;
    for (double f = 0.15; f < 0.9; f += 0.17) {
      const double x = b.support_lo() + f * (b.support_hi() - b.support_lo());
      const double fd = (b.value(x + h) - b.value(x - h)) / (2.0 * h);
      CHECK(b.deriv(x) == doctest::Approx(fd).epsilon(1e-5).scale(std::max(1.0, b.sup_deriv())));
    }
  };
  check_profile(BumpProfile::bump(0.3, 2.0));
  check_profile(BumpProfile::plateau(-1.0, 1.0, 2.5));
  check_profile(BumpProfile::poly_bump(0.0, 1.5, 2));
  check_profile(BumpProfile::poly_plateau(0.0, 1.5, 3.0, 2));

  const BumpProfile p = BumpProfile::plateau(0.0, 1.0, 2.0);
  CHECK(p.value(0.5) == 1.0);
  CHECK(p.value(0.0) == 1.0);
  const BumpProfile q = BumpProfile::poly_plateau(0.0, 1.5, 3.0, 2);
  CHECK(q.value(1.0) == doctest::Approx(1.0).epsilon(1e-15));  // = p^2 on the inner ball
  CHECK(q.value(-1.0) == doctest::Approx(1.0).epsilon(1e-15));
  const BumpProfile odd = BumpProfile::poly_plateau(0.0, 1.5, 3.0, 1);
  CHECK(odd.value(1.0) == doctest::Approx(1.0));
  CHECK(odd.value(-1.0) == doctest::Approx(-1.0));

  // plateau mass: the inner ball contributes exactly 2, shoulders add less than 2
  CHECK(p.mass() > 2.0);
  CHECK(p.mass() < 4.0);
}

TEST_CASE("potential evaluators match finite differences") {
  const Potential V = Potential::lorentz_well(0.5, 1.0);
  const double h = 1e-5;
  for (double x : {-2.0, -0.7, 0.0, 0.4, 1.9}) {
    const double fd1 = (V.value(x + h) - V.value(x - h)) / (2.0 * h);
    const double fd2 = (V.value(x + h) - 2.0 * V.value(x) + V.value(x - h)) / (h * h);
    CHECK(V.grad(x) == doctest::Approx(fd1).epsilon(1e-7));
    CHECK(V.hess(x) == doctest::Approx(fd2).epsilon(1e-5));
  }
  CHECK(Potential::harmonic().unbounded_test_only());
  CHECK(!Potential::lorentz_well(0.5).unbounded_test_only());
  Grid g(AxisSpec{-10.0, 10.0, 256});
  Potential::lorentz_well(0.5).check_regularity(g);  // C3b bound holds on the grid
}

TEST_CASE("fit_rate synthetic sequences") {
  const std::vector<double> eps = geometric_eps(1e-1, 1e-3, 7);
  CHECK(eps.front() == doctest::Approx(1e-1));
  CHECK(eps.back() == doctest::Approx(1e-3));
  CHECK(eps.size() == 7);

  std::vector<double> f1, f2, f3;
  for (double e : eps) {
    f1.push_back(3.0 + e);
    f2.push_back(1.0 + 2.0 * std::sqrt(e));
    f3.push_back(std::sin(1.0 / e));
  }
  const RateFit r1 = fit_rate(eps, f1);
  CHECK(r1.converged);
  CHECK(r1.limit == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(r1.rate == doctest::Approx(1.0).epsilon(0.01));

  const RateFit r2 = fit_rate(eps, f2);
  CHECK(r2.converged);
  CHECK(r2.limit == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r2.rate == doctest::Approx(0.5).epsilon(0.1));  // 0.5 +- 0.05

  CHECK(!fit_rate(eps, f3).converged);  // oscillatory: flagged non-convergent

  CHECK_THROWS_AS(fit_rate(std::vector<double>{0.1, 0.01, 0.001}, std::vector<double>{1, 2, 3}),
                  ConfigError);
}

TEST_CASE("parallel_for covers all jobs exactly once") {
  std::vector<int> hits(64, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (int h : hits) CHECK(h == 1);
}

TEST_CASE("d = 2 spectral calculus") {
  Grid g(AxisSpec{0.0, 2.0 * kPi, 32}, AxisSpec{-kPi, kPi, 16});
  CHECK(g.size() == 32u * 16u);
  CHECK(g.cell_volume() == doctest::Approx(g.dx(0) * g.dx(1)));

  // f = exp(i(3x + 5y)): exact eigenfunction of both partial derivatives
  CField f(g.size());
  for (int i = 0; i < g.n(0); ++i)
    for (int j = 0; j < g.n(1); ++j)
      f[g.index(i, j)] = std::polar(1.0, 3.0 * g.node(i, 0) + 5.0 * g.node(j, 1));
  const CField dx = spectral::gradient(f, g, 0);
  const CField dy = spectral::gradient(f, g, 1);
  const CField lap = spectral::laplacian(f, g);
  for (std::size_t k = 0; k < f.size(); k += 7) {
    CHECK(std::abs(dx[k] - cplx(0.0, 3.0) * f[k]) < 1e-11);
    CHECK(std::abs(dy[k] - cplx(0.0, 5.0) * f[k]) < 1e-11);
    CHECK(std::abs(lap[k] + 34.0 * f[k]) < 1e-10);
  }
  CField one(g.size(), cplx(1.0, 0.0));
  CHECK(std::abs(quadrature(one, g) - g.length(0) * g.length(1)) < 1e-12);
}
