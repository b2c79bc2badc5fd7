#include "bohmlab/trajectories.hpp"

#include <algorithm>
#include <cmath>

#include "bohmlab/errors.hpp"
#include "bohmlab/hydrodynamics.hpp"
#include "bohmlab/spectral.hpp"

namespace bohmlab {

double TrajectoryEnsemble::total_weight() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

double TrajectoryEnsemble::excluded_mass() const {
  double s = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (flagged[i]) s += weights[i];
  return s;
}

std::vector<double> lattice_seeds(const Grid& grid, int refine) {
  if (refine < 1) throw ConfigError("lattice_seeds: refine must be >= 1");
  const int m = grid.n(0) * refine;
  const double h = grid.length(0) / m;
  std::vector<double> seeds(m);
  for (int i = 0; i < m; ++i) seeds[i] = grid.x_min(0) + i * h;
  return seeds;
}

std::vector<double> seed_weights(const Timeline& tl, std::span<const double> seeds) {
  const Field rho0 = density(tl.state(0));
  PeriodicInterpolant rho(rho0, tl.grid, 4);
  // uniform lattice assumed; h from total count
  const double h = tl.grid.length(0) / static_cast<double>(seeds.size());
  std::vector<double> w(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) w[i] = std::max(0.0, rho(seeds[i])) * h;
  return w;
}

namespace {

// Per-frame fields for the integrators, evaluated pointwise on a spectrally
// refined lattice of the *state* (psi is band-limited, so its refinement is
// exact; derived fields like u or the Bohm force would ring if refined
// directly).  The drift uses the node-regularized velocity
// u_delta = J rho / (rho^2 + delta^2), which equals J/rho away from nodes
// and decays smoothly inside the mask.
class FrameFieldSet {
 public:
  FrameFieldSet(const Timeline& tl, const TrajectoryOptions& opt, bool with_force) {
    const Grid& g = tl.grid;
    const double eps = tl.epsilon;
    const double x_min = g.x_min(0), L = g.length(0);
    t0_ = tl.frames.front().t;
    dt_ = tl.frame_dt;
    const int R = opt.refine;
    const int nf = g.n(0) * R;
    Grid fine_grid(AxisSpec{x_min, g.x_max(0), nf});

    for (const Frame& fr : tl.frames) {
      const CField psi_f = spectral::upsample(fr.values, g, R);
      const CField dpsi_f =
          spectral::upsample(spectral::gradient(fr.values, g), g, R);
      Field rho(nf), u(nf);
      double rho_max = 0.0;
      for (int i = 0; i < nf; ++i) {
        rho[i] = std::norm(psi_f[i]);
        rho_max = std::max(rho_max, rho[i]);
      }
      const double delta = 0.25 * opt.node_eta * rho_max;
      for (int i = 0; i < nf; ++i) {
        const double J = eps * (std::conj(psi_f[i]) * dpsi_f[i]).imag();
        u[i] = J * rho[i] / (rho[i] * rho[i] + delta * delta);
      }
      if (with_force) {
        // Bohm force via the flux identity rho dV_B = -(eps^2/4) d^3 rho
        // + eps^2 d[(d sqrt rho)^2], all derivatives on the fine lattice
        Field gs2(nf, 0.0);
        for (int i = 0; i < nf; ++i) {
          if (rho[i] <= 0.0) continue;
          const double gs = (std::conj(psi_f[i]) * dpsi_f[i]).real() / std::sqrt(rho[i]);
          gs2[i] = gs * gs;
        }
        const Field d_gs2 = spectral::gradient_real(gs2, fine_grid);
        const Field d_lap_rho =
            spectral::gradient_real(spectral::laplacian_real(rho, fine_grid), fine_grid);
        Field dvb(nf);
        for (int i = 0; i < nf; ++i) {
          const double flux = eps * eps * (-0.25 * d_lap_rho[i] + d_gs2[i]);
          dvb[i] = flux * rho[i] / (rho[i] * rho[i] + delta * delta);
        }
        force_.emplace_back(std::move(dvb), x_min, L);
      }
      rho_max_.push_back(rho_max);
      u_.emplace_back(std::move(u), x_min, L);
      rho_.emplace_back(std::move(rho), x_min, L);
    }
  }

  double t0() const { return t0_; }

  double u(double t, double x) const { return eval(u_, t, x); }
  double dvb(double t, double x) const { return eval(force_, t, x); }
  bool masked(double t, double x, double eta) const {
    return eval(rho_, t, x) < eta * interp_scalar(rho_max_, t);
  }

 private:
  void stencil(double t, std::size_t count, int& k0, double& th) const {
    const int F = static_cast<int>(count);
    const double s = (t - t0_) / dt_;
    int k = static_cast<int>(std::floor(s));
    k = std::clamp(k, 1, F - 3);
    k0 = k;
    th = s - k;
  }

  double eval(const std::vector<PeriodicInterpolant>& f, double t, double x) const {
    if (f.size() == 2) {
      const double s = std::clamp((t - t0_) / dt_, 0.0, 1.0);
      return (1.0 - s) * f[0](x) + s * f[1](x);
    }
    int k0;
    double th;
    stencil(t, f.size(), k0, th);
    const double w0 = -th * (th - 1.0) * (th - 2.0) / 6.0;
    const double w1 = (th + 1.0) * (th - 1.0) * (th - 2.0) / 2.0;
    const double w2 = -(th + 1.0) * th * (th - 2.0) / 2.0;
    const double w3 = (th + 1.0) * th * (th - 1.0) / 6.0;
    return w0 * f[k0 - 1](x) + w1 * f[k0](x) + w2 * f[k0 + 1](x) + w3 * f[k0 + 2](x);
  }

  double interp_scalar(const std::vector<double>& f, double t) const {
    if (f.size() == 2) {
      const double s = std::clamp((t - t0_) / dt_, 0.0, 1.0);
      return (1.0 - s) * f[0] + s * f[1];
    }
    int k0;
    double th;
    stencil(t, f.size(), k0, th);
    const double w0 = -th * (th - 1.0) * (th - 2.0) / 6.0;
    const double w1 = (th + 1.0) * (th - 1.0) * (th - 2.0) / 2.0;
    const double w2 = -(th + 1.0) * th * (th - 2.0) / 2.0;
    const double w3 = (th + 1.0) * th * (th - 1.0) / 6.0;
    return w0 * f[k0 - 1] + w1 * f[k0] + w2 * f[k0 + 1] + w3 * f[k0 + 2];
  }

  double t0_ = 0.0, dt_ = 1.0;
  std::vector<PeriodicInterpolant> u_, rho_, force_;
  std::vector<double> rho_max_;
};

struct VelocityField {
  FrameFieldSet fields;
  double node_eta;

  VelocityField(const Timeline& tl, const TrajectoryOptions& opt, bool with_force = false)
      : fields(tl, opt, with_force), node_eta(opt.node_eta) {}

  double u(double t, double x) const { return fields.u(t, x); }
  bool masked(double t, double x) const { return fields.masked(t, x, node_eta); }
};

TrajectoryEnsemble make_ensemble(const Timeline& tl, std::span<const double> seeds,
                                 std::span<const double> weights) {
  if (seeds.size() != weights.size())
    throw InternalError("trajectories: seeds/weights size mismatch");
  if (tl.frames.size() < 2) throw NumericalError("trajectories: timeline too short");
  TrajectoryEnsemble ens;
  ens.epsilon = tl.epsilon;
  ens.seeds.assign(seeds.begin(), seeds.end());
  ens.weights.assign(weights.begin(), weights.end());
  ens.flagged.assign(seeds.size(), 0);
  ens.times.reserve(tl.frames.size());
  for (const Frame& f : tl.frames) ens.times.push_back(f.t);
  ens.X.assign(ens.times.size(), std::vector<double>(seeds.size(), 0.0));
  ens.P.assign(ens.times.size(), std::vector<double>(seeds.size(), 0.0));
  return ens;
}

}  // namespace

TrajectoryEnsemble integrate_kinematic(const Timeline& tl, std::span<const double> seeds,
                                       std::span<const double> weights,
                                       const TrajectoryOptions& opt) {
  TrajectoryEnsemble ens = make_ensemble(tl, seeds, weights);
  VelocityField vf(tl, opt);

  const std::size_t n = seeds.size();
  std::vector<double> x(seeds.begin(), seeds.end());
  for (std::size_t i = 0; i < n; ++i) {
    if (vf.masked(ens.times[0], x[i])) ens.flagged[i] = 1;
    ens.X[0][i] = x[i];
    ens.P[0][i] = ens.flagged[i] ? 0.0 : vf.u(ens.times[0], x[i]);
  }

  for (std::size_t k = 0; k + 1 < ens.times.size(); ++k) {
    const double t = ens.times[k];
    const double h_frame = ens.times[k + 1] - t;
    const double h = h_frame / opt.substeps;
    for (std::size_t i = 0; i < n; ++i) {
      if (ens.flagged[i]) {
        ens.X[k + 1][i] = x[i];
        ens.P[k + 1][i] = ens.P[k][i];
        continue;
      }
      double xi = x[i];
      for (int s = 0; s < opt.substeps && !ens.flagged[i]; ++s) {
        const double ts = t + s * h;
        const double k1 = vf.u(ts, xi);
        const double k2 = vf.u(ts + 0.5 * h, xi + 0.5 * h * k1);
        const double k3 = vf.u(ts + 0.5 * h, xi + 0.5 * h * k2);
        const double k4 = vf.u(ts + h, xi + h * k3);
        xi += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (vf.masked(ts + h, xi)) ens.flagged[i] = 1;
      }
      x[i] = xi;
      ens.X[k + 1][i] = xi;
      ens.P[k + 1][i] = ens.flagged[i] ? ens.P[k][i] : vf.u(ens.times[k + 1], xi);
    }
  }
  return ens;
}

TrajectoryEnsemble integrate_dynamic(const Timeline& tl, const Potential& V,
                                     std::span<const double> seeds,
                                     std::span<const double> weights,
                                     const TrajectoryOptions& opt) {
  TrajectoryEnsemble ens = make_ensemble(tl, seeds, weights);
  VelocityField vf(tl, opt, /*with_force=*/true);

  auto force = [&](double t, double x) { return -V.grad(x) - vf.fields.dvb(t, x); };

  const std::size_t n = seeds.size();
  std::vector<double> x(seeds.begin(), seeds.end()), p(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (vf.masked(ens.times[0], x[i])) ens.flagged[i] = 1;
    p[i] = ens.flagged[i] ? 0.0 : vf.u(ens.times[0], x[i]);
    ens.X[0][i] = x[i];
    ens.P[0][i] = p[i];
  }

  for (std::size_t k = 0; k + 1 < ens.times.size(); ++k) {
    const double t = ens.times[k];
    const double h = (ens.times[k + 1] - t) / opt.substeps;
    for (std::size_t i = 0; i < n; ++i) {
      if (ens.flagged[i]) {
        ens.X[k + 1][i] = x[i];
        ens.P[k + 1][i] = p[i];
        continue;
      }
      double xi = x[i], pi = p[i];
      for (int s = 0; s < opt.substeps && !ens.flagged[i]; ++s) {
        const double ts = t + s * h;
        const double f0 = force(ts, xi);
        const double xn = xi + h * pi + 0.5 * h * h * f0;
        const double f1 = force(ts + h, xn);
        pi += 0.5 * h * (f0 + f1);
        xi = xn;
        if (vf.masked(ts + h, xi)) ens.flagged[i] = 1;
      }
      x[i] = xi;
      p[i] = pi;
      ens.X[k + 1][i] = xi;
      ens.P[k + 1][i] = pi;
    }
  }
  return ens;
}

EquivarianceResult equivariance_check(const TrajectoryEnsemble& ens, const Timeline& tl,
                                      double t) {
  // locate t on the stored grid
  std::size_t kt = ens.times.size();
  for (std::size_t k = 0; k < ens.times.size(); ++k)
    if (std::abs(ens.times[k] - t) <= 1e-9 * std::max(1.0, std::abs(t))) {
      kt = k;
      break;
    }
  if (kt == ens.times.size())
    throw NumericalError("equivariance_check: t is not on the stored time grid");
  std::size_t kf = tl.frames.size();
  for (std::size_t k = 0; k < tl.frames.size(); ++k)
    if (std::abs(tl.frames[k].t - t) <= 1e-9 * std::max(1.0, std::abs(t))) {
      kf = k;
      break;
    }
  if (kf == tl.frames.size())
    throw NumericalError("equivariance_check: t is not on the timeline frame grid");

  const Grid& g = tl.grid;
  const int n = g.n(0);
  const double L = g.length(0);
  const double dx = g.dx(0);

  // empirical atoms, wrapped into the box
  struct Atom {
    double x, w;
  };
  std::vector<Atom> atoms;
  atoms.reserve(ens.n_atoms());
  double kept = 0.0, excluded = 0.0;
  for (std::size_t i = 0; i < ens.n_atoms(); ++i) {
    if (ens.flagged[i]) {
      excluded += ens.weights[i];
      continue;
    }
    double x = ens.X[kt][i];
    x -= std::floor((x - g.x_min(0)) / L) * L;
    atoms.push_back({x, ens.weights[i]});
    kept += ens.weights[i];
  }
  if (kept <= 0.0) throw NumericalError("equivariance_check: no unflagged atoms");

  const Field rho = density(tl.state(kf));
  double rho_mass = 0.0;
  for (double r : rho) rho_mass += r;
  rho_mass *= dx;

  // histogram L1 over grid cells (cell i centered on node i)
  Field hist(n, 0.0);
  for (const Atom& a : atoms) {
    long c = std::lround((a.x - g.x_min(0)) / dx);
    c = ((c % n) + n) % n;
    hist[c] += a.w / kept;
  }
  double l1 = 0.0;
  for (int i = 0; i < n; ++i) l1 += std::abs(hist[i] - rho[i] * dx / rho_mass);

  // W1 via signed-CDF sweep over merged atom lists; the reference density is
  // atomized on an 8x spectrally refined lattice so its own quantization
  // stays well below the seed-lattice term
  const int refine = 8;
  const Field rho_fine = spectral::upsample_real(rho, g, refine);
  double fine_mass = 0.0;
  for (double r : rho_fine) fine_mass += std::max(r, 0.0);
  fine_mass *= dx / refine;
  std::vector<Atom> all;
  all.reserve(atoms.size() + rho_fine.size());
  for (const Atom& a : atoms) all.push_back({a.x, a.w / kept});
  for (std::size_t i = 0; i < rho_fine.size(); ++i)
    all.push_back({g.x_min(0) + i * dx / refine,
                   -std::max(rho_fine[i], 0.0) * (dx / refine) / fine_mass});
  std::sort(all.begin(), all.end(), [](const Atom& a, const Atom& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.w < b.w;
  });
  double w1 = 0.0, cdf = 0.0;
  for (std::size_t k = 0; k + 1 < all.size(); ++k) {
    cdf += all[k].w;
    w1 += std::abs(cdf) * (all[k + 1].x - all[k].x);
  }
  return EquivarianceResult{w1, l1, excluded};
}

}  // namespace bohmlab
