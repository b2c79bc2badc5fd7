#include "bohmlab/defects.hpp"

#include <algorithm>
#include <cmath>

#include "bohmlab/errors.hpp"
#include "bohmlab/parallel.hpp"
#include "bohmlab/spectral.hpp"

namespace bohmlab {

Field defect_A_field(const HydroFields& f) {
  Field out(f.rho.size(), 0.0);
  const double e2 = f.epsilon * f.epsilon;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!f.mask[i]) out[i] = e2 * f.grad_sqrt_rho[i] * f.grad_sqrt_rho[i];
  return out;
}

Field temperature_tensor(const WignerField& w, double eta) {
  const int n = w.xgrid.n(0);
  const int np = w.pgrid.np;
  Field m0(n, 0.0), m1(n, 0.0), m2(n, 0.0);
  for (int j = 0; j < n; ++j) {
    for (int r = 0; r < np; ++r) {
      const double p = w.pgrid.p(r);
      const double v = w.at(j, r);
      m0[j] += v;
      m1[j] += v * p;
      m2[j] += v * p * p;
    }
    m0[j] *= w.pgrid.dp;
    m1[j] *= w.pgrid.dp;
    m2[j] *= w.pgrid.dp;
  }
  double m0max = 0.0;
  for (double v : m0) m0max = std::max(m0max, v);
  Field T(n, 0.0);
  for (int j = 0; j < n; ++j)
    if (m0[j] >= eta * m0max) T[j] = (m2[j] - m1[j] * m1[j] / m0[j]) / m0[j];
  return T;
}

namespace {

// frame indices and normalized weights of the time localization around t_star
std::vector<std::pair<std::size_t, double>> time_window(const Timeline& tl, double t_star,
                                                        double halfwidth) {
  std::vector<std::pair<std::size_t, double>> win;
  if (halfwidth <= 0.0) {
    std::size_t best = 0;
    double dist = std::abs(tl.frames[0].t - t_star);
    for (std::size_t k = 1; k < tl.frames.size(); ++k) {
      const double d = std::abs(tl.frames[k].t - t_star);
      if (d < dist) {
        dist = d;
        best = k;
      }
    }
    win.push_back({best, 1.0});
    return win;
  }
  BumpProfile tb = BumpProfile::bump(t_star, halfwidth);
  double total = 0.0;
  for (std::size_t k = 0; k < tl.frames.size(); ++k) {
    const double w = tb.value(tl.frames[k].t);
    if (w > 0.0) {
      win.push_back({k, w});
      total += w;
    }
  }
  if (win.empty()) throw NumericalError("defects: time window covers no frames");
  for (auto& kw : win) kw.second /= total;
  return win;
}

}  // namespace

std::vector<DefectSample> defect_samples(const Timeline& tl, double t_star,
                                         const std::vector<BumpProfile>& bumps,
                                         const DefectOptions& opt) {
  const Grid& g = tl.grid;
  const int n = g.n(0);
  const double dx = g.cell_volume();
  const double eps = tl.epsilon;

  std::vector<DefectSample> out(bumps.size());
  for (DefectSample& s : out) {
    s.eps = eps;
    s.bin_m0.assign(opt.bins, 0.0);
    s.bin_m1.assign(opt.bins, 0.0);
    s.bin_m2.assign(opt.bins, 0.0);
    s.beta_dict.assign(opt.dictionary.size(), 0.0);
    s.wigner_dict.assign(opt.dictionary.size(), 0.0);
  }

  const BumpProfile sigma_cut = BumpProfile::plateau(0.0, opt.p_cutoff, 2.0 * opt.p_cutoff);
  const auto window = time_window(tl, t_star, opt.time_halfwidth);

  for (const auto& [k, tw] : window) {
    const HydroFields f = extract_fields(tl.state(k), opt.node_eta);
    const WignerAnalysis wa = wigner_analyze(tl.state(k), opt.dictionary);
    const Field rhoT = wa.rho_T(opt.node_eta);
    const Field lap_rho = spectral::laplacian_real(f.rho, g);
    const EmpiricalPhaseMeasure beta = bohmian_measure(f);

    for (std::size_t bi = 0; bi < bumps.size(); ++bi) {
      const BumpProfile& chi = bumps[bi];
      DefectSample& s = out[bi];
      const double bin_lo = chi.support_lo();
      const double bin_w = (chi.support_hi() - chi.support_lo()) / opt.bins;

      double rho_chi = 0.0, A = 0.0, j2 = 0.0, m2cut = 0.0, rt = 0.0;
      double r1A = 0.0, r1j2 = 0.0, r1cut = 0.0, r2 = 0.0;
      for (int i = 0; i < n; ++i) {
        const double x = g.node(i);
        const double c = chi.value(x);
        const double dc = chi.deriv(x);
        if (c == 0.0 && dc == 0.0) continue;
        rho_chi += f.rho[i] * c;
        const double gs2 = f.grad_sqrt_rho[i] * f.grad_sqrt_rho[i];
        const double a_val = eps * eps * gs2;
        A += a_val * c;
        r1A += a_val * dc;
        r2 += -0.25 * eps * eps * lap_rho[i] * dc + a_val * dc;
        rt += rhoT[i] * c;
        if (!f.mask[i]) {
          const double ju = f.J[i] * f.u[i];  // J^2/rho
          const double cut = sigma_cut.value(f.u[i]);
          j2 += ju * c;
          r1j2 += ju * dc;
          m2cut += ju * cut * c;
          r1cut += ju * cut * dc;
          const int b = static_cast<int>((x - bin_lo) / bin_w);
          if (b >= 0 && b < opt.bins) {
            const double w = f.rho[i] * dx * cut;
            s.bin_m0[b] += tw * w;
            s.bin_m1[b] += tw * w * f.u[i];
            s.bin_m2[b] += tw * w * f.u[i] * f.u[i];
          }
        }
      }
      s.rho_chi += tw * rho_chi * dx;
      s.A += tw * A * dx;
      s.j2_rho += tw * j2 * dx;
      s.beta_m2_cut += tw * m2cut * dx;
      s.rhoT += tw * rt * dx;
      s.route1_A_dchi += tw * r1A * dx;
      s.route1_j2_dchi += tw * r1j2 * dx;
      s.route1_beta_cut_dchi += tw * r1cut * dx;
      s.route2_force += tw * r2 * dx;
    }
    for (std::size_t bi = 0; bi < bumps.size(); ++bi) {
      DefectSample& s = out[bi];
      for (std::size_t d = 0; d < opt.dictionary.size(); ++d) {
        s.beta_dict[d] += tw * beta.pair(opt.dictionary[d]);
        s.wigner_dict[d] += tw * wa.pairings[d];
      }
    }
  }

  for (DefectSample& s : out) {
    if (!(s.rho_chi > 0.0)) throw NumericalError("defects: <rho, chi> vanishes");
    const double inv = 1.0 / s.rho_chi;
    s.A *= inv;
    s.j2_rho *= inv;
    s.beta_m2_cut *= inv;
    s.rhoT *= inv;
  }
  return out;
}

DefectReport defect_sweep(const InstanceFactory& factory, std::span<const double> eps_list,
                          double t_star, const std::vector<BumpProfile>& bumps,
                          const DefectOptions& opt) {
  DefectReport rep;
  rep.eps.assign(eps_list.begin(), eps_list.end());

  // per (eps, bump) samples; one timeline build per eps
  std::vector<std::vector<DefectSample>> samples(eps_list.size());
  parallel_for(eps_list.size(), opt.workers, [&](std::size_t e) {
    const Timeline tl = factory(eps_list[e]);
    samples[e] = defect_samples(tl, t_star, bumps, opt);
  });

  const double pos_tol = 1e-3;
  for (std::size_t bi = 0; bi < bumps.size(); ++bi) {
    DefectSweepResult r;
    r.bump_id = "bump" + std::to_string(bi);
    r.eps = rep.eps;
    std::vector<double> r1A, r1j2, r1cut, r2, rho_chi;
    for (std::size_t e = 0; e < eps_list.size(); ++e) {
      const DefectSample& s = samples[e][bi];
      r.A.push_back(s.A);
      r.j2_rho.push_back(s.j2_rho);
      r.beta_m2_cut.push_back(s.beta_m2_cut);
      r.rhoT.push_back(s.rhoT);
      r1A.push_back(s.route1_A_dchi);
      r1j2.push_back(s.route1_j2_dchi);
      r1cut.push_back(s.route1_beta_cut_dchi);
      r2.push_back(s.route2_force);
      rho_chi.push_back(s.rho_chi);
    }
    r.A_fit = fit_rate(rep.eps, r.A);
    r.j2_rho_fit = fit_rate(rep.eps, r.j2_rho);
    r.beta_m2_cut_fit = fit_rate(rep.eps, r.beta_m2_cut);
    r.rhoT_fit = fit_rate(rep.eps, r.rhoT);
    r.C = r.j2_rho_fit.limit - r.beta_m2_cut_fit.limit;

    // B: Cauchy-Schwarz gap of the extrapolated binned moments, aggregated
    // with the bump and normalized like the other pairings.
    const double bin_w = (bumps[bi].support_hi() - bumps[bi].support_lo()) / opt.bins;
    double B = 0.0;
    const RateFit rho_chi_fit = fit_rate(rep.eps, rho_chi);
    for (int b = 0; b < opt.bins; ++b) {
      std::vector<double> m0s, m1s, m2s;
      for (std::size_t e = 0; e < eps_list.size(); ++e) {
        m0s.push_back(samples[e][bi].bin_m0[b]);
        m1s.push_back(samples[e][bi].bin_m1[b]);
        m2s.push_back(samples[e][bi].bin_m2[b]);
      }
      const double m0 = fit_rate(rep.eps, m0s).limit;
      if (m0 <= 1e-10) continue;
      const double m1 = fit_rate(rep.eps, m1s).limit;
      const double m2 = fit_rate(rep.eps, m2s).limit;
      const double gap = m2 - m1 * m1 / m0;
      const double xc = bumps[bi].support_lo() + (b + 0.5) * bin_w;
      B += gap * bumps[bi].value(xc);
    }
    r.B = B / std::max(rho_chi_fit.limit, 1e-30);

    r.teq_residual = std::abs(r.rhoT_fit.limit - r.A_fit.limit - r.B - r.C);
    r.first_moment_route_div = fit_rate(rep.eps, r1A).limit +
                       (fit_rate(rep.eps, r1j2).limit - fit_rate(rep.eps, r1cut).limit);
    r.first_moment_route_force = fit_rate(rep.eps, r2).limit;
    r.first_moment_gap = std::abs(r.first_moment_route_div - r.first_moment_route_force);

    bool pos = r.A_fit.limit >= -pos_tol && r.rhoT_fit.limit >= -pos_tol && r.C >= -pos_tol &&
               r.B >= -pos_tol;
    for (std::size_t e = 0; e < eps_list.size(); ++e)
      pos = pos && r.A[e] >= -pos_tol && r.rhoT[e] >= -pos_tol;
    r.positivity_ok = pos;
    r.converged = r.A_fit.converged && r.rhoT_fit.converged && r.j2_rho_fit.converged &&
                  r.beta_m2_cut_fit.converged;
    rep.per_bump.push_back(std::move(r));
  }

  // beta-vs-wigner limit comparison at dictionary level
  MeasureLimitComparison cmp;
  for (std::size_t d = 0; d < opt.dictionary.size(); ++d) {
    std::vector<double> bv, wv;
    for (std::size_t e = 0; e < eps_list.size(); ++e) {
      bv.push_back(samples[e].front().beta_dict[d]);
      wv.push_back(samples[e].front().wigner_dict[d]);
    }
    cmp.ids.push_back(opt.dictionary[d].id());
    cmp.beta_fits.push_back(fit_rate(rep.eps, bv));
    cmp.wigner_fits.push_back(fit_rate(rep.eps, wv));
  }
  cmp.converged = true;
  for (std::size_t d = 0; d < cmp.ids.size(); ++d) {
    cmp.max_gap = std::max(cmp.max_gap,
                           std::abs(cmp.beta_fits[d].limit - cmp.wigner_fits[d].limit));
    cmp.converged = cmp.converged && cmp.beta_fits[d].converged && cmp.wigner_fits[d].converged;
  }
  rep.measures = cmp;
  return rep;
}

}  // namespace bohmlab
