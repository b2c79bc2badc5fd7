#include "bohmlab/ratefit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "bohmlab/errors.hpp"

namespace bohmlab {

RateFit fit_rate(std::span<const double> eps, std::span<const double> values) {
  const std::size_t m = eps.size();
  if (m != values.size()) throw InternalError("fit_rate: size mismatch");
  if (m < 4) throw ConfigError("fit_rate: need at least 4 points");
  for (std::size_t i = 1; i < m; ++i)
    if (!(eps[i] < eps[i - 1])) throw ConfigError("fit_rate: eps must be strictly decreasing");

  // fit on the tail where a single power law dominates
  const std::size_t tail = std::max<std::size_t>(4, m - 2);
  const std::size_t off = m - tail;
  std::vector<double> e(eps.begin() + off, eps.end());
  std::vector<double> f(values.begin() + off, values.end());
  const std::size_t k = e.size();

  double fmin = f[0], fmax = f[0];
  for (double v : f) {
    fmin = std::min(fmin, v);
    fmax = std::max(fmax, v);
  }
  const double spread = fmax - fmin;
  const double scale = std::max({std::abs(fmin), std::abs(fmax), 1e-30});

  RateFit best;
  if (spread <= 1e-13 * scale) {
    // numerically constant sequence: already at its limit
    best.limit = f.back();
    best.rate = 0.0;
    best.residual = 0.0;
    best.converged = true;
    return best;
  }

  best.residual = std::numeric_limits<double>::infinity();
  for (double q = 0.05; q <= 4.0 + 1e-12; q += 0.0025) {
    // linear least squares in (c, a) for f = c + a * eps^q
    double st = 0.0, st2 = 0.0, sf = 0.0, sft = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double t = std::pow(e[i], q);
      st += t;
      st2 += t * t;
      sf += f[i];
      sft += f[i] * t;
    }
    const double det = k * st2 - st * st;
    if (std::abs(det) < 1e-300) continue;
    const double a = (k * sft - st * sf) / det;
    const double c = (sf - a * st) / k;
    double rss = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double r = f[i] - c - a * std::pow(e[i], q);
      rss += r * r;
    }
    const double rms = std::sqrt(rss / k);
    if (rms < best.residual) {
      best.residual = rms;
      best.limit = c;
      best.rate = q;
    }
  }

  // convergence flags: either a clean power-law tail, or a plateau whose
  // total variation is negligible against the data scale (already converged)
  bool tail_ok = true;
  for (std::size_t i = 1; i < k; ++i) {
    const double prev = std::abs(f[i - 1] - best.limit);
    const double cur = std::abs(f[i] - best.limit);
    if (cur > 1.5 * prev + 1e-12 * scale) tail_ok = false;
  }
  const bool power_law = tail_ok && best.residual <= std::max(1e-9, 0.1 * spread);
  const bool plateau = spread <= 0.02 * scale;
  best.converged = power_law || plateau;
  return best;
}

std::vector<double> geometric_eps(double eps_max, double eps_min, int points) {
  if (points < 2 || !(eps_max > eps_min) || !(eps_min > 0.0))
    throw ConfigError("geometric_eps: bad parameters");
  std::vector<double> out(points);
  const double r = std::pow(eps_min / eps_max, 1.0 / (points - 1));
  double v = eps_max;
  for (int i = 0; i < points; ++i) {
    out[i] = v;
    v *= r;
  }
  out.back() = eps_min;
  return out;
}

}  // namespace bohmlab
