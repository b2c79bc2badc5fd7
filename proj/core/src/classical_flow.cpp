#include "bohmlab/classical_flow.hpp"

#include <algorithm>
#include <cmath>

#include "bohmlab/errors.hpp"

namespace bohmlab {

namespace {
inline double lagrangian(const Potential& V, double x, double p) {
  return 0.5 * p * p - V.value(x);
}
}  // namespace

ClassicalTrajectory classical_flow(const Potential& V, double x0, double p0, double T, double dt) {
  if (!(dt > 0.0) || !(T >= 0.0)) throw ConfigError("classical_flow: bad T or dt");
  const long n = std::lround(T / dt);
  ClassicalTrajectory tr;
  tr.x0 = x0;
  tr.p0 = p0;
  tr.dt = dt;
  tr.t.reserve(n + 1);
  tr.X.reserve(n + 1);
  tr.P.reserve(n + 1);
  tr.S.reserve(n + 1);

  double x = x0, p = p0, s = 0.0;
  tr.t.push_back(0.0);
  tr.X.push_back(x);
  tr.P.push_back(p);
  tr.S.push_back(s);
  for (long k = 0; k < n; ++k) {
    const double f0 = -V.grad(x);
    const double l0 = lagrangian(V, x, p);
    // half-step midpoint state for the Simpson action increment
    const double xm = x + 0.5 * dt * p + 0.125 * dt * dt * f0;
    const double pm = p + 0.5 * dt * f0;
    const double xn = x + dt * p + 0.5 * dt * dt * f0;
    const double f1 = -V.grad(xn);
    const double pn = p + 0.5 * dt * (f0 + f1);
    const double lm = lagrangian(V, xm, pm);
    const double l1 = lagrangian(V, xn, pn);
    s += dt / 6.0 * (l0 + 4.0 * lm + l1);
    x = xn;
    p = pn;
    tr.t.push_back((k + 1) * dt);
    tr.X.push_back(x);
    tr.P.push_back(p);
    tr.S.push_back(s);
  }
  return tr;
}

double ClassicalTrajectory::interp(const std::vector<double>& f, double time) const {
  const long n = static_cast<long>(f.size());
  if (n == 1) return f[0];
  double s = time / dt;
  long k = std::clamp(std::lround(std::floor(s)), 1l, n - 3);
  if (n < 4) {  // linear fallback for very short trajectories
    k = std::clamp(std::lround(std::floor(s)), 0l, n - 2);
    const double th = s - k;
    return (1.0 - th) * f[k] + th * f[k + 1];
  }
  const double th = s - k;
  const double w0 = -th * (th - 1.0) * (th - 2.0) / 6.0;
  const double w1 = (th + 1.0) * (th - 1.0) * (th - 2.0) / 2.0;
  const double w2 = -(th + 1.0) * th * (th - 2.0) / 2.0;
  const double w3 = (th + 1.0) * th * (th - 1.0) / 6.0;
  return w0 * f[k - 1] + w1 * f[k] + w2 * f[k + 1] + w3 * f[k + 2];
}

double ClassicalTrajectory::x_at(double time) const { return interp(X, time); }
double ClassicalTrajectory::p_at(double time) const { return interp(P, time); }
double ClassicalTrajectory::s_at(double time) const { return interp(S, time); }

double ClassicalTrajectory::max_energy_drift(const Potential& V) const {
  double e0 = 0.5 * P[0] * P[0] + V.value(X[0]);
  double drift = 0.0;
  for (std::size_t k = 1; k < X.size(); ++k) {
    const double e = 0.5 * P[k] * P[k] + V.value(X[k]);
    drift = std::max(drift, std::abs(e - e0));
  }
  return drift / std::max(std::abs(e0), 1e-30);
}

}  // namespace bohmlab
