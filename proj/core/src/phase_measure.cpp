#include "bohmlab/phase_measure.hpp"

#include <cmath>

#include "bohmlab/errors.hpp"

namespace bohmlab {

EmpiricalPhaseMeasure::EmpiricalPhaseMeasure(std::vector<PhaseAtom> atoms, double masked_mass)
    : atoms_(std::move(atoms)), masked_mass_(masked_mass) {
  for (const PhaseAtom& a : atoms_) {
    if (a.w < 0.0) throw NumericalError("phase measure: negative atom weight");
    total_mass_ += a.w;
  }
}

double EmpiricalPhaseMeasure::pair(const PhaseSpaceTest& phi) const {
  double s = 0.0;
  for (const PhaseAtom& a : atoms_) s += a.w * phi(a.x, a.p);
  return s;
}

double EmpiricalPhaseMeasure::pair(const std::function<double(double, double)>& phi) const {
  double s = 0.0;
  for (const PhaseAtom& a : atoms_) s += a.w * phi(a.x, a.p);
  return s;
}

EmpiricalPhaseMeasure bohmian_measure(const HydroFields& f) {
  std::vector<PhaseAtom> atoms;
  atoms.reserve(f.rho.size());
  const double dv = f.grid.cell_volume();
  for (std::size_t i = 0; i < f.rho.size(); ++i) {
    if (f.mask[i]) continue;
    atoms.push_back({f.grid.node(static_cast<int>(i)), f.u[i], f.rho[i] * dv});
  }
  return EmpiricalPhaseMeasure(std::move(atoms), f.masked_mass);
}

MomentGrid moments(const EmpiricalPhaseMeasure& mu, const Grid& grid) {
  const int n = grid.n(0);
  MomentGrid mg{grid, Field(n, 0.0), Field(n, 0.0), Field(n, 0.0), Field(n, 0.0),
                std::vector<int>(n, 0)};
  const double dx = grid.dx(0);
  for (const PhaseAtom& a : mu.atoms()) {
    double s = (a.x - grid.x_min(0)) / dx;
    long cell = std::lround(s);
    cell = ((cell % n) + n) % n;
    const int i = static_cast<int>(cell);
    mg.m0[i] += a.w;
    mg.m1[i] += a.w * a.p;
    mg.m2[i] += a.w * a.p * a.p;
    ++mg.count[i];
  }
  for (int i = 0; i < n; ++i) {
    mg.m0[i] /= dx;
    mg.m1[i] /= dx;
    mg.m2[i] /= dx;
    if (mg.count[i] > 0 && mg.m0[i] > 0.0) mg.cs_gap[i] = mg.m2[i] - mg.m1[i] * mg.m1[i] / mg.m0[i];
  }
  return mg;
}

double weak_distance(const PairingFn& a, const PairingFn& b, const Dictionary& dict) {
  if (dict.empty()) throw ConfigError("weak_distance: empty dictionary");
  double d = 0.0;
  for (const PhaseSpaceTest& phi : dict) d = std::max(d, std::abs(a(phi) - b(phi)));
  return d;
}

}  // namespace bohmlab
