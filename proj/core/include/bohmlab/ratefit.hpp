#pragma once

#include <span>
#include <vector>

namespace bohmlab {

/// Result of fitting f(eps) = limit + a * eps^rate over a decreasing eps
/// sequence (log-space least squares with a grid search over the exponent).
///
/// `converged` is false when the fit residual stays large relative to the
/// data spread or the tail |f - limit| fails to decrease: the sequence is
/// then flagged non-convergent and `limit` is only indicative.
struct RateFit {
  double limit = 0.0;
  double rate = 0.0;
  double residual = 0.0;  // rms of f - (limit + a eps^rate), tail points
  bool converged = false;
};

/// Requires >= 4 strictly decreasing eps values.  Fits on the tail (last
/// max(4, m-2) points) so that a single power law dominates.
RateFit fit_rate(std::span<const double> eps, std::span<const double> values);

/// Default geometric eps sequence 1e-1 ... 1e-3 with `points` entries.
std::vector<double> geometric_eps(double eps_max = 1e-1, double eps_min = 1e-3, int points = 7);

}  // namespace bohmlab
