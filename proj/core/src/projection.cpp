#include "ogbcache/projection.hpp"

#include <algorithm>
#include <cstddef>
#include <string>

#include "ogbcache/errors.hpp"

namespace ogbcache {

namespace {

// Mass left after shaving lambda: sum_i clip(y_i - lambda, 0, 1).
double mass_at(std::span<const double> y, double lambda) {
  double total = 0.0;
  for (const double yi : y) {
    const double v = yi - lambda;
    if (v >= 1.0) {
      total += 1.0;
    } else if (v > 0.0) {
      total += v;
    }
  }
  return total;
}

}  // namespace

std::vector<double> exact_projection(std::span<const double> y,
                                     double capacity) {
  const std::size_t n = y.size();
  if (n == 0 || !(capacity > 0.0) || !(capacity < static_cast<double>(n))) {
    throw InvalidConfigError(
        "exact_projection: capacity must satisfy 0 < C < N, got C=" +
        std::to_string(capacity) + " N=" + std::to_string(n));
  }

  // mass_at is continuous, non-increasing and piecewise linear with
  // breakpoints at every y_i and y_i - 1. It equals n at the smallest
  // breakpoint and 0 at the largest, so with 0 < C < n the solution sits
  // between two adjacent breakpoints: bisect, then solve the linear piece.
  std::vector<double> breakpoints;
  breakpoints.reserve(2 * n);
  for (const double yi : y) {
    breakpoints.push_back(yi);
    breakpoints.push_back(yi - 1.0);
  }
  std::sort(breakpoints.begin(), breakpoints.end());

  std::size_t lo = 0;
  std::size_t hi = breakpoints.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (mass_at(y, breakpoints[mid]) >= capacity) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  // On (breakpoints[lo], breakpoints[hi]) the slope is the number of
  // components with y_i - lambda_lo in (0, 1]: those at exactly 1 leave the
  // cap as lambda grows, those at exactly 0 stay clipped.
  const double lambda_lo = breakpoints[lo];
  const double m_lo = mass_at(y, lambda_lo);
  std::size_t slope = 0;
  for (const double yi : y) {
    const double v = yi - lambda_lo;
    if (v > 0.0 && v <= 1.0) ++slope;
  }
  double lambda = lambda_lo;
  if (slope > 0) {
    lambda = lambda_lo + (m_lo - capacity) / static_cast<double>(slope);
    if (lambda > breakpoints[hi]) lambda = breakpoints[hi];
  } else if (m_lo > capacity) {
    // A zero-slope segment starting above capacity cannot bracket a crossing.
    throw InternalError("exact_projection: flat segment at mass " +
                        std::to_string(m_lo));
  }

  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = std::clamp(y[i] - lambda, 0.0, 1.0);
  }
  return f;
}

}  // namespace ogbcache
