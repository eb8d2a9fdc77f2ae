#ifndef OGBCACHE_PROJECTION_HPP
#define OGBCACHE_PROJECTION_HPP

#include <span>
#include <vector>

namespace ogbcache {

/// Exact Euclidean projection of y onto {f in [0,1]^N : sum f_i = capacity}.
///
/// Solves min 1/2 ||f - y||^2 by water-filling: the unique KKT point is
/// f_i = clip(y_i - lambda, 0, 1) for the scalar lambda making the mass sum
/// to capacity. lambda is located exactly by a breakpoint search, O(N log N).
///
/// Handles arbitrary multi-component perturbations, so it doubles as the
/// projection step of the classic batched policy and as the reference oracle
/// for the lazy state. Requires 0 < capacity < y.size().
std::vector<double> exact_projection(std::span<const double> y,
                                     double capacity);

}  // namespace ogbcache

#endif  // OGBCACHE_PROJECTION_HPP
