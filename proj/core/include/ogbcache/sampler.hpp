#ifndef OGBCACHE_SAMPLER_HPP
#define OGBCACHE_SAMPLER_HPP

#include <cstdint>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "ogbcache/lazy_state.hpp"

namespace ogbcache {

/// Items moved in or out of the integral cache by one sampler operation.
struct SampleChangeReport {
  std::vector<std::uint32_t> inserted;
  std::vector<std::uint32_t> evicted;
};

/// Integral cache drawn from a LazyState by Poisson sampling with permanent
/// random numbers: item i is cached iff p_i <= f_i, with p_i drawn once.
/// Because the lazy state decays unrequested items only through the shared
/// rho, the differences d_i = f~_i - p_i of cached, unrequested items never
/// move; keeping them in an ordered index makes the periodic resync
/// O((#requested + #evicted) log N) instead of O(N).
///
/// The sample size is binomial around C (soft capacity): its coefficient of
/// variation is at most 1/sqrt(C).
class Sampler {
 public:
  /// Draws the permanent random numbers from a dedicated seeded stream and
  /// takes the initial sample. PRNs are drawn in (0,1) so that the membership
  /// rule p_i <= f_i can never trigger on a zero-mass item.
  Sampler(const LazyState& state, std::uint64_t seed);

  /// Resynchronizes the cache with the state: refreshes d_j for every
  /// requested id (inserting newly eligible ones), then evicts every cached
  /// id with d_i < rho. `requested` must hold the distinct ids requested
  /// since the previous sync, each judged against its final coefficient.
  SampleChangeReport update_sample(const LazyState& state,
                                   std::span<const std::uint32_t> requested);

  bool is_cached(std::uint32_t i) const;
  std::size_t occupancy() const { return cached_count_; }

  double prn(std::uint32_t i) const;
  double last_sync_rho() const { return last_sync_rho_; }

  /// Follows a LazyState::rebase(): every d_i shifts with the coefficients.
  void on_rebase(double shift);

  /// Redraws every PRN from a fresh stream and rebuilds the sample to match
  /// the membership rule under the new numbers. O(N); off unless scheduled
  /// by the caller.
  SampleChangeReport redraw_prns(const LazyState& state, std::uint64_t seed);

 private:
  using Entry = std::pair<double, std::uint32_t>;  // (d_i, id)

  void rebuild(const LazyState& state);

  std::vector<double> prn_;
  std::set<Entry> diff_index_;
  std::vector<std::uint8_t> cached_;
  std::size_t cached_count_ = 0;
  double last_sync_rho_ = 0.0;
};

/// Standard normal tail bound Psi(epsilon * sqrt(capacity)) on the
/// probability that the sample size exceeds (1 + epsilon) * capacity.
double occupancy_exceedance_bound(double capacity, double epsilon);

/// Madow systematic sampling: selects exactly `capacity` distinct ids with
/// inclusion probability f_i, by sweeping the thresholds u, u+1, ...,
/// u+capacity-1 across the cumulative sums of f. Requires integer capacity,
/// each f_i in [0,1] and sum f = capacity. O(N).
std::vector<std::uint32_t> systematic_sample(std::span<const double> fractions,
                                             double capacity, double u);

}  // namespace ogbcache

#endif  // OGBCACHE_SAMPLER_HPP
