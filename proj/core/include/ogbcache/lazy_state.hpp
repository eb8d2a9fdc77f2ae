#ifndef OGBCACHE_LAZY_STATE_HPP
#define OGBCACHE_LAZY_STATE_HPP

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace ogbcache {

/// What a single gradient-step update did to the state.
struct UpdateReport {
  std::vector<std::uint32_t> zeroed;  ///< ids driven to zero (net of restores)
  int removal_loop_iterations = 0;
  bool cap_branch = false;    ///< requested component hit the upper bound 1
  bool no_op = false;         ///< requested component was already 1
  std::uint64_t index_mutations = 0;  ///< ordered-index inserts+erases this call
};

/// Fractional cache state over the capped simplex
/// {f in [0,1]^N : sum f_i = C}, stored lazily as unadjusted coefficients
/// f~_i and one global adjustment rho, with
///
///   f_i = f~_i - rho   if f~_i > 0,   0 otherwise.
///
/// A request's gradient step (add eta to one component, project back) then
/// costs O(log N) amortized: bump one coefficient, grow rho by the uniform
/// shave, and drop the coefficients that the shave pushed to zero. An ordered
/// (value, id) index over the positive coefficients locates those in
/// logarithmic time. The index mutation counter backs the complexity tests.
class LazyState {
 public:
  /// Uniform start: every effective value equals capacity/n, rho = 0.
  /// Requires 0 < capacity < n.
  LazyState(std::uint32_t n, double capacity);

  std::uint32_t catalog_size() const { return n_; }
  double capacity() const { return capacity_; }
  double rho() const { return rho_; }

  /// Effective value f_i = max(f~_i - rho, 0) for indexed ids, else 0.
  double effective_value(std::uint32_t i) const;

  /// Raw coefficient f~_i (0 when the id is not indexed).
  double f_tilde(std::uint32_t i) const;

  bool is_indexed(std::uint32_t i) const;

  /// Full vector of effective values; O(n).
  std::vector<double> densify() const;

  /// Applies one gradient step for item j with step size eta > 0 and projects
  /// back onto the capped simplex. Equivalent to the exact Euclidean
  /// projection of (f + eta * e_j), but touches only O(1 + #zeroed) index
  /// entries.
  UpdateReport update_probabilities(std::uint32_t j, double eta);

  /// Folds rho into the coefficients (f~_i -= rho, rho = 0). Effective values
  /// are unchanged. Returns the shift so that a paired sampler can follow.
  double rebase();

  bool needs_rebase() const { return rho_ > kRebaseThreshold; }

  std::size_t positive_count() const { return index_.size(); }

  /// Cumulative ordered-index insert+erase count (rebase excluded).
  std::uint64_t index_mutations() const { return mutations_; }

  /// Ids zeroed by the most recent update.
  const std::vector<std::uint32_t>& zeroed_last_step() const {
    return zeroed_last_;
  }

  /// Absolute tolerance for the boundary comparisons (f_j == 1, f_i == 0).
  static constexpr double kEqTolerance = 1e-12;
  static constexpr double kRebaseThreshold = 1e6;

 private:
  using Entry = std::pair<double, std::uint32_t>;  // (f~ value, id)

  void index_insert(std::uint32_t i, double value);
  void index_erase(std::uint32_t i);

  std::uint32_t n_;
  double capacity_;
  double rho_ = 0.0;
  std::vector<double> f_tilde_;
  std::set<Entry> index_;
  std::uint64_t mutations_ = 0;
  std::vector<std::uint32_t> zeroed_last_;
  std::vector<Entry> removed_buffer_;  // scratch for the within-call restore
};

}  // namespace ogbcache

#endif  // OGBCACHE_LAZY_STATE_HPP
