#include "ogbcache/lazy_state.hpp"

#include <cmath>
#include <string>

#include "ogbcache/errors.hpp"

namespace ogbcache {

LazyState::LazyState(std::uint32_t n, double capacity)
    : n_(n), capacity_(capacity) {
  if (n == 0 || !(capacity > 0.0) || !(capacity < static_cast<double>(n))) {
    throw InvalidConfigError(
        "LazyState: capacity must satisfy 0 < C < N, got C=" +
        std::to_string(capacity) + " N=" + std::to_string(n));
  }
  const double uniform = capacity / static_cast<double>(n);
  f_tilde_.assign(n, uniform);
  for (std::uint32_t i = 0; i < n; ++i) {
    index_.emplace_hint(index_.end(), uniform, i);
  }
}

double LazyState::effective_value(std::uint32_t i) const {
  if (i >= n_) {
    throw OutOfRangeError("effective_value: id " + std::to_string(i) +
                          " out of range (N=" + std::to_string(n_) + ")");
  }
  const double ft = f_tilde_[i];
  if (ft <= 0.0) return 0.0;
  const double v = ft - rho_;
  return v > 0.0 ? v : 0.0;
}

double LazyState::f_tilde(std::uint32_t i) const {
  if (i >= n_) {
    throw OutOfRangeError("f_tilde: id out of range");
  }
  return f_tilde_[i];
}

bool LazyState::is_indexed(std::uint32_t i) const {
  if (i >= n_) {
    throw OutOfRangeError("is_indexed: id out of range");
  }
  return f_tilde_[i] > 0.0;
}

std::vector<double> LazyState::densify() const {
  std::vector<double> out(n_, 0.0);
  for (const auto& [value, id] : index_) {
    const double v = value - rho_;
    out[id] = v > 0.0 ? v : 0.0;
  }
  return out;
}

void LazyState::index_insert(std::uint32_t i, double value) {
  f_tilde_[i] = value;
  index_.emplace(value, i);
  ++mutations_;
}

void LazyState::index_erase(std::uint32_t i) {
  index_.erase(Entry{f_tilde_[i], i});
  f_tilde_[i] = 0.0;
  ++mutations_;
}

UpdateReport LazyState::update_probabilities(std::uint32_t j, double eta) {
  if (j >= n_) {
    throw OutOfRangeError("update_probabilities: id " + std::to_string(j) +
                          " out of range");
  }
  if (!(eta > 0.0)) {
    throw InvalidConfigError("update_probabilities: eta must be > 0");
  }

  UpdateReport report;
  const std::uint64_t mutations_at_entry = mutations_;
  zeroed_last_.clear();
  removed_buffer_.clear();

  // Requested item already at the cap: projection is the identity.
  if (f_tilde_[j] > 0.0 && std::abs(f_tilde_[j] - rho_ - 1.0) <= kEqTolerance) {
    report.no_op = true;
    return report;
  }

  if (f_tilde_[j] == 0.0) {
    index_insert(j, rho_ + eta);
  } else {
    index_.erase(Entry{f_tilde_[j], j});
    f_tilde_[j] += eta;
    index_.emplace(f_tilde_[j], j);
    mutations_ += 2;
  }

  // Uniform shave: grow rho by excess/|index|, dropping coefficients that the
  // shave pushes to (or within kEqTolerance of) zero and folding their mass
  // back into the excess. rho_prime only grows across passes, so a dropped
  // coefficient can never resurface within the loop.
  double excess = eta;
  double rho_prime = 0.0;
  bool j_excluded = false;  // cap-branch sentinel: j held out of the index

  for (;;) {
    for (;;) {
      ++report.removal_loop_iterations;
      if (index_.empty()) {
        // Legitimate only when the removals consumed the excess exactly (the
        // cap branch can zero every other coefficient). Keep the last
        // rho_prime so the dropped coefficients stay strictly below the new
        // rho. Tolerance scales with the arithmetic performed.
        if (excess > kEqTolerance *
                         (1.0 + static_cast<double>(removed_buffer_.size()))) {
          throw InternalError(
              "update_probabilities: positive index exhausted with excess "
              "remaining");
        }
        break;
      }
      rho_prime = excess / static_cast<double>(index_.size());
      bool removed_any = false;
      // This pass's batch is every entry with value - rho - rho_prime <= tol;
      // they are the smallest entries, so peel from the front.
      while (!index_.empty()) {
        const auto it = index_.begin();
        const double v = it->first - rho_;
        if (v - rho_prime > kEqTolerance) break;
        removed_buffer_.emplace_back(it->first, it->second);
        excess -= v;
        f_tilde_[it->second] = 0.0;
        index_.erase(it);
        ++mutations_;
        removed_any = true;
      }
      if (!removed_any) break;
    }

    // Requested component above the cap: pin it to 1, redistribute only the
    // part it could not absorb, and give the items removed so far another
    // chance under the smaller excess. Cannot recur: j is held out.
    if (!j_excluded && f_tilde_[j] > 0.0 &&
        (f_tilde_[j] - rho_) - rho_prime > 1.0 + kEqTolerance) {
      excess = eta - ((f_tilde_[j] - rho_) - 1.0);
      for (const auto& [value, id] : removed_buffer_) {
        index_insert(id, value);
      }
      removed_buffer_.clear();
      index_.erase(Entry{f_tilde_[j], j});
      f_tilde_[j] = 0.0;
      ++mutations_;
      j_excluded = true;
      report.cap_branch = true;
      rho_prime = 0.0;
      continue;
    }
    break;
  }

  rho_ += rho_prime;

  if (j_excluded) {
    index_insert(j, 1.0 + rho_);
  }

  zeroed_last_.reserve(removed_buffer_.size());
  for (const auto& [value, id] : removed_buffer_) {
    zeroed_last_.push_back(id);
  }
  report.zeroed = zeroed_last_;
  report.index_mutations = mutations_ - mutations_at_entry;
  return report;
}

double LazyState::rebase() {
  const double shift = rho_;
  if (shift == 0.0) return 0.0;
  std::set<Entry> rebuilt;
  for (const auto& [value, id] : index_) {
    const double v = value - shift;
    f_tilde_[id] = v;
    rebuilt.emplace_hint(rebuilt.end(), v, id);
  }
  index_ = std::move(rebuilt);
  rho_ = 0.0;
  return shift;
}

}  // namespace ogbcache
