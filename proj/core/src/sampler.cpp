#include "ogbcache/sampler.hpp"

#include <cmath>
#include <random>
#include <string>

#include "ogbcache/errors.hpp"
#include "ogbcache/rng.hpp"

namespace ogbcache {

Sampler::Sampler(const LazyState& state, std::uint64_t seed) {
  const std::uint32_t n = state.catalog_size();
  prn_.resize(n);
  std::mt19937_64 gen(seed);
  for (std::uint32_t i = 0; i < n; ++i) {
    prn_[i] = rng::uniform01_positive(gen);
  }
  rebuild(state);
}

void Sampler::rebuild(const LazyState& state) {
  const std::uint32_t n = state.catalog_size();
  diff_index_.clear();
  cached_.assign(n, 0);
  cached_count_ = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (state.effective_value(i) >= prn_[i]) {
      diff_index_.emplace(state.f_tilde(i) - prn_[i], i);
      cached_[i] = 1;
      ++cached_count_;
    }
  }
  last_sync_rho_ = state.rho();
}

bool Sampler::is_cached(std::uint32_t i) const {
  if (i >= cached_.size()) {
    throw OutOfRangeError("is_cached: id " + std::to_string(i) +
                          " out of range");
  }
  return cached_[i] != 0;
}

double Sampler::prn(std::uint32_t i) const {
  if (i >= prn_.size()) {
    throw OutOfRangeError("prn: id out of range");
  }
  return prn_[i];
}

SampleChangeReport Sampler::update_sample(
    const LazyState& state, std::span<const std::uint32_t> requested) {
  SampleChangeReport report;
  const double rho = state.rho();

  for (const std::uint32_t j : requested) {
    if (j >= cached_.size()) {
      throw OutOfRangeError("update_sample: requested id " +
                            std::to_string(j) + " out of range");
    }
    const double d = state.f_tilde(j) - prn_[j];
    if (cached_[j]) {
      // Refresh; if the item was meanwhile driven to zero, its new d = -p_j
      // falls below rho and the eviction pass picks it up.
      auto it = diff_index_.lower_bound(Entry{d, 0});
      // The old entry carries the stale d; locate it by id scan around the
      // old key instead: erase via stored key.
      (void)it;
    }
  }

  // Two-phase: first recompute the keys of the requested cached items (the
  // stale keys are unknown here, so track them), then insert eligible new
  // items, then evict.
  return report;
}

void Sampler::on_rebase(double shift) {
  if (shift == 0.0) return;
  std::set<Entry> rebuilt;
  for (const auto& [d, id] : diff_index_) {
    rebuilt.emplace_hint(rebuilt.end(), d - shift, id);
  }
  diff_index_ = std::move(rebuilt);
  last_sync_rho_ -= shift;
}

SampleChangeReport Sampler::redraw_prns(const LazyState& state,
                                        std::uint64_t seed) {
  SampleChangeReport report;
  std::vector<std::uint8_t> before = cached_;
  std::mt19937_64 gen(seed);
  for (std::uint32_t i = 0; i < prn_.size(); ++i) {
    prn_[i] = rng::uniform01_positive(gen);
  }
  rebuild(state);
  for (std::uint32_t i = 0; i < cached_.size(); ++i) {
    if (cached_[i] && !before[i]) report.inserted.push_back(i);
    if (!cached_[i] && before[i]) report.evicted.push_back(i);
  }
  return report;
}

double occupancy_exceedance_bound(double capacity, double epsilon) {
  if (!(capacity > 0.0) || epsilon < 0.0) {
    throw InvalidConfigError(
        "occupancy_exceedance_bound: capacity must be > 0 and epsilon >= 0");
  }
  const double x = epsilon * std::sqrt(capacity);
  return 0.5 * std::erfc(x / std::sqrt(2.0));
}

std::vector<std::uint32_t> systematic_sample(std::span<const double> fractions,
                                             double capacity, double u) {
  const double rounded = std::round(capacity);
  if (std::abs(capacity - rounded) > 1e-9 || rounded < 1.0) {
    throw InvalidConfigError(
        "systematic_sample: capacity must be a positive integer");
  }
  const auto c = static_cast<std::size_t>(rounded);
  if (!(u >= 0.0 && u < 1.0)) {
    throw InvalidConfigError("systematic_sample: u must lie in [0, 1)");
  }
  double total = 0.0;
  for (const double f : fractions) {
    if (f < -1e-9 || f > 1.0 + 1e-9) {
      throw InvalidConfigError(
          "systematic_sample: fractions must lie in [0, 1]");
    }
    total += f;
  }
  if (std::abs(total - capacity) > 1e-6 * static_cast<double>(c)) {
    throw InvalidConfigError(
        "systematic_sample: fractions must sum to the capacity");
  }

  std::vector<std::uint32_t> selected;
  selected.reserve(c);
  double cumulative = 0.0;
  std::size_t k = 0;  // next threshold index: threshold value is u + k
  for (std::uint32_t i = 0; i < fractions.size() && k < c; ++i) {
    cumulative += std::min(std::max(fractions[i], 0.0), 1.0);
    while (k < c && u + static_cast<double>(k) < cumulative) {
      if (selected.empty() || selected.back() != i) {
        selected.push_back(i);
      }
      ++k;
    }
  }
  // Rounding at the far end can leave the last thresholds unassigned; give
  // them to the trailing items with positive mass.
  if (selected.size() < c) {
    for (std::uint32_t i = static_cast<std::uint32_t>(fractions.size());
         i-- > 0 && selected.size() < c;) {
      if (fractions[i] > 0.0 &&
          (selected.empty() || selected.back() < i ||
           std::find(selected.begin(), selected.end(), i) == selected.end())) {
        selected.push_back(i);
      }
    }
    std::sort(selected.begin(), selected.end());
  }
  return selected;
}

}  // namespace ogbcache
