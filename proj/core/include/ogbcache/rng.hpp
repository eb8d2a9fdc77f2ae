#ifndef OGBCACHE_RNG_HPP
#define OGBCACHE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

// Deterministic draws on top of std::mt19937_64. The engine's output sequence
// is fully specified by the standard; the std:: distributions are not, so the
// variate mappings are spelled out here to keep traces and sampled cache paths
// byte-identical across platforms.

namespace ogbcache::rng {

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Uniform double in (0, 1): rejects the (measure ~2^-53) exact zero.
inline double uniform01_positive(std::mt19937_64& gen) {
  double u = uniform01(gen);
  while (u == 0.0) u = uniform01(gen);
  return u;
}

/// Unbiased integer in [0, n) by rejection.
inline std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t n) {
  const std::uint64_t threshold = -n % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t r = gen();
    if (r >= threshold) return r % n;
  }
}

/// Standard normal pairs via Box-Muller; next() hands them out one at a time.
class Gaussian {
 public:
  double next(std::mt19937_64& gen) {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01_positive(gen);
    const double u2 = uniform01(gen);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// splitmix64 step; used to derive independent seed streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Per-stream seed derived from a master seed (stream 0 != master).
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master ^ splitmix64(stream + 1));
}

}  // namespace ogbcache::rng

#endif  // OGBCACHE_RNG_HPP
