#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace ldd {

// Counter-based generator: output i is splitmix64(key + i * golden). Streams
// are split by hashing a tag into a fresh key, so subsystems never share
// state and results do not depend on call interleaving across streams.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return next(); }

  std::uint64_t next() { return mix(key_ + (++counter_) * kGolden); }

  // Independent child stream; does not advance this one.
  Rng split(std::uint64_t tag) const {
    Rng child(0);
    child.key_ = mix(key_ ^ mix(tag + kGolden) ^ 0xbb67ae8584caa73bULL);
    return child;
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1].
  double uniform_open_low() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

  // Uniform integer in [0, bound); bound > 0. Rejection keeps it unbiased.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  // Exponential with rate 1.
  double exponential() { return -std::log(uniform_open_low()); }

  std::uint64_t counter() const { return counter_; }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Number of Bernoulli(p) trials up to and including the first success, so
// Pr(X > t) = (1 - p)^t. Inverse transform; exactly 1 when p >= 1.
inline std::int64_t sample_geometric(double p, Rng& rng) {
  if (!(p > 0.0)) return std::numeric_limits<std::int64_t>::max();
  if (p >= 1.0) return 1;
  const double u = rng.uniform_open_low();
  const double x = std::ceil(std::log(u) / std::log1p(-p));
  if (!(x < 9.0e18)) return std::numeric_limits<std::int64_t>::max();
  return x < 1.0 ? 1 : static_cast<std::int64_t>(x);
}

}  // namespace ldd
