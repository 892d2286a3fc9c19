#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace honeysim {

// Deterministic PRNG (PCG32). The standard library distributions are
// implementation-defined, so every draw used by the simulation goes through
// this class; event logs must be byte-identical for a given seed on any
// platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {
    inc_ = (stream << 1u) | 1u;
    state_ = 0u;
    next_u32();
    state_ += seed;
    next_u32();
  }

  std::uint32_t next_u32() {
    std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    auto rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
  }

  std::uint64_t next_u64() {
    std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound); bound must be > 0. Rejection sampling
  // keeps the draw unbiased and deterministic.
  std::uint32_t uniform_u32(std::uint32_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_u32: bound must be > 0");
    std::uint32_t threshold = (-bound) % bound;
    for (;;) {
      std::uint32_t r = next_u32();
      if (r >= threshold) return r % bound;
    }
  }

  std::size_t uniform_index(std::size_t n) { return uniform_u32(static_cast<std::uint32_t>(n)); }

  bool bernoulli(double p) {
    if (p <= 0.0) {
      if (p < 0.0) throw std::invalid_argument("bernoulli: p < 0");
      return false;
    }
    if (p >= 1.0) return true;
    return next_double() < p;
  }

  // Box-Muller; the spare value is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1, u2;
    do {
      u1 = next_double();
    } while (u1 <= 0.0);
    u2 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Log-normal parameterised by its median and log-space sigma.
  double lognormal_median(double median, double sigma) {
    return median * std::exp(sigma * normal());
  }

  double uniform_real(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {  // inclusive range
    if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
    return lo + static_cast<std::int64_t>(uniform_u32(static_cast<std::uint32_t>(hi - lo + 1)));
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = uniform_index(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct indices out of [0, n), in draw order.
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k) {
    if (k > n) k = n;
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    std::vector<std::size_t> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t j = i + uniform_index(n - i);
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
    return out;
  }

  // Independent deterministic substream; changing draws in one module must
  // not shift the streams handed to others.
  Rng fork(std::uint64_t tag) const {
    return Rng(splitmix64(seed_ ^ splitmix64(tag ^ 0x9e3779b97f4a7c15ULL)),
               splitmix64(stream_ ^ tag));
  }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 1;
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace honeysim
