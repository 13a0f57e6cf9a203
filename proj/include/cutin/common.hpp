#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cutin {

/// Bad input, malformed files, out-of-range configuration. Maps to exit
/// status 2 in the CLI.
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed clip/manifest content; carries a 1-based line number when known.
class ParseError : public ValidationError {
public:
  ParseError(const std::string& msg, int line)
      : ValidationError("line " + std::to_string(line) + ": " + msg), line_(line) {}
  explicit ParseError(const std::string& msg) : ValidationError(msg), line_(0) {}
  int line() const { return line_; }

private:
  int line_;
};

/// Configuration values outside their documented ranges.
class ConfigError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

/// Non-finite intermediates, singular matrices. Maps to exit status 1.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Synthetic generation could not satisfy the requested label.
class GenerationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// SplitMix64 finalizer. Used to derive independent sub-seeds from a master
/// seed plus a stream index.
inline uint64_t mix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
  return mix64(seed ^ mix64(stream));
}

/// Deterministic random source. Engine and distributions are implemented
/// here so that outputs are identical across platforms and library versions
/// (std:: distributions are not bit-specified).
class Rng {
public:
  explicit Rng(uint64_t seed) : s_{} { seed_state(seed); }

  uint64_t next_u64() {
    // xoshiro256++ (Blackman/Vigna), public domain reference construction.
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n). n must be positive.
  uint64_t bounded(uint64_t n) {
    const uint64_t threshold = (0 - n) % n;
    for (;;) {
      const uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  /// Standard normal via Box-Muller (no state caching, fully deterministic).
  double normal() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  double normal(double mean, double sigma) { return mean + sigma * normal(); }

  /// Deterministic Fisher-Yates shuffle.
  template <typename Vec>
  void shuffle(Vec& v) {
    for (size_t i = v.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(bounded(i));
      std::swap(v[i - 1], v[j]);
    }
  }

private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  void seed_state(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& w : s_) {
      sm += 0x9E3779B97F4A7C15ull;
      uint64_t z = sm;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
      w = z ^ (z >> 31);
    }
  }

  uint64_t s_[4];
};

}  // namespace cutin
