#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace loopsoup {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seeded random source used everywhere in the library.
//
// The engine (mt19937_64) is fully specified by the standard, and all variate
// transforms are implemented here instead of with std:: distributions, whose
// output is implementation-defined. A run must replay bit-identically from
// its seed on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Independent stream for replica `index` of a run seeded with `seed`.
  static Rng for_replica(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(seed ^ splitmix64(index + 0x51ed2701)));
  }

  std::uint64_t raw() { return eng_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Uniform on (0, 1).
  double uniform_pos() {
    double u;
    do {
      u = uniform();
    } while (u <= 0.0);
    return u;
  }

  // Uniform integer in [0, n), unbiased.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = -n % n;  // 2^64 mod n
    std::uint64_t r;
    do {
      r = eng_();
    } while (r < threshold);
    return r % n;
  }

  double exponential(double rate = 1.0) { return -std::log1p(-uniform()) / rate; }

  // Standard normal via the polar method.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

  // Gamma(shape, 1) by Marsaglia-Tsang, boosted to shape < 1 by the usual
  // power trick. Valid for all shape > 0.
  double gamma(double shape) {
    if (shape < 1.0) {
      return gamma(shape + 1.0) * std::pow(uniform_pos(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double beta(double a, double b) {
    const double x = gamma(a);
    const double y = gamma(b);
    return x / (x + y);
  }

  // Poisson count via unit-exponential arrival gaps; exact for any mean.
  std::uint64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    std::uint64_t k = 0;
    double acc = exponential();
    while (acc <= mean) {
      ++k;
      acc += exponential();
    }
    return k;
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace loopsoup
