#pragma once

#include <cstddef>
#include <vector>

#include "loopsoup/rng.hpp"

namespace loopsoup {

// Element of Delta_1: a finite nonincreasing list of positive parts summing
// to 1 (the zero tail stays implicit). Parts below kMinPart are dropped and
// the deficit is renormalized over the rest, so split chains cannot grow
// unboundedly many microscopic parts.
class Partition {
 public:
  static constexpr double kMinPart = 1e-12;

  explicit Partition(std::vector<double> parts);
  static Partition single() { return Partition({1.0}); }

  std::size_t size() const { return parts_.size(); }
  double operator[](std::size_t i) const { return parts_[i]; }
  const std::vector<double>& parts() const { return parts_; }
  double sum() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<double> parts_;
};

// Split part i into u*p_i and (1-u)*p_i, re-sorted. Requires 0 < u < 1.
Partition split(const Partition& p, std::size_t i, double u);
// Merge parts i and j (i != j), re-sorted.
Partition merge(const Partition& p, std::size_t i, std::size_t j);

// P(index = i) = p_i.
std::size_t size_biased_index(const Partition& p, Rng& rng);

// One step of the K_{beta_s, beta_m} kernel: draw I, J independently
// size-biased; I == J proposes a uniform split accepted with probability
// beta_s, I != J proposes a merge accepted with probability beta_m.
Partition step_discrete(const Partition& p, double beta_s, double beta_m, Rng& rng);

// Continuous-time chain on [0, horizon] via the embedded jump chain: hold
// Exp(q(p)) with q(p) = beta_s * sum p_i^2 + beta_m * sum_{i != j} p_i p_j,
// then jump with kernel Q(p,.)/q(p).
Partition run_continuous(Partition p, double beta_s, double beta_m, double horizon, Rng& rng);

}  // namespace loopsoup
