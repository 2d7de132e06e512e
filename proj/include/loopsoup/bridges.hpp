#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "loopsoup/graph.hpp"
#include "loopsoup/rng.hpp"

namespace loopsoup {

// A bridge configuration: for each edge, a strictly increasing list of
// times on the half-open circle [0, beta). Value semantics; an MCMC worker
// owns and mutates its copy alone.
class BridgeConfig {
 public:
  BridgeConfig(double beta, std::size_t edge_count);

  double beta() const { return beta_; }
  std::size_t edge_count() const { return times_.size(); }
  const std::vector<double>& times(std::size_t e) const { return times_[e]; }
  std::size_t total_count() const { return total_; }

  bool contains(std::size_t e, double t) const;
  // Preconditions: t in [0, beta) and (e, t) absent for insert, present for
  // remove. Violations throw.
  void insert(std::size_t e, double t);
  void remove(std::size_t e, double t);

  // Portable dump: {"beta": .., "bridges": [[u, v, t], ..]} with times
  // serialized losslessly (shortest round-trip representation).
  std::string to_json(const Graph& g) const;
  static BridgeConfig from_json(const Graph& g, const std::string& text);
  // CSV rows (edge_u, edge_v, time), 17 significant digits.
  std::string to_csv(const Graph& g) const;

  friend bool operator==(const BridgeConfig&, const BridgeConfig&) = default;

 private:
  double beta_;
  std::vector<std::vector<double>> times_;
  std::size_t total_ = 0;
};

// The Poisson edge process rho_{E,beta}: an independent unit-intensity
// Poisson process on [0, beta) per edge, realized through exponential
// arrival gaps (times come out sorted and the count falls out for free).
BridgeConfig sample_rho(const Graph& g, double beta, Rng& rng);

}  // namespace loopsoup
