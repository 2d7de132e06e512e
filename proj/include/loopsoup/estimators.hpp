#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "loopsoup/decomposition.hpp"
#include "loopsoup/graph.hpp"
#include "loopsoup/rng.hpp"
#include "loopsoup/stats.hpp"

namespace loopsoup {

// One configuration's worth of observable input: the object summaries of a
// decomposition together with beta and |V|. Lengths in time units.
struct LengthSample {
  double beta = 0.0;
  std::int32_t n_vertices = 0;
  std::vector<ObjectStats> objects;
};

LengthSample make_length_sample(const Decomposition& dec, const Graph& g);

// Mean fraction of vertices on objects longer than K (time units):
// sum over objects with length > K of their strand count, over |V|.
double eta_infinity_hat(const std::vector<LengthSample>& samples, double k_time);
// Same with the macroscopic threshold eps * |V| * beta.
double eta_macro_hat(const std::vector<LengthSample>& samples, double eps);

// Survival probability of a Galton-Watson process with Poisson(s) offspring:
// the largest root of eta = 1 - exp(-s eta); zero for s <= 1. Bisection to
// 1e-12.
double gw_survival(double s);

// Right-hand side of the high-temperature exponential-decay bound
// P(L(gamma_x) > beta k) <= (a(kappa-1))^-1 [a kappa (1-1/kappa)^{-kappa+1}]^k
// with the model-dependent small parameter a. Vacuous when >= 1.
struct BoundResult {
  double a = 0.0;
  double value = 0.0;
  bool vacuous = false;
};
BoundResult high_temp_bound(double theta, double beta, int kappa, int k, Model model);

struct SchrammReport {
  int n = 0;
  double c = 0.0;
  double beta = 0.0;
  std::size_t n_samples = 0;
  double eta_expected = 0.0;       // gw_survival(2c)
  double macro_fraction = 0.0;     // vertices on cycles longer than n^(2/3)
  double largest_mean = 0.0;       // mean largest normalized part
  double pd_largest_mean = 0.0;    // same under the PD_1 oracle
  KsResult ks;                     // two-sample KS, largest part vs PD_1
  std::string to_json() const;
};

// Cycle structure of the interchange process on K_n near the transition:
// bridges at beta = 2c/(n-1) (so the expected transposition count is c n),
// cycle sizes normalized by n * gw_survival(2c), largest part compared to
// the PD_1 sampler. Requires c > 1/2 and theta = 1.
SchrammReport schramm_experiment(int n, double c, double theta, std::size_t n_samples,
                                 Rng& rng);

struct ContactScalingReport {
  std::string graph_json;
  double beta = 0.0;
  double theta = 0.0;
  std::size_t n_samples = 0;
  // fits of pair quantities against lambda_v * lambda_v' (vertex-strand
  // units) over pairs of objects with at least 2 strands each
  double c_zone = 0.0;       // fitted slope for |C_{g,g'}|
  double r2_zone = 0.0;
  double c_bridges = 0.0;    // fitted slope for |B_{g,g'}|
  double r2_bridges = 0.0;
  std::size_t n_pairs = 0;
  // K_n only: worst absolute deviation of the exact formulas
  double kn_pair_zone_max_err = -1.0;
  double kn_self_zone_max_err = -1.0;
  std::string to_json() const;
};

// Measure contact zones/bridges on rho-samples (theta = 1) and regress the
// pair quantities against the product of strand counts. On complete graphs
// the zone formulas are exact and the report carries their deviation.
ContactScalingReport contact_scaling_experiment(const Graph& g, double beta, double theta,
                                                std::size_t n_samples, Rng& rng);

}  // namespace loopsoup
