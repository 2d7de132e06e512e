#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "loopsoup/rng.hpp"
#include "loopsoup/splitmerge.hpp"
#include "loopsoup/stats.hpp"

namespace loopsoup {

// Beta(1, theta) by inverse CDF: 1 - U^{1/theta}.
double sample_beta_1_theta(double theta, Rng& rng);

// GEM stick-breaking, sticks generated until the unallocated mass drops
// below tol, then sorted decreasing with the deficit renormalized.
Partition sample_pd_stick(double theta, double tol, Rng& rng);

// Atoms of the PPP with intensity theta x^-1 e^-x, by the arrival
// construction xi_i = exp(-T_i) E_i with T_i the points of a rate-theta
// Poisson process. Generation stops when exp(-T_i) < tol, which bounds each
// remaining atom by tol * E_j. Points returned decreasing, unnormalized.
struct PppSample {
  std::vector<double> points;
  double total = 0.0;
};
PppSample sample_ppp_atoms(double theta, double tol, Rng& rng);

// PD_theta as the normalized sorted atoms; also returns the unnormalized
// total, which is Gamma(theta, 1) distributed.
std::pair<Partition, double> sample_pd_ppp(double theta, double tol, Rng& rng);

// Intensity integral I(f) = int (1 - e^-f(x)) theta x^-1 e^-x dx by
// adaptive quadrature; throws if the integral fails to converge.
double campbell_intensity_integral(const std::function<double(double)>& f, double theta);

struct CampbellResult {
  double empirical = 0.0;
  double empirical_stderr = 0.0;
  double analytic = 0.0;
  double z = 0.0;
  std::size_t n = 0;
};

// Campbell's formula check: empirical mean of exp(-sum f(xi_i)) against
// exp(-I(f)).
CampbellResult campbell_check(const std::function<double(double)>& f, double theta,
                              std::size_t n_samples, Rng& rng);

// KS of a size-biased pick from PD_theta against Beta(1, theta).
KsResult size_biased_pick_test(double theta, std::size_t n_samples, Rng& rng);

}  // namespace loopsoup
