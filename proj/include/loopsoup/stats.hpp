#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace loopsoup {

struct KsResult {
  double d = 0.0;   // statistic
  double p = 1.0;   // asymptotic p-value
  std::size_t n = 0;
};

// Kolmogorov distribution survival function Q(lambda) = P(K > lambda).
double kolmogorov_q(double lambda);

// One-sample KS against a CDF. Requires n >= 100 (the p-value uses the
// asymptotic Kolmogorov law).
KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf);

// Two-sample KS.
KsResult ks_test(std::vector<double> a, std::vector<double> b);

struct ChiSquareResult {
  double stat = 0.0;
  double p = 1.0;
  std::int64_t dof = 0;
};

// Goodness of fit with given expected counts; dof = cells - 1. Cells with
// tiny expectation should be merged by the caller beforehand.
ChiSquareResult chi_square_gof(const std::vector<double>& observed,
                               const std::vector<double>& expected);

struct MeanVar {
  double mean = 0.0;
  double var = 0.0;  // unbiased
  std::size_t n = 0;
  double stderr_mean() const;
};

MeanVar mean_var(const std::vector<double>& xs);

double pearson_correlation(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace loopsoup
