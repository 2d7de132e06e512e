#include "loopsoup/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace loopsoup {

double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // theta-function form, fast for small arguments
    const double y = std::exp(-M_PI * M_PI / (8.0 * lambda * lambda));
    const double sum = y + std::pow(y, 9.0) + std::pow(y, 25.0) + std::pow(y, 49.0);
    return 1.0 - std::sqrt(2.0 * M_PI) / lambda * sum;
  }
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = 2.0 * ((j % 2 == 1) ? 1.0 : -1.0) * std::exp(-2.0 * j * j * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-16) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf) {
  const auto n = sample.size();
  if (n < 100) throw std::invalid_argument("ks_test: need at least 100 samples");
  std::sort(sample.begin(), sample.end());
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / static_cast<double>(n)));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / static_cast<double>(n) - f));
  }
  return {d, kolmogorov_q(std::sqrt(static_cast<double>(n)) * d), n};
}

KsResult ks_test(std::vector<double> a, std::vector<double> b) {
  if (a.size() < 100 || b.size() < 100)
    throw std::invalid_argument("ks_test: need at least 100 samples per side");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double ne = na * nb / (na + nb);
  return {d, kolmogorov_q(std::sqrt(ne) * d), a.size() + b.size()};
}

ChiSquareResult chi_square_gof(const std::vector<double>& observed,
                               const std::vector<double>& expected) {
  if (observed.size() != expected.size() || observed.size() < 2)
    throw std::invalid_argument("chi_square_gof: need matching cell vectors");
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0) throw std::invalid_argument("chi_square_gof: nonpositive expectation");
    const double diff = observed[i] - expected[i];
    stat += diff * diff / expected[i];
  }
  const auto dof = static_cast<std::int64_t>(observed.size()) - 1;
  const double p = boost::math::gamma_q(static_cast<double>(dof) / 2.0, stat / 2.0);
  return {stat, p, dof};
}

double MeanVar::stderr_mean() const { return n > 1 ? std::sqrt(var / static_cast<double>(n)) : 0.0; }

MeanVar mean_var(const std::vector<double>& xs) {
  MeanVar mv;
  mv.n = xs.size();
  if (mv.n == 0) return mv;
  double s = 0.0;
  for (const double x : xs) s += x;
  mv.mean = s / static_cast<double>(mv.n);
  double q = 0.0;
  for (const double x : xs) q += (x - mv.mean) * (x - mv.mean);
  mv.var = mv.n > 1 ? q / static_cast<double>(mv.n - 1) : 0.0;
  return mv;
}

double pearson_correlation(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("pearson_correlation: size mismatch");
  const auto mx = mean_var(xs), my = mean_var(ys);
  double c = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) c += (xs[i] - mx.mean) * (ys[i] - my.mean);
  c /= static_cast<double>(xs.size() - 1);
  return c / std::sqrt(mx.var * my.var);
}

}  // namespace loopsoup
