#include "doctest.h"

#include <cmath>

#include "loopsoup/rng.hpp"
#include "loopsoup/stats.hpp"

using namespace loopsoup;

TEST_CASE("kolmogorov distribution endpoints") {
  CHECK(kolmogorov_q(1e-3) == doctest::Approx(1.0));
  CHECK(kolmogorov_q(10.0) < 1e-12);
  // Q(0.8275..) ~ 0.5 (median of the Kolmogorov law)
  CHECK(kolmogorov_q(0.82757) == doctest::Approx(0.5).epsilon(1e-3));
  // the two series branches join continuously at the crossover (the true
  // slope there is about -0.58)
  CHECK(std::abs(kolmogorov_q(1.1799) - kolmogorov_q(1.1801)) < 2e-4);
  CHECK(kolmogorov_q(1.0) == doctest::Approx(0.26999967168).epsilon(1e-8));
  CHECK(kolmogorov_q(1.5) == doctest::Approx(0.022217962617).epsilon(1e-8));
}

TEST_CASE("ks statistic of a sample against itself is tiny") {
  Rng rng(101);
  std::vector<double> xs;
  for (int i = 0; i < 1000; ++i) xs.push_back(rng.uniform());
  const auto res = ks_test(xs, xs);  // two-sample with identical samples
  CHECK(res.d == 0.0);
  CHECK(res.p == doctest::Approx(1.0));
}

TEST_CASE("ks detects a shift decisively") {
  Rng rng(103);
  std::vector<double> xs;
  for (int i = 0; i < 10000; ++i) xs.push_back(rng.uniform() + 0.2);
  const auto res = ks_test(xs, [](double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); });
  CHECK(res.p < 1e-6);
}

TEST_CASE("ks rejects tiny samples") {
  std::vector<double> xs(10, 0.5);
  CHECK_THROWS(ks_test(xs, [](double x) { return x; }));
}

TEST_CASE("uniform ks p-values are calibrated") {
  // 100 independent tests of a true null; the rejection fraction at 5%
  // should land near 5%
  Rng rng(107);
  int rejected = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> xs;
    for (int i = 0; i < 10000; ++i) xs.push_back(rng.uniform());
    const auto res = ks_test(xs, [](double x) { return x; });
    if (res.p < 0.05) ++rejected;
  }
  CHECK(rejected >= 1);
  CHECK(rejected <= 10);
}

TEST_CASE("chi square on fair dice") {
  Rng rng(109);
  std::vector<double> observed(6, 0.0);
  const int n = 60000;
  for (int i = 0; i < n; ++i) observed[rng.below(6)] += 1.0;
  const std::vector<double> expected(6, n / 6.0);
  const auto res = chi_square_gof(observed, expected);
  CHECK(res.dof == 5);
  CHECK(res.p > 0.001);
  // a loaded die is flagged
  observed[0] += 600;
  observed[1] -= 600;
  CHECK(chi_square_gof(observed, expected).p < 1e-6);
}

TEST_CASE("mean_var and correlation") {
  const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  const auto mv = mean_var(xs);
  CHECK(mv.mean == doctest::Approx(2.5));
  CHECK(mv.var == doctest::Approx(5.0 / 3.0));
  const std::vector<double> ys{2.0, 4.0, 6.0, 8.0};
  CHECK(pearson_correlation(xs, ys) == doctest::Approx(1.0));
  const std::vector<double> zs{4.0, 3.0, 2.0, 1.0};
  CHECK(pearson_correlation(xs, zs) == doctest::Approx(-1.0));
}

TEST_CASE("rng gamma and beta moments") {
  Rng rng(113);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.gamma(2.5);
    s += x;
    s2 += x * x;
  }
  const double mean = s / n;
  const double var = s2 / n - mean * mean;
  CHECK(std::abs(mean - 2.5) < 3.0 * std::sqrt(2.5 / n));
  CHECK(var == doctest::Approx(2.5).epsilon(0.05));

  double sb = 0.0;
  for (int i = 0; i < n; ++i) sb += rng.beta(2.0, 3.0);
  CHECK(std::abs(sb / n - 0.4) < 0.005);  // Beta(2,3) mean 2/5
}

TEST_CASE("rng poisson moments") {
  Rng rng(127);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<double>(rng.poisson(3.7));
    s += k;
    s2 += k * k;
  }
  const double mean = s / n;
  CHECK(std::abs(mean - 3.7) < 3.0 * std::sqrt(3.7 / n));
  CHECK(s2 / n - mean * mean == doctest::Approx(3.7).epsilon(0.05));
}

TEST_CASE("replica rng streams differ and replay") {
  auto a = Rng::for_replica(42, 0);
  auto b = Rng::for_replica(42, 1);
  auto a2 = Rng::for_replica(42, 0);
  CHECK(a.raw() != b.raw());
  CHECK(Rng::for_replica(42, 0).raw() == a2.raw());
}
