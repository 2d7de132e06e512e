#include "doctest.h"

#include <cmath>

#include "loopsoup/estimators.hpp"

using namespace loopsoup;

TEST_CASE("gw survival fixed point") {
  CHECK(gw_survival(0.5) == 0.0);
  CHECK(gw_survival(1.0) == 0.0);
  const double eta2 = gw_survival(2.0);
  CHECK(eta2 == doctest::Approx(0.7968121300).epsilon(1e-9));
  CHECK(1.0 - std::exp(-2.0 * eta2) == doctest::Approx(eta2).epsilon(1e-9));
  CHECK(gw_survival(50.0) > (1.0 - std::exp(-49.0)) / 1.01);
  CHECK(gw_survival(50.0) <= 1.0);
}

TEST_CASE("eta estimators on degenerate samples") {
  // all-trivial configurations: nothing exceeds K > beta
  LengthSample trivial{1.0, 4, {{1.0, 0, 1}, {1.0, 0, 1}, {1.0, 0, 1}, {1.0, 0, 1}}};
  CHECK(eta_infinity_hat({trivial}, 1.5) == 0.0);
  // one object holding every vertex
  LengthSample giant{1.0, 4, {{4.0, 0, 4}}};
  CHECK(eta_infinity_hat({giant}, 3.9) == 1.0);
  CHECK(eta_infinity_hat({giant, trivial}, 1.5) == 0.5);
  // monotone in K
  const std::vector<LengthSample> mix{giant, trivial};
  double prev = 1.0;
  for (double k = 0.5; k < 5.0; k += 0.5) {
    const double cur = eta_infinity_hat(mix, k);
    CHECK(cur <= prev + 1e-12);
    CHECK(cur >= 0.0);
    CHECK(cur <= 1.0);
    prev = cur;
  }
  // eta_macro with threshold eps |V| beta = 2.0 at eps = 0.5
  CHECK(eta_macro_hat({giant}, 0.5) == 1.0);
  CHECK(eta_macro_hat({trivial}, 0.5) == 0.0);
}

TEST_CASE("high temperature bound formula") {
  // at theta = 1 cycles and loops share a = 1 - e^{-beta}
  const auto bc = high_temp_bound(1.0, 0.4, 4, 3, Model::cycles);
  const auto bl = high_temp_bound(1.0, 0.4, 4, 3, Model::loops);
  CHECK(bc.a == doctest::Approx(bl.a));
  CHECK(bc.value == doctest::Approx(bl.value));
  // direct evaluation
  const double a = 1.0 - std::exp(-0.4);
  const double expect = (1.0 / (a * 3.0)) * std::pow(a * 4.0 * std::pow(0.75, -3.0), 3.0);
  CHECK(bc.value == doctest::Approx(expect).epsilon(1e-12));
  // vacuous flag
  CHECK(high_temp_bound(1.0, 2.0, 4, 1, Model::cycles).vacuous);
  CHECK_FALSE(high_temp_bound(1.0, 0.05, 4, 8, Model::cycles).vacuous);
  // loops with theta > 1 use a = e^{-beta}(e^{beta theta} - 1)
  const auto b2 = high_temp_bound(2.0, 0.3, 4, 3, Model::loops);
  CHECK(b2.a == doctest::Approx(std::exp(-0.3) * std::expm1(0.6)));
  // cycles with theta > 1 keep a = 1 - e^{-beta}
  CHECK(high_temp_bound(2.0, 0.3, 4, 3, Model::cycles).a == doctest::Approx(1.0 - std::exp(-0.3)));
  // theta < 1 scales a by 1/theta in both models
  CHECK(high_temp_bound(0.5, 0.3, 4, 3, Model::cycles).a ==
        doctest::Approx(2.0 * (1.0 - std::exp(-0.3))));
}

TEST_CASE("empirical tail never beats the bound where it bites") {
  // small beta on the 6x6 lattice: bound < 1 for large k and the empirical
  // tail must stay below it (3 sigma)
  const auto g = cubic_lattice(2, 6, false);
  Rng rng(509);
  const double beta = 0.05;
  std::vector<LengthSample> samples;
  for (int i = 0; i < 20000; ++i)
    samples.push_back(make_length_sample(cycles(sample_rho(g, beta, rng), g), g));
  for (const int k : {2, 3, 4}) {
    const auto bound = high_temp_bound(1.0, beta, g.max_degree(), k, Model::cycles);
    const double hat = eta_infinity_hat(samples, beta * k);
    const double se = std::sqrt(hat * (1.0 - hat) / static_cast<double>(samples.size())) + 1e-12;
    CHECK(hat - 3.0 * se <= bound.value);
  }
}

TEST_CASE("schramm experiment rejects bad parameters") {
  Rng rng(521);
  CHECK_THROWS(schramm_experiment(50, 0.4, 1.0, 10, rng));
  CHECK_THROWS(schramm_experiment(50, 1.0, 2.0, 10, rng));
}

TEST_CASE("schramm experiment at small n tracks the giant component") {
  Rng rng(523);
  const int n = 60;
  const auto rep = schramm_experiment(n, 1.0, 1.0, 400, rng);
  const double eta = rep.eta_expected;
  CHECK(eta == doctest::Approx(0.7968121300).epsilon(1e-6));
  CHECK(rep.beta == doctest::Approx(2.0 / 59.0));
  // The n^(2/3) cutoff is not small relative to the giant at finite n: under
  // PD_1 the mass in parts below relative size x is x in expectation, so the
  // measured fraction sits near eta (1 - x) with x = n^(2/3) / (n eta).
  const double x = std::pow(n, 2.0 / 3.0) / (n * eta);
  CHECK(std::abs(rep.macro_fraction - eta * (1.0 - x)) < 0.05);
  CHECK(rep.largest_mean > 0.3);
  CHECK(rep.largest_mean < 1.0);
}

TEST_CASE("contact scaling on the complete graph is exact") {
  Rng rng(541);
  const auto g = complete_graph(12);
  const auto rep = contact_scaling_experiment(g, 0.4, 1.0, 40, rng);
  CHECK(rep.kn_pair_zone_max_err >= 0.0);
  CHECK(rep.kn_pair_zone_max_err < 1e-9);
  CHECK(rep.kn_self_zone_max_err < 1e-9);
  // fitted slope of the pair zone is beta with no residual
  if (rep.n_pairs > 0) {
    CHECK(rep.c_zone == doctest::Approx(0.4).epsilon(1e-9));
    CHECK(rep.r2_zone == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("length sample construction") {
  const auto g = complete_graph(4);
  Rng rng(547);
  const auto w = sample_rho(g, 1.0, rng);
  const auto dec = cycles(w, g);
  const auto ls = make_length_sample(dec, g);
  CHECK(ls.n_vertices == 4);
  CHECK(ls.beta == 1.0);
  CHECK(ls.objects.size() == static_cast<std::size_t>(dec.size()));
}
