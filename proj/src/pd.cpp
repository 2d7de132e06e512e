#include "loopsoup/pd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace loopsoup {

double sample_beta_1_theta(double theta, Rng& rng) {
  if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
  double t;
  do {
    t = 1.0 - std::pow(rng.uniform_pos(), 1.0 / theta);
  } while (t <= 0.0 || t >= 1.0);
  return t;
}

Partition sample_pd_stick(double theta, double tol, Rng& rng) {
  if (!(tol > 0.0 && tol <= 1e-6)) throw std::invalid_argument("tol must lie in (0, 1e-6]");
  std::vector<double> parts;
  double remaining = 1.0;
  while (remaining >= tol) {
    const double t = sample_beta_1_theta(theta, rng);
    parts.push_back(t * remaining);
    remaining *= 1.0 - t;
  }
  return Partition(std::move(parts));
}

PppSample sample_ppp_atoms(double theta, double tol, Rng& rng) {
  if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
  PppSample out;
  double arrival = 0.0;
  for (;;) {
    arrival += rng.exponential(theta);
    const double envelope = std::exp(-arrival);
    const double xi = envelope * rng.exponential();
    out.points.push_back(xi);
    out.total += xi;
    if (envelope < tol) break;
  }
  std::sort(out.points.begin(), out.points.end(), std::greater<>());
  return out;
}

std::pair<Partition, double> sample_pd_ppp(double theta, double tol, Rng& rng) {
  const auto atoms = sample_ppp_atoms(theta, tol, rng);
  std::vector<double> parts(atoms.points);
  for (double& p : parts) p /= atoms.total;
  return {Partition(std::move(parts)), atoms.total};
}

double campbell_intensity_integral(const std::function<double(double)>& f, double theta) {
  const auto integrand = [&](double x) {
    const double fx = f(x);
    const double factor = fx > 700.0 ? 1.0 : -std::expm1(-fx);
    return factor * theta * std::exp(-x) / x;
  };
  // Adaptive Gauss-Kronrod; the bisection localizes interior jumps of f
  // (where the error estimate is conservative but the value is accurate).
  // The intensity decays like e^-x, so the remainder beyond x = 60 is below
  // theta * e^-60. Integrability failures at 0 are log-divergent, so two
  // lower cutoffs expose them.
  double err = 0.0;
  const double val = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 1e-14, 60.0, 14, 1e-10, &err);
  const double val_hi = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 1e-7, 60.0, 14, 1e-10);
  if (!std::isfinite(val) || std::abs(val - val_hi) > 1e-4 * std::max(1.0, std::abs(val)) ||
      err > 0.05 * std::max(1.0, std::abs(val)))
    throw std::runtime_error("campbell integral did not converge; is 1 - e^-f integrable?");
  return val;
}

CampbellResult campbell_check(const std::function<double(double)>& f, double theta,
                              std::size_t n_samples, Rng& rng) {
  CampbellResult res;
  res.analytic = std::exp(-campbell_intensity_integral(f, theta));
  std::vector<double> xs;
  xs.reserve(n_samples);
  for (std::size_t s = 0; s < n_samples; ++s) {
    const auto atoms = sample_ppp_atoms(theta, 1e-10, rng);
    double sum = 0.0;
    for (const double xi : atoms.points) {
      sum += f(xi);
      if (sum > 700.0) break;
    }
    xs.push_back(sum > 700.0 ? 0.0 : std::exp(-sum));
  }
  const auto mv = mean_var(xs);
  res.empirical = mv.mean;
  res.empirical_stderr = mv.stderr_mean();
  res.n = n_samples;
  res.z = res.empirical_stderr > 0.0 ? (res.empirical - res.analytic) / res.empirical_stderr : 0.0;
  return res;
}

KsResult size_biased_pick_test(double theta, std::size_t n_samples, Rng& rng) {
  std::vector<double> picks;
  picks.reserve(n_samples);
  for (std::size_t s = 0; s < n_samples; ++s) {
    const auto [p, total] = sample_pd_ppp(theta, 1e-10, rng);
    picks.push_back(p[size_biased_index(p, rng)]);
  }
  const auto cdf = [theta](double s) { return 1.0 - std::pow(1.0 - s, theta); };
  return ks_test(std::move(picks), cdf);
}

}  // namespace loopsoup
