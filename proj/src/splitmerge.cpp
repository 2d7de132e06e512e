#include "loopsoup/splitmerge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace loopsoup {

Partition::Partition(std::vector<double> parts) : parts_(std::move(parts)) {
  double sum = 0.0;
  for (const double p : parts_) {
    if (!(p >= 0.0) || p > 1.0 + 1e-9) throw std::invalid_argument("part outside [0, 1]");
    sum += p;
  }
  // accept a truncation deficit up to the largest sampler tolerance
  if (std::abs(sum - 1.0) > 1e-6) throw std::invalid_argument("parts must sum to 1");
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
  while (!parts_.empty() && parts_.back() < kMinPart) parts_.pop_back();
  if (parts_.empty()) throw std::invalid_argument("partition lost all mass to truncation");
  double kept = 0.0;
  for (const double p : parts_) kept += p;
  for (double& p : parts_) p /= kept;
}

double Partition::sum() const {
  double s = 0.0;
  for (const double p : parts_) s += p;
  return s;
}

Partition split(const Partition& p, std::size_t i, double u) {
  if (i >= p.size()) throw std::out_of_range("split: index out of range");
  if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("split: u must lie in (0, 1)");
  std::vector<double> parts = p.parts();
  const double x = parts[i];
  parts[i] = u * x;
  parts.push_back((1.0 - u) * x);
  return Partition(std::move(parts));
}

Partition merge(const Partition& p, std::size_t i, std::size_t j) {
  if (i == j) throw std::invalid_argument("merge: indices must differ");
  if (i >= p.size() || j >= p.size()) throw std::out_of_range("merge: index out of range");
  std::vector<double> parts = p.parts();
  parts[std::min(i, j)] += parts[std::max(i, j)];
  parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(std::max(i, j)));
  return Partition(std::move(parts));
}

std::size_t size_biased_index(const Partition& p, Rng& rng) {
  const double r = rng.uniform() * p.sum();
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    if (r < acc) return i;
  }
  return p.size() - 1;
}

Partition step_discrete(const Partition& p, double beta_s, double beta_m, Rng& rng) {
  if (!(beta_s > 0.0 && beta_s <= 1.0 && beta_m > 0.0 && beta_m <= 1.0))
    throw std::invalid_argument("acceptance parameters must lie in (0, 1]");
  const auto i = size_biased_index(p, rng);
  const auto j = size_biased_index(p, rng);
  if (i == j) {
    if (rng.uniform() < beta_s) {
      double u;
      do {
        u = rng.uniform();
      } while (u <= 0.0 || u >= 1.0);
      return split(p, i, u);
    }
    return p;
  }
  if (rng.uniform() < beta_m) return merge(p, i, j);
  return p;
}

Partition run_continuous(Partition p, double beta_s, double beta_m, double horizon, Rng& rng) {
  if (horizon < 0.0) throw std::invalid_argument("horizon must be nonnegative");
  double t = 0.0;
  for (;;) {
    double s2 = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s2 += p[i] * p[i];
    const double split_w = beta_s * s2;
    const double merge_w = beta_m * (1.0 - s2);
    const double q = split_w + merge_w;
    if (q <= 0.0) return p;
    t += rng.exponential(q);
    if (t > horizon) return p;
    if (rng.uniform() * q < split_w) {
      // pick i with probability p_i^2 / s2
      const double r = rng.uniform() * s2;
      double acc = 0.0;
      std::size_t i = p.size() - 1;
      for (std::size_t k = 0; k < p.size(); ++k) {
        acc += p[k] * p[k];
        if (r < acc) {
          i = k;
          break;
        }
      }
      double u;
      do {
        u = rng.uniform();
      } while (u <= 0.0 || u >= 1.0);
      p = split(p, i, u);
    } else {
      // sample the ordered pair directly: P(i, j | i != j) = p_i p_j / (1 - s2);
      // rejection on two size-biased picks can stall when one part carries
      // nearly all the mass
      const double s1 = p.sum();
      double norm = 0.0;
      for (std::size_t k = 0; k < p.size(); ++k) norm += p[k] * (s1 - p[k]);
      double r = rng.uniform() * norm;
      std::size_t i = p.size() - 1;
      for (std::size_t k = 0; k < p.size(); ++k) {
        const double wgt = p[k] * (s1 - p[k]);
        if (r < wgt) {
          i = k;
          break;
        }
        r -= wgt;
      }
      double r2 = rng.uniform() * (s1 - p[i]);
      std::size_t j = i == p.size() - 1 ? p.size() - 2 : p.size() - 1;
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (k == i) continue;
        if (r2 < p[k]) {
          j = k;
          break;
        }
        r2 -= p[k];
      }
      p = merge(p, i, j);
    }
  }
}

}  // namespace loopsoup
