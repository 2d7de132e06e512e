#include "loopsoup/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

#include "loopsoup/pd.hpp"

namespace loopsoup {

LengthSample make_length_sample(const Decomposition& dec, const Graph& g) {
  return {dec.beta(), g.vertex_count(), dec.objects()};
}

double eta_infinity_hat(const std::vector<LengthSample>& samples, double k_time) {
  if (!(k_time > 0.0)) throw std::invalid_argument("cutoff must be positive");
  if (samples.empty()) return 0.0;
  double acc = 0.0;
  for (const auto& s : samples) {
    std::int64_t count = 0;
    for (const auto& obj : s.objects)
      if (obj.length > k_time) count += obj.strands;
    acc += static_cast<double>(count) / static_cast<double>(s.n_vertices);
  }
  return acc / static_cast<double>(samples.size());
}

double eta_macro_hat(const std::vector<LengthSample>& samples, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (samples.empty()) return 0.0;
  double acc = 0.0;
  for (const auto& s : samples) {
    const double threshold = eps * static_cast<double>(s.n_vertices) * s.beta;
    std::int64_t count = 0;
    for (const auto& obj : s.objects)
      if (obj.length > threshold) count += obj.strands;
    acc += static_cast<double>(count) / static_cast<double>(s.n_vertices);
  }
  return acc / static_cast<double>(samples.size());
}

double gw_survival(double s) {
  if (!(s > 0.0)) throw std::invalid_argument("offspring mean must be positive");
  if (s <= 1.0) return 0.0;
  const auto f = [s](double eta) { return 1.0 - std::exp(-s * eta) - eta; };
  // f(0) = 0 and f'(0) > 0 for s > 1; scan down for a positive bracket start
  double lo = 0.5;
  while (f(lo) <= 0.0) lo /= 2.0;
  double hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

BoundResult high_temp_bound(double theta, double beta, int kappa, int k, Model model) {
  if (kappa < 2) throw std::invalid_argument("bound needs max degree >= 2");
  if (!(theta > 0.0 && beta > 0.0)) throw std::invalid_argument("theta, beta must be positive");
  BoundResult out;
  if (theta <= 1.0)
    out.a = (1.0 - std::exp(-beta)) / theta;
  else
    out.a = model == Model::cycles ? 1.0 - std::exp(-beta)
                                   : std::exp(-beta) * std::expm1(beta * theta);
  const double kd = static_cast<double>(kappa);
  const double ratio = out.a * kd * std::pow(1.0 - 1.0 / kd, -(kd - 1.0));
  out.value = std::pow(out.a * (kd - 1.0), -1.0) * std::pow(ratio, static_cast<double>(k));
  out.vacuous = !(out.value < 1.0);
  return out;
}

std::string SchrammReport::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["c"] = c;
  j["beta"] = beta;
  j["n_samples"] = n_samples;
  j["eta_expected"] = eta_expected;
  j["macro_fraction"] = macro_fraction;
  j["largest_mean"] = largest_mean;
  j["pd_largest_mean"] = pd_largest_mean;
  j["ks"] = {{"d", ks.d}, {"p", ks.p}, {"n", ks.n}};
  return j.dump();
}

SchrammReport schramm_experiment(int n, double c, double theta, std::size_t n_samples,
                                 Rng& rng) {
  if (!(c > 0.5)) throw std::invalid_argument("schramm experiment needs c > 1/2");
  if (theta != 1.0)
    throw std::invalid_argument("direct sampling realizes the theta = 1 measure only");
  const auto g = complete_graph(n);
  SchrammReport rep;
  rep.n = n;
  rep.c = c;
  rep.beta = 2.0 * c / static_cast<double>(n - 1);  // E[#bridges] = c n exactly
  rep.n_samples = n_samples;
  rep.eta_expected = gw_survival(2.0 * c);

  const double norm = static_cast<double>(n) * rep.eta_expected;
  const double macro_cut = std::pow(static_cast<double>(n), 2.0 / 3.0);
  std::vector<double> largest;
  largest.reserve(n_samples);
  double macro_acc = 0.0;
  for (std::size_t s = 0; s < n_samples; ++s) {
    const auto w = sample_rho(g, rep.beta, rng);
    const auto dec = cycles(w, g);
    std::int64_t macro = 0;
    std::int32_t max_strands = 0;
    for (const auto& obj : dec.objects()) {
      max_strands = std::max(max_strands, obj.strands);
      if (static_cast<double>(obj.strands) > macro_cut) macro += obj.strands;
    }
    largest.push_back(static_cast<double>(max_strands) / norm);
    macro_acc += static_cast<double>(macro) / static_cast<double>(n);
  }
  rep.macro_fraction = macro_acc / static_cast<double>(n_samples);
  rep.largest_mean = mean_var(largest).mean;

  std::vector<double> pd_largest;
  pd_largest.reserve(n_samples);
  for (std::size_t s = 0; s < n_samples; ++s) {
    const auto [p, total] = sample_pd_ppp(1.0, 1e-10, rng);
    pd_largest.push_back(p[0]);
  }
  rep.pd_largest_mean = mean_var(pd_largest).mean;
  rep.ks = ks_test(std::move(largest), std::move(pd_largest));
  return rep;
}

namespace {

struct Fit {
  double slope = 0.0;
  double r2 = 0.0;
};

// least squares through the origin
Fit fit_proportional(const std::vector<double>& xs, const std::vector<double>& ys) {
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  Fit f;
  if (sxx == 0.0) return f;
  f.slope = sxy / sxx;
  const auto my = mean_var(ys).mean;
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ss_res += (ys[i] - f.slope * xs[i]) * (ys[i] - f.slope * xs[i]);
    ss_tot += (ys[i] - my) * (ys[i] - my);
  }
  f.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

}  // namespace

std::string ContactScalingReport::to_json() const {
  nlohmann::json j;
  j["graph"] = nlohmann::json::parse(graph_json);
  j["beta"] = beta;
  j["theta"] = theta;
  j["n_samples"] = n_samples;
  j["c_zone"] = c_zone;
  j["r2_zone"] = r2_zone;
  j["c_bridges"] = c_bridges;
  j["r2_bridges"] = r2_bridges;
  j["n_pairs"] = n_pairs;
  if (kn_pair_zone_max_err >= 0.0) {
    j["kn_pair_zone_max_err"] = kn_pair_zone_max_err;
    j["kn_self_zone_max_err"] = kn_self_zone_max_err;
  }
  return j.dump();
}

ContactScalingReport contact_scaling_experiment(const Graph& g, double beta, double theta,
                                                std::size_t n_samples, Rng& rng) {
  if (theta != 1.0)
    throw std::invalid_argument("direct sampling realizes the theta = 1 measure only");
  ContactScalingReport rep;
  rep.graph_json = g.to_json();
  rep.beta = beta;
  rep.theta = theta;
  rep.n_samples = n_samples;

  const auto n = g.vertex_count();
  const bool is_complete =
      g.edge_count() == static_cast<std::int64_t>(n) * (n - 1) / 2 && n >= 3;

  std::vector<double> xs, zone_ys, bridge_ys;
  for (std::size_t s = 0; s < n_samples; ++s) {
    const auto w = sample_rho(g, beta, rng);
    const auto dec = cycles(w, g);
    const auto rep_c = contact_report(w, dec, g);
    const auto& objs = dec.objects();
    for (const auto& [pair, zone] : rep_c.pair_zone) {
      const auto& a = objs[static_cast<std::size_t>(pair.first)];
      const auto& b = objs[static_cast<std::size_t>(pair.second)];
      if (a.strands < 2 || b.strands < 2) continue;
      const double x = static_cast<double>(a.strands) * static_cast<double>(b.strands);
      xs.push_back(x);
      zone_ys.push_back(zone);
      const auto itb = rep_c.pair_bridges.find(pair);
      bridge_ys.push_back(itb == rep_c.pair_bridges.end()
                              ? 0.0
                              : static_cast<double>(itb->second));
    }
    if (is_complete) {
      for (const auto& [pair, zone] : rep_c.pair_zone) {
        const auto& a = objs[static_cast<std::size_t>(pair.first)];
        const auto& b = objs[static_cast<std::size_t>(pair.second)];
        const double expected = beta * static_cast<double>(a.strands) * static_cast<double>(b.strands);
        rep.kn_pair_zone_max_err = std::max(rep.kn_pair_zone_max_err, std::abs(zone - expected));
      }
      for (std::size_t i = 0; i < objs.size(); ++i) {
        const double lv = static_cast<double>(objs[i].strands);
        const double expected = 0.5 * beta * lv * (lv - 1.0);
        rep.kn_self_zone_max_err =
            std::max(rep.kn_self_zone_max_err, std::abs(rep_c.self_zone[i] - expected));
      }
    }
  }
  rep.n_pairs = xs.size();
  const auto fz = fit_proportional(xs, zone_ys);
  const auto fb = fit_proportional(xs, bridge_ys);
  rep.c_zone = fz.slope;
  rep.r2_zone = fz.r2;
  rep.c_bridges = fb.slope;
  rep.r2_bridges = fb.r2;
  return rep;
}

}  // namespace loopsoup
