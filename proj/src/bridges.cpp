#include "loopsoup/bridges.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace loopsoup {

BridgeConfig::BridgeConfig(double beta, std::size_t edge_count) : beta_(beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  times_.resize(edge_count);
}

bool BridgeConfig::contains(std::size_t e, double t) const {
  const auto& ts = times_.at(e);
  return std::binary_search(ts.begin(), ts.end(), t);
}

void BridgeConfig::insert(std::size_t e, double t) {
  if (!(t >= 0.0 && t < beta_)) throw std::invalid_argument("bridge time outside [0, beta)");
  auto& ts = times_.at(e);
  const auto it = std::lower_bound(ts.begin(), ts.end(), t);
  if (it != ts.end() && *it == t) throw std::invalid_argument("duplicate bridge (e, t)");
  ts.insert(it, t);
  ++total_;
}

void BridgeConfig::remove(std::size_t e, double t) {
  auto& ts = times_.at(e);
  const auto it = std::lower_bound(ts.begin(), ts.end(), t);
  if (it == ts.end() || *it != t) throw std::invalid_argument("no such bridge (e, t)");
  ts.erase(it);
  --total_;
}

std::string BridgeConfig::to_json(const Graph& g) const {
  nlohmann::json j;
  j["beta"] = beta_;
  auto rows = nlohmann::json::array();
  for (std::size_t e = 0; e < times_.size(); ++e) {
    const auto& edge = g.edges()[e];
    for (const double t : times_[e]) rows.push_back({edge.u, edge.v, t});
  }
  j["bridges"] = std::move(rows);
  return j.dump();
}

BridgeConfig BridgeConfig::from_json(const Graph& g, const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  BridgeConfig w(j.at("beta").get<double>(), static_cast<std::size_t>(g.edge_count()));
  for (const auto& row : j.at("bridges")) {
    const Edge e{row.at(0).get<std::int32_t>(), row.at(1).get<std::int32_t>()};
    const auto it = std::lower_bound(g.edges().begin(), g.edges().end(), e);
    if (it == g.edges().end() || !(*it == e))
      throw std::invalid_argument("bridge on an edge not present in the graph");
    w.insert(static_cast<std::size_t>(it - g.edges().begin()), row.at(2).get<double>());
  }
  return w;
}

std::string BridgeConfig::to_csv(const Graph& g) const {
  std::string out = "edge_u,edge_v,time\n";
  char buf[64];
  for (std::size_t e = 0; e < times_.size(); ++e) {
    const auto& edge = g.edges()[e];
    for (const double t : times_[e]) {
      std::snprintf(buf, sizeof(buf), "%d,%d,%.17g\n", edge.u, edge.v, t);
      out += buf;
    }
  }
  return out;
}

BridgeConfig sample_rho(const Graph& g, double beta, Rng& rng) {
  BridgeConfig w(beta, static_cast<std::size_t>(g.edge_count()));
  for (std::size_t e = 0; e < w.edge_count(); ++e) {
    double t = rng.exponential();
    while (t < beta) {
      w.insert(e, t);
      t += rng.exponential();
    }
  }
  return w;
}

}  // namespace loopsoup
