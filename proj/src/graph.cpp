#include "loopsoup/graph.hpp"

#include <algorithm>
#include <deque>
#include <iostream>
#include <stdexcept>

#include "json.hpp"

namespace loopsoup {

Graph::Graph(std::int32_t vertex_count, std::vector<Edge> edges,
             std::optional<std::vector<Sublattice>> bipartition)
    : vertex_count_(vertex_count), bipartition_(std::move(bipartition)) {
  if (vertex_count < 1) throw std::invalid_argument("graph needs at least one vertex");
  for (auto& e : edges) {
    if (e.u == e.v) throw std::invalid_argument("self-edges are not allowed");
    if (e.u < 0 || e.v < 0 || e.u >= vertex_count || e.v >= vertex_count)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);

  if (bipartition_) {
    if (static_cast<std::int32_t>(bipartition_->size()) != vertex_count)
      throw std::invalid_argument("bipartition size mismatch");
    for (const auto& e : edges_) {
      if ((*bipartition_)[e.u] == (*bipartition_)[e.v])
        throw std::invalid_argument("bipartition does not separate edge endpoints");
    }
  }

  incident_.resize(static_cast<std::size_t>(vertex_count));
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    incident_[edges_[i].u].push_back(static_cast<std::int32_t>(i));
    incident_[edges_[i].v].push_back(static_cast<std::int32_t>(i));
  }
  for (const auto& inc : incident_)
    max_degree_ = std::max(max_degree_, static_cast<std::int32_t>(inc.size()));
}

std::string Graph::to_json() const {
  nlohmann::json j;
  j["vertices"] = vertex_count_;
  auto edges = nlohmann::json::array();
  for (const auto& e : edges_) edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  if (bipartition_) {
    std::string s(bipartition_->size(), 'A');
    for (std::size_t i = 0; i < bipartition_->size(); ++i)
      s[i] = (*bipartition_)[i] == Sublattice::A ? 'A' : 'B';
    j["bipartition"] = s;
  } else {
    j["bipartition"] = nullptr;
  }
  return j.dump();
}

Graph Graph::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges"))
    edges.push_back({e.at(0).get<std::int32_t>(), e.at(1).get<std::int32_t>()});
  std::optional<std::vector<Sublattice>> bip;
  if (j.contains("bipartition") && !j.at("bipartition").is_null()) {
    const auto s = j.at("bipartition").get<std::string>();
    std::vector<Sublattice> b(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
      b[i] = s[i] == 'A' ? Sublattice::A : Sublattice::B;
    bip = std::move(b);
  }
  return Graph(j.at("vertices").get<std::int32_t>(), std::move(edges), std::move(bip));
}

Graph cubic_lattice(int d, int n, bool periodic) {
  if (d < 1 || d > 4) throw std::invalid_argument("cubic_lattice: d must be in 1..4");
  if (n < 1) throw std::invalid_argument("cubic_lattice: n must be >= 1");

  std::int64_t count = 1;
  for (int i = 0; i < d; ++i) count *= n;
  const auto n_vertices = static_cast<std::int32_t>(count);

  std::vector<Edge> edges;
  std::vector<int> coord(static_cast<std::size_t>(d), 0);
  bool duplicates = false;
  for (std::int32_t x = 0; x < n_vertices; ++x) {
    for (int dim = 0; dim < d; ++dim) {
      std::int64_t stride = 1;
      for (int i = dim + 1; i < d; ++i) stride *= n;
      const int c = coord[static_cast<std::size_t>(dim)];
      if (c + 1 < n) {
        edges.push_back({x, static_cast<std::int32_t>(x + stride)});
      } else if (periodic && n > 1) {
        const auto y = static_cast<std::int32_t>(x - stride * (n - 1));
        if (x == y) continue;  // n == 1 wrap would be a self-edge
        Edge e{std::min(x, y), std::max(x, y)};
        if (n == 2) duplicates = true;  // wrap coincides with the +1 neighbor
        edges.push_back(e);
      }
    }
    // advance row-major coordinates
    for (int dim = d - 1; dim >= 0; --dim) {
      if (++coord[static_cast<std::size_t>(dim)] < n) break;
      coord[static_cast<std::size_t>(dim)] = 0;
    }
  }
  if (duplicates)
    std::cerr << "cubic_lattice: periodic n=2 wrap-around duplicates collapsed\n";

  std::optional<std::vector<Sublattice>> bip;
  if (!periodic || n % 2 == 0 || n == 1) {
    std::vector<Sublattice> b(static_cast<std::size_t>(n_vertices));
    std::fill(coord.begin(), coord.end(), 0);
    for (std::int32_t x = 0; x < n_vertices; ++x) {
      int parity = 0;
      for (int dim = 0; dim < d; ++dim) parity += coord[static_cast<std::size_t>(dim)];
      b[static_cast<std::size_t>(x)] = parity % 2 == 0 ? Sublattice::A : Sublattice::B;
      for (int dim = d - 1; dim >= 0; --dim) {
        if (++coord[static_cast<std::size_t>(dim)] < n) break;
        coord[static_cast<std::size_t>(dim)] = 0;
      }
    }
    bip = std::move(b);
  } else {
    std::cerr << "cubic_lattice: periodic odd n is not bipartite; bipartition omitted\n";
  }

  return Graph(n_vertices, std::move(edges), std::move(bip));
}

Graph complete_graph(int n) {
  if (n < 2) throw std::invalid_argument("complete_graph: n must be >= 2");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (std::int32_t u = 0; u < n; ++u)
    for (std::int32_t v = u + 1; v < n; ++v) edges.push_back({u, v});
  std::optional<std::vector<Sublattice>> bip;
  if (n == 2) bip = std::vector<Sublattice>{Sublattice::A, Sublattice::B};
  return Graph(n, std::move(edges), std::move(bip));
}

std::optional<std::vector<Sublattice>> find_bipartition(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<int> color(n, -1);
  for (std::int32_t root = 0; root < g.vertex_count(); ++root) {
    if (color[static_cast<std::size_t>(root)] != -1) continue;
    color[static_cast<std::size_t>(root)] = 0;
    std::deque<std::int32_t> queue{root};
    while (!queue.empty()) {
      const auto x = queue.front();
      queue.pop_front();
      for (const auto ei : g.incident(x)) {
        const auto& e = g.edges()[static_cast<std::size_t>(ei)];
        const auto y = e.u == x ? e.v : e.u;
        if (color[static_cast<std::size_t>(y)] == -1) {
          color[static_cast<std::size_t>(y)] = 1 - color[static_cast<std::size_t>(x)];
          queue.push_back(y);
        } else if (color[static_cast<std::size_t>(y)] == color[static_cast<std::size_t>(x)]) {
          return std::nullopt;
        }
      }
    }
  }
  std::vector<Sublattice> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = color[i] == 0 ? Sublattice::A : Sublattice::B;
  return out;
}

}  // namespace loopsoup
