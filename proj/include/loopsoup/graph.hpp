#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace loopsoup {

struct Edge {
  std::int32_t u;
  std::int32_t v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class Sublattice : std::uint8_t { A, B };

// Finite undirected graph. Vertices are dense indices 0..n-1; edges are
// stored canonically (u < v, sorted, no duplicates, no self-edges). The
// optional bipartition must put every edge between the two classes.
// Immutable after construction, so it can be shared across workers.
class Graph {
 public:
  Graph(std::int32_t vertex_count, std::vector<Edge> edges,
        std::optional<std::vector<Sublattice>> bipartition = std::nullopt);

  std::int32_t vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }
  const std::optional<std::vector<Sublattice>>& bipartition() const { return bipartition_; }
  bool bipartite() const { return bipartition_.has_value(); }
  Sublattice side(std::int32_t x) const { return (*bipartition_)[static_cast<std::size_t>(x)]; }

  // Incident edge indices, per vertex.
  const std::vector<std::int32_t>& incident(std::int32_t x) const {
    return incident_[static_cast<std::size_t>(x)];
  }
  std::int32_t max_degree() const { return max_degree_; }

  std::string to_json() const;
  static Graph from_json(const std::string& text);

 private:
  std::int32_t vertex_count_;
  std::vector<Edge> edges_;
  std::optional<std::vector<Sublattice>> bipartition_;
  std::vector<std::vector<std::int32_t>> incident_;
  std::int32_t max_degree_ = 0;
};

// Box {0..n-1}^d with nearest-neighbor edges, open or periodic. Vertex index
// is row-major in the coordinates (first coordinate slowest). A parity
// bipartition is attached whenever it is consistent (always for open
// boundaries, even n for periodic); otherwise it is omitted and a diagnostic
// goes to stderr. Periodic n=2 would duplicate edges; duplicates are
// collapsed with a diagnostic.
Graph cubic_lattice(int d, int n, bool periodic);

Graph complete_graph(int n);

// Two-coloring via breadth-first search; nullopt iff the graph has an odd
// cycle. The lowest-index vertex of each component gets color A.
std::optional<std::vector<Sublattice>> find_bipartition(const Graph& g);

}  // namespace loopsoup
