#include "doctest.h"

#include <set>

#include "loopsoup/graph.hpp"
#include "loopsoup/rng.hpp"

using namespace loopsoup;

namespace {

// all 2^V colorings, for cross-checking find_bipartition on tiny graphs
bool brute_force_bipartite(const Graph& g) {
  const int n = g.vertex_count();
  for (int mask = 0; mask < (1 << n); ++mask) {
    bool ok = true;
    for (const auto& e : g.edges())
      if (((mask >> e.u) & 1) == ((mask >> e.v) & 1)) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("cubic lattice counts") {
  const auto line = cubic_lattice(1, 2, false);
  CHECK(line.vertex_count() == 2);
  CHECK(line.edge_count() == 1);
  CHECK(line.max_degree() == 1);

  const auto sq3 = cubic_lattice(2, 3, false);
  CHECK(sq3.vertex_count() == 9);
  CHECK(sq3.edge_count() == 12);  // 2 n (n-1)

  const auto sq4p = cubic_lattice(2, 4, true);
  CHECK(sq4p.vertex_count() == 16);
  CHECK(sq4p.edge_count() == 32);  // 2 n^2
  CHECK(sq4p.max_degree() == 4);
  REQUIRE(sq4p.bipartite());
  for (const auto& e : sq4p.edges()) CHECK(sq4p.side(e.u) != sq4p.side(e.v));

  // open boundary: |E| = d n^(d-1) (n-1); periodic n >= 3: |E| = d n^d
  for (int d = 1; d <= 3; ++d)
    for (int n = 2; n <= 4; ++n) {
      std::int64_t nd1 = 1;
      for (int i = 0; i < d - 1; ++i) nd1 *= n;
      CHECK(cubic_lattice(d, n, false).edge_count() == d * nd1 * (n - 1));
      if (n >= 3) CHECK(cubic_lattice(d, n, true).edge_count() == d * nd1 * n);
    }
}

TEST_CASE("periodic odd side drops the bipartition") {
  const auto g = cubic_lattice(2, 3, true);
  CHECK_FALSE(g.bipartite());
  CHECK(g.edge_count() == 18);
  CHECK_FALSE(find_bipartition(g).has_value());
}

TEST_CASE("periodic n=2 collapses duplicate edges") {
  const auto g = cubic_lattice(1, 2, true);
  CHECK(g.edge_count() == 1);
  const auto g2 = cubic_lattice(2, 2, true);
  CHECK(g2.edge_count() == 4);
}

TEST_CASE("complete graph") {
  CHECK(complete_graph(2).edge_count() == 1);
  const auto k4 = complete_graph(4);
  CHECK(k4.edge_count() == 6);
  CHECK(k4.max_degree() == 3);
  CHECK_FALSE(k4.bipartite());
  CHECK(complete_graph(200).edge_count() == 19900);
}

TEST_CASE("find_bipartition basics") {
  const auto path = Graph(3, {{0, 1}, {1, 2}});
  const auto bip = find_bipartition(path);
  REQUIRE(bip.has_value());
  CHECK((*bip)[0] == Sublattice::A);
  CHECK((*bip)[1] == Sublattice::B);
  CHECK((*bip)[2] == Sublattice::A);

  const auto triangle = Graph(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK_FALSE(find_bipartition(triangle).has_value());

  const auto lattice = cubic_lattice(2, 4, true);
  const auto coloring = find_bipartition(lattice);
  REQUIRE(coloring.has_value());
  for (const auto& e : lattice.edges()) CHECK((*coloring)[e.u] != (*coloring)[e.v]);
}

TEST_CASE("find_bipartition agrees with exhaustive search on small graphs") {
  Rng rng(20240601);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(7));  // up to 8 vertices
    std::set<Edge> edges;
    const int m = static_cast<int>(rng.below(static_cast<std::uint64_t>(n * (n - 1) / 2 + 1)));
    for (int i = 0; i < m; ++i) {
      const auto u = static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(n)));
      const auto v = static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(n)));
      if (u != v) edges.insert(Edge{std::min(u, v), std::max(u, v)});
    }
    const Graph g(n, {edges.begin(), edges.end()});
    CHECK(find_bipartition(g).has_value() == brute_force_bipartite(g));
  }
}

TEST_CASE("edge canonicalization is idempotent") {
  const Graph g(4, {{2, 1}, {0, 3}, {1, 2}, {3, 0}, {0, 1}});
  CHECK(g.edge_count() == 3);
  const Graph g2(4, g.edges());
  CHECK(g2.edges() == g.edges());
}

TEST_CASE("json round trip") {
  const auto g = cubic_lattice(2, 3, false);
  const auto back = Graph::from_json(g.to_json());
  CHECK(back.vertex_count() == g.vertex_count());
  CHECK(back.edges() == g.edges());
  CHECK(back.bipartition() == g.bipartition());
}

TEST_CASE("invalid graphs throw") {
  CHECK_THROWS(Graph(2, {{0, 0}}));
  CHECK_THROWS(Graph(2, {{0, 5}}));
  CHECK_THROWS(complete_graph(1));
  CHECK_THROWS(cubic_lattice(5, 2, false));
  // bipartition that does not separate an edge
  CHECK_THROWS(Graph(2, {{0, 1}}, std::vector<Sublattice>{Sublattice::A, Sublattice::A}));
}
