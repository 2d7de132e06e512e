#pragma once

// Slow reference decomposition used as an independent oracle in tests.
//
// Follows the trajectory definition literally: from a point on the cylinder,
// scan all bridges incident to the current vertex for the next one in the
// direction of travel (wrapping around the time circle), jump, repeat until
// the starting point comes back. O(k^2), no shared code with the segment
// permutation used by the library.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "loopsoup/bridges.hpp"
#include "loopsoup/decomposition.hpp"
#include "loopsoup/graph.hpp"

namespace loopsoup::testing {

struct RefObject {
  double length = 0.0;
  double len_a = 0.0;
  double len_b = 0.0;
  int strands = 0;
  int winding() const { return static_cast<int>(std::lround((len_a - len_b) / beta)); }
  double beta = 0.0;
};

inline std::vector<RefObject> reference_decompose(const BridgeConfig& w, const Graph& g,
                                                  Model model) {
  const double beta = w.beta();
  struct B {
    double t;
    std::int32_t u, v;
  };
  std::vector<B> bridges;
  for (std::size_t e = 0; e < w.edge_count(); ++e)
    for (const double t : w.times(e))
      bridges.push_back({t, g.edges()[e].u, g.edges()[e].v});

  const auto dir_of = [&](std::int32_t x) {
    return model == Model::cycles || g.side(x) == Sublattice::A ? +1 : -1;
  };

  // Arrival states (vertex, time) entered right after a jump; plus one state
  // per bridge-free vertex. Each state begins exactly one leg.
  std::set<std::pair<std::int32_t, double>> pending;
  for (const auto& b : bridges) {
    pending.insert({b.u, b.t});
    pending.insert({b.v, b.t});
  }
  std::vector<bool> vertex_has_bridge(static_cast<std::size_t>(g.vertex_count()), false);
  for (const auto& b : bridges) {
    vertex_has_bridge[static_cast<std::size_t>(b.u)] = true;
    vertex_has_bridge[static_cast<std::size_t>(b.v)] = true;
  }

  std::vector<RefObject> out;
  const auto trace_from = [&](std::int32_t x0, double t0) {
    RefObject obj;
    obj.beta = beta;
    std::int32_t x = x0;
    double t = t0;
    do {
      pending.erase({x, t});
      // next bridge strictly ahead of t at x, in x's direction of travel
      const int dir = dir_of(x);
      double best_gap = beta;  // full wrap when the only event is at t itself
      const B* hit = nullptr;
      for (const auto& b : bridges) {
        if (b.u != x && b.v != x) continue;
        double gap = dir > 0 ? b.t - t : t - b.t;
        if (gap <= 0.0) gap += beta;
        if (gap < best_gap || (gap == best_gap && hit == nullptr)) {
          best_gap = gap;
          hit = &b;
        }
      }
      const double len = hit == nullptr ? beta : best_gap;
      obj.length += len;
      if (model == Model::loops) {
        if (dir > 0)
          obj.len_a += len;
        else
          obj.len_b += len;
      }
      // does the leg's support [low, low+len) contain time 0?
      const double low = dir > 0 ? t : t - len;
      const double low_w = low < 0.0 ? low + beta : low;
      if (low_w == 0.0 || low_w + len > beta) ++obj.strands;
      if (hit == nullptr) break;  // isolated vertex: single full-circle object
      t = hit->t;
      x = hit->u == x ? hit->v : hit->u;
    } while (!(x == x0 && t == t0));
    out.push_back(obj);
  };

  while (!pending.empty()) {
    const auto [x, t] = *pending.begin();
    trace_from(x, t);
  }
  for (std::int32_t x = 0; x < g.vertex_count(); ++x)
    if (!vertex_has_bridge[static_cast<std::size_t>(x)]) trace_from(x, 0.0);
  return out;
}

}  // namespace loopsoup::testing
