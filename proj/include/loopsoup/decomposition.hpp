#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "loopsoup/bridges.hpp"
#include "loopsoup/graph.hpp"

namespace loopsoup {

enum class Model : std::uint8_t { cycles, loops };

// Per-object summary. Lengths are in time units (cycle lengths are integer
// multiples of beta). `strands` counts the vertices x with (x, 0) on the
// object. `winding` is the loop winding number w with L_A - L_B = beta * w;
// zero for cycles. Sign convention: an unbridged A vertex winds +1, B -1.
struct ObjectStats {
  double length = 0.0;
  std::int32_t winding = 0;
  std::int32_t strands = 0;
};

class Decomposition;
struct ContactReport;
ContactReport contact_report(const BridgeConfig& w, const Decomposition& dec, const Graph& g);

// Partition of the cylinder V x [0, beta)_per into cycles or loops.
//
// Internally the cylinder is cut into per-vertex segments: the arcs between
// consecutive bridge endpoints at each vertex (one full-circle segment for a
// vertex with no incident bridge). Trajectories traverse each segment once,
// so the decomposition is the orbit structure of the segment successor map:
// upward in time at every vertex for cycles, downward on the B sublattice
// for loops. Extraction is O(|V| + |omega| log kappa).
class Decomposition {
 public:
  Model model() const { return model_; }
  double beta() const { return beta_; }
  std::int64_t size() const { return static_cast<std::int64_t>(objects_.size()); }
  const std::vector<ObjectStats>& objects() const { return objects_; }

  // Object (cycle/loop) id covering the point (x, t).
  std::int32_t object_at(std::int32_t x, double t) const;
  // gamma_x: the object through (x, 0).
  std::int32_t object_containing(std::int32_t x) const { return object_at_zero_[x]; }

  double total_length() const;
  // Sorted decreasing.
  std::vector<double> sorted_lengths() const;

  // CSV rows (cycle_id, length, winding, n_strands).
  std::string to_csv() const;

  // Read-only access to the segment structure (bridge-endpoint times per
  // vertex and the label of the segment anchored at each; a vertex with no
  // events holds one label for its full-circle segment).
  const std::vector<double>& events_at(std::int32_t x) const {
    return event_times_[static_cast<std::size_t>(x)];
  }
  const std::vector<std::int32_t>& segment_labels_at(std::int32_t x) const {
    return segment_labels_[static_cast<std::size_t>(x)];
  }

 private:
  friend Decomposition decompose(const BridgeConfig&, const Graph&, Model);
  friend ContactReport contact_report(const BridgeConfig&, const Decomposition&, const Graph&);

  Model model_ = Model::cycles;
  double beta_ = 0.0;
  std::vector<ObjectStats> objects_;
  // Per-vertex sorted bridge-endpoint times and the label of the segment
  // anchored at each of them; vertices with no events hold one label.
  std::vector<std::vector<double>> event_times_;
  std::vector<std::vector<std::int32_t>> segment_labels_;
  std::vector<std::int32_t> object_at_zero_;
};

Decomposition decompose(const BridgeConfig& w, const Graph& g, Model model);
inline Decomposition cycles(const BridgeConfig& w, const Graph& g) {
  return decompose(w, g, Model::cycles);
}
// Requires a bipartition on g.
inline Decomposition loops(const BridgeConfig& w, const Graph& g) {
  return decompose(w, g, Model::loops);
}

// Contact structure of a decomposition (cycles or loops).
//
// The zone of (e, t) is decided by whether inserting a bridge there would
// split one object (both endpoints on the same object: self zone) or merge
// two (pair zone). A bridge already in omega is classified by the labels of
// the two trajectory passages through it. Zones partition E x [0, beta) and
// bridge classes partition omega.
struct ContactReport {
  std::vector<double> self_zone;               // per object, Lebesgue measure
  std::vector<std::int64_t> self_bridges;      // per object, count
  std::map<std::pair<std::int32_t, std::int32_t>, double> pair_zone;
  std::map<std::pair<std::int32_t, std::int32_t>, std::int64_t> pair_bridges;

  double zone_total() const;
  std::int64_t bridge_total() const;
};

}  // namespace loopsoup
