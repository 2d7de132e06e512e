#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "loopsoup/bridges.hpp"
#include "loopsoup/decomposition.hpp"
#include "loopsoup/graph.hpp"
#include "loopsoup/rng.hpp"

namespace loopsoup {

// Decomposition maintained incrementally under single-bridge edits.
//
// Segments live in a pool linked in traversal order (next/prev); per vertex,
// an ordered map from bridge-endpoint time to the segment anchored there.
// Inserting a bridge subdivides one segment at each endpoint and rewires the
// four half-links through the bridge; removing one does the reverse. Each
// edit splits one object or merges two (never anything else), so labels are
// repaired with one relabel walk: a lockstep walk over the two halves for a
// split (O(smaller half)), a full walk of the combined object for a merge.
//
// Whether an edit splits or merges is answered in O(log) from the labels
// alone: an insertion at (e, t) splits iff both endpoints of e lie on the
// same object at time t; a removal splits iff the two trajectory passages
// through the bridge belong to the same object (the labels just below and
// just above the bridge time at one endpoint).
class ChainDecomposition {
 public:
  ChainDecomposition(const Graph& g, double beta, Model model);

  Model model() const { return model_; }
  double beta() const { return beta_; }
  std::int64_t n_objects() const { return n_objects_; }

  // t already occupied by a bridge endpoint at vertex x?
  bool time_collides(std::int32_t x, double t) const {
    return events_[static_cast<std::size_t>(x)].count(t) > 0;
  }

  std::int64_t label_at(std::int32_t x, double t) const;

  bool insert_would_split(const Edge& e, double t) const;
  bool remove_would_split(const Edge& e, double t) const;

  void apply_insert(const Edge& e, double t);
  void apply_remove(const Edge& e, double t);

  // Reset to the decomposition of the empty configuration, then apply the
  // bridges of w one at a time.
  void rebuild(const BridgeConfig& w, const Graph& g);

  // Per-object summaries (deterministic first-seen order over vertices).
  std::vector<ObjectStats> object_stats() const;

  // Same partition into objects as a from-scratch decomposition?
  bool equivalent_to(const Decomposition& ref) const;

 private:
  struct Segment {
    std::int32_t vertex = -1;
    std::int32_t next = -1;
    std::int32_t prev = -1;
    std::int64_t label = -1;
  };

  bool runs_up(std::int32_t x) const {
    return model_ == Model::cycles || g_->side(x) == Sublattice::A;
  }
  std::int32_t alloc_segment(std::int32_t vertex, std::int64_t label);
  void release_segment(std::int32_t s);
  std::int32_t segment_containing(std::int32_t x, double t) const;
  void link(std::int32_t a, std::int32_t b) {
    pool_[static_cast<std::size_t>(a)].next = b;
    pool_[static_cast<std::size_t>(b)].prev = a;
  }
  // Subdivide the segment of vertex x containing the new event at t;
  // returns (low, high) anchored below/at t (equal for a free vertex).
  std::pair<std::int32_t, std::int32_t> subdivide(std::int32_t x, double t);
  void merge_relabel(std::int32_t any_seg, std::int64_t la, std::int64_t lb);
  void split_relabel(std::int32_t s1, std::int32_t s2, std::int64_t old_label);

  const Graph* g_;
  double beta_;
  Model model_;
  std::vector<std::map<double, std::int32_t>> events_;
  std::vector<std::int32_t> free_segment_;  // valid while a vertex has no events
  std::vector<Segment> pool_;
  std::vector<std::int32_t> free_list_;
  std::unordered_map<std::int64_t, std::int64_t> segments_per_object_;
  std::int64_t n_objects_ = 0;
  std::int64_t next_label_ = 0;
};

enum class SamplerKind : std::uint8_t { mh, ct };

// One Markov chain targeting the theta-weighted bridge measure
// theta^{#objects} rho_{E,beta}. Two interchangeable samplers:
//
//  - mh: discrete-time birth-death Metropolis-Hastings. Insertion at a
//    uniform (e, t) accepted with min(1, theta^D beta|E|/(k+1)); deletion of
//    a uniform bridge with min(1, theta^D k/(beta|E|)), k the bridge count
//    before the move and D = +-1 the change in object count.
//  - ct: the continuous-time bridge dynamics at alpha = 1/2 (splits at rate
//    sqrt(theta), merges at 1/sqrt(theta), for insertions and removals
//    alike), simulated exactly by thinning against a dominating rate
//    M = max(sqrt(theta), 1/sqrt(theta)) per unit of insertion measure and
//    per existing bridge.
class Chain {
 public:
  struct Options {
    double theta = 1.0;
    Model model = Model::cycles;
    SamplerKind sampler = SamplerKind::mh;
    // Applied-move interval for verifying the incremental decomposition
    // against a from-scratch rebuild (0 = never).
    std::uint64_t check_interval = 0;
  };

  Chain(const Graph& g, double beta, Options opt, Rng rng);

  // One proposal (mh) or one candidate event (ct). Returns true if applied.
  bool step();

  // Two-phase variant of a ct step: advance the clock by the exponential
  // dwell (the state occupies [old time, new time)), then resolve the
  // candidate event at its end. Lets callers observe the process on a
  // sim-time grid; sampling at event counts would oversample fast states.
  double ct_advance();
  bool ct_resolve();

  const Graph& graph() const { return *g_; }
  double beta() const { return beta_; }
  const Options& options() const { return opt_; }
  const BridgeConfig& omega() const { return omega_; }
  const ChainDecomposition& dec() const { return dec_; }
  std::uint64_t step_count() const { return steps_; }
  std::uint64_t applied_count() const { return applied_; }
  double sim_time() const { return sim_time_; }
  std::size_t bridge_count() const { return flat_.size(); }

  void verify_against_rebuild() const;  // throws on divergence

 private:
  bool mh_step();
  bool ct_step();
  void do_insert(std::size_t e, double t);
  void do_remove(std::size_t idx);

  const Graph* g_;
  double beta_;
  Options opt_;
  Rng rng_;
  BridgeConfig omega_;
  ChainDecomposition dec_;
  std::vector<std::pair<std::int32_t, double>> flat_;  // (edge, time), for uniform picks
  std::uint64_t steps_ = 0;
  std::uint64_t applied_ = 0;
  double sim_time_ = 0.0;
};

struct ChainSample {
  std::uint64_t step = 0;
  std::uint64_t n_bridges = 0;
  std::int64_t n_objects = 0;
  std::vector<ObjectStats> objects;  // sorted by decreasing length
};

struct ChainRunConfig {
  std::uint64_t n_steps = 0;
  // Both scale with the per-sweep budget beta |E| when left at 0 (defaults
  // 10 beta |E| and beta |E|). For mh they count proposal steps; for ct they
  // are converted to sim time at the candidate-event rate, so that either
  // sampler observes the process unbiasedly (mh at fixed steps, ct on a
  // fixed time grid).
  std::uint64_t burn_in = 0;
  std::uint64_t thin = 0;
};

// Run a chain and emit thinned post-burn-in samples. Deterministic given
// the seed. Loops on a non-bipartite graph throw.
std::vector<ChainSample> run_chain(const Graph& g, double beta, double theta, Model model,
                                   SamplerKind sampler, ChainRunConfig cfg, Rng rng);

}  // namespace loopsoup
