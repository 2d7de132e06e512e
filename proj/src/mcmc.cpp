#include "loopsoup/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace loopsoup {

ChainDecomposition::ChainDecomposition(const Graph& g, double beta, Model model)
    : g_(&g), beta_(beta), model_(model) {
  if (model == Model::loops && !g.bipartite())
    throw std::invalid_argument("loops require a bipartite graph");
  const auto n = static_cast<std::size_t>(g.vertex_count());
  events_.resize(n);
  free_segment_.resize(n);
  pool_.reserve(2 * n);
  for (std::size_t x = 0; x < n; ++x) {
    const auto s = alloc_segment(static_cast<std::int32_t>(x), next_label_++);
    link(s, s);
    free_segment_[x] = s;
    segments_per_object_[pool_[static_cast<std::size_t>(s)].label] = 1;
  }
  n_objects_ = static_cast<std::int64_t>(n);
}

std::int32_t ChainDecomposition::alloc_segment(std::int32_t vertex, std::int64_t label) {
  std::int32_t s;
  if (!free_list_.empty()) {
    s = free_list_.back();
    free_list_.pop_back();
  } else {
    s = static_cast<std::int32_t>(pool_.size());
    pool_.push_back({});
  }
  auto& seg = pool_[static_cast<std::size_t>(s)];
  seg.vertex = vertex;
  seg.label = label;
  seg.next = seg.prev = -1;
  return s;
}

void ChainDecomposition::release_segment(std::int32_t s) {
  pool_[static_cast<std::size_t>(s)].vertex = -1;
  free_list_.push_back(s);
}

std::int32_t ChainDecomposition::segment_containing(std::int32_t x, double t) const {
  const auto& ev = events_[static_cast<std::size_t>(x)];
  if (ev.empty()) return free_segment_[static_cast<std::size_t>(x)];
  auto it = ev.upper_bound(t);
  if (it == ev.begin()) return std::prev(ev.end())->second;  // wrap segment
  return std::prev(it)->second;
}

std::int64_t ChainDecomposition::label_at(std::int32_t x, double t) const {
  return pool_[static_cast<std::size_t>(segment_containing(x, t))].label;
}

bool ChainDecomposition::insert_would_split(const Edge& e, double t) const {
  return label_at(e.u, t) == label_at(e.v, t);
}

bool ChainDecomposition::remove_would_split(const Edge& e, double t) const {
  const auto& ev = events_[static_cast<std::size_t>(e.u)];
  const auto it = ev.find(t);
  if (it == ev.end()) throw std::invalid_argument("no bridge endpoint at that time");
  const auto above = it->second;
  const auto below = (it == ev.begin() ? std::prev(ev.end()) : std::prev(it))->second;
  return pool_[static_cast<std::size_t>(above)].label ==
         pool_[static_cast<std::size_t>(below)].label;
}

std::pair<std::int32_t, std::int32_t> ChainDecomposition::subdivide(std::int32_t x, double t) {
  auto& ev = events_[static_cast<std::size_t>(x)];
  if (ev.empty()) {
    // The full-circle segment becomes the single segment anchored at t.
    const auto s = free_segment_[static_cast<std::size_t>(x)];
    ev.emplace(t, s);
    return {s, s};
  }
  const auto s = segment_containing(x, t);
  const auto n = alloc_segment(x, pool_[static_cast<std::size_t>(s)].label);
  ++segments_per_object_[pool_[static_cast<std::size_t>(s)].label];
  ev.emplace(t, n);
  if (runs_up(x)) {
    // low piece keeps the entry at its anchor; high piece inherits the exit
    const auto nx = pool_[static_cast<std::size_t>(s)].next;
    pool_[static_cast<std::size_t>(n)].next = nx;
    pool_[static_cast<std::size_t>(nx)].prev = n;
  } else {
    // downward vertex: low piece keeps the exit, high piece inherits entry
    const auto pv = pool_[static_cast<std::size_t>(s)].prev;
    pool_[static_cast<std::size_t>(n)].prev = pv;
    pool_[static_cast<std::size_t>(pv)].next = n;
  }
  return {s, n};
}

void ChainDecomposition::merge_relabel(std::int32_t any_seg, std::int64_t la, std::int64_t lb) {
  const auto ca = segments_per_object_.at(la);
  const auto cb = segments_per_object_.at(lb);
  const auto keep = ca >= cb ? la : lb;
  const auto drop = keep == la ? lb : la;
  std::int64_t visited = 0;
  auto s = any_seg;
  do {
    pool_[static_cast<std::size_t>(s)].label = keep;
    ++visited;
    s = pool_[static_cast<std::size_t>(s)].next;
  } while (s != any_seg);
  if (visited != ca + cb)
    throw std::logic_error("merge_relabel: inconsistent segment counts");
  segments_per_object_[keep] = visited;
  segments_per_object_.erase(drop);
  --n_objects_;
}

void ChainDecomposition::split_relabel(std::int32_t s1, std::int32_t s2, std::int64_t old_label) {
  // s1 and s2 now lie on different objects; lockstep to find the smaller one
  auto a = s1, b = s2;
  std::int32_t start = s1;
  for (;;) {
    a = pool_[static_cast<std::size_t>(a)].next;
    if (a == s1) {
      start = s1;
      break;
    }
    b = pool_[static_cast<std::size_t>(b)].next;
    if (b == s2) {
      start = s2;
      break;
    }
  }
  const auto fresh = next_label_++;
  std::int64_t moved = 0;
  auto s = start;
  do {
    pool_[static_cast<std::size_t>(s)].label = fresh;
    ++moved;
    s = pool_[static_cast<std::size_t>(s)].next;
  } while (s != start);
  auto& old_count = segments_per_object_.at(old_label);
  old_count -= moved;
  if (old_count <= 0) throw std::logic_error("split_relabel: emptied the old object");
  segments_per_object_[fresh] = moved;
  ++n_objects_;
}

void ChainDecomposition::apply_insert(const Edge& e, double t) {
  if (time_collides(e.u, t) || time_collides(e.v, t))
    throw std::invalid_argument("coincident bridge time at a vertex");
  const auto lu = label_at(e.u, t);
  const auto lv = label_at(e.v, t);
  const bool splits = lu == lv;

  const auto [low_u, high_u] = subdivide(e.u, t);
  const auto [low_v, high_v] = subdivide(e.v, t);

  // Rewire the four half-links through the new bridge. An upward strand
  // exits at the top of its low piece and lands on the other vertex at t;
  // it enters the piece anchored at t there if that vertex runs up, or the
  // piece ending at t if it runs down.
  if (runs_up(e.u) && runs_up(e.v)) {
    link(low_u, high_v);
    link(low_v, high_u);
  } else if (runs_up(e.u)) {
    link(low_u, low_v);
    link(high_v, high_u);
  } else {
    link(low_v, low_u);
    link(high_u, high_v);
  }

  if (splits)
    split_relabel(low_u, high_u, lu);
  else
    merge_relabel(low_u, lu, lv);
}

void ChainDecomposition::apply_remove(const Edge& e, double t) {
  auto& ev_u = events_[static_cast<std::size_t>(e.u)];
  auto& ev_v = events_[static_cast<std::size_t>(e.v)];
  const auto itu = ev_u.find(t);
  const auto itv = ev_v.find(t);
  if (itu == ev_u.end() || itv == ev_v.end())
    throw std::invalid_argument("no bridge endpoint at that time");

  const auto su = itu->second;
  const auto sv = itv->second;
  const auto eu = ev_u.size() == 1
                      ? su
                      : (itu == ev_u.begin() ? std::prev(ev_u.end()) : std::prev(itu))->second;
  const auto ev2 = ev_v.size() == 1
                       ? sv
                       : (itv == ev_v.begin() ? std::prev(ev_v.end()) : std::prev(itv))->second;

  const auto la = pool_[static_cast<std::size_t>(eu)].label;  // passage just below at u
  const auto lb = pool_[static_cast<std::size_t>(su)].label;  // passage just above at u
  const bool splits = la == lb;

  // Snapshot the link each survivor inherits from its dying upper piece. On
  // loops that target can be the other endpoint's dying piece (the two
  // passages may also be adjacent through the next bridge up); redirect it
  // to the piece that absorbs it.
  const bool u_free = ev_u.size() == 1;
  const bool v_free = ev_v.size() == 1;
  auto tu = runs_up(e.u) ? pool_[static_cast<std::size_t>(su)].next
                         : pool_[static_cast<std::size_t>(su)].prev;
  auto tv = runs_up(e.v) ? pool_[static_cast<std::size_t>(sv)].next
                         : pool_[static_cast<std::size_t>(sv)].prev;
  if (!v_free && tu == sv) tu = ev2;
  if (!u_free && tv == su) tv = eu;

  ev_u.erase(itu);
  ev_v.erase(itv);

  if (u_free) {
    free_segment_[static_cast<std::size_t>(e.u)] = eu;
    link(eu, eu);
  } else {
    if (runs_up(e.u)) {
      pool_[static_cast<std::size_t>(eu)].next = tu;
      pool_[static_cast<std::size_t>(tu)].prev = eu;
    } else {
      pool_[static_cast<std::size_t>(eu)].prev = tu;
      pool_[static_cast<std::size_t>(tu)].next = eu;
    }
    --segments_per_object_.at(pool_[static_cast<std::size_t>(su)].label);
    release_segment(su);
  }
  if (v_free) {
    free_segment_[static_cast<std::size_t>(e.v)] = ev2;
    link(ev2, ev2);
  } else {
    if (runs_up(e.v)) {
      pool_[static_cast<std::size_t>(ev2)].next = tv;
      pool_[static_cast<std::size_t>(tv)].prev = ev2;
    } else {
      pool_[static_cast<std::size_t>(ev2)].prev = tv;
      pool_[static_cast<std::size_t>(tv)].next = ev2;
    }
    --segments_per_object_.at(pool_[static_cast<std::size_t>(sv)].label);
    release_segment(sv);
  }

  if (splits)
    split_relabel(eu, ev2, la);
  else
    merge_relabel(eu, la, lb);
}

void ChainDecomposition::rebuild(const BridgeConfig& w, const Graph& g) {
  *this = ChainDecomposition(g, w.beta(), model_);
  for (std::size_t e = 0; e < w.edge_count(); ++e)
    for (const double t : w.times(e)) apply_insert(g.edges()[e], t);
}

std::vector<ObjectStats> ChainDecomposition::object_stats() const {
  std::unordered_map<std::int64_t, std::size_t> index;
  std::vector<ObjectStats> out;
  std::vector<double> len_a, len_b;
  const auto n = static_cast<std::size_t>(g_->vertex_count());
  for (std::size_t x = 0; x < n; ++x) {
    const auto& ev = events_[x];
    const auto handle = [&](std::int32_t seg, double arc, bool contains0) {
      const auto label = pool_[static_cast<std::size_t>(seg)].label;
      auto [it, fresh] = index.try_emplace(label, out.size());
      if (fresh) {
        out.push_back({});
        len_a.push_back(0.0);
        len_b.push_back(0.0);
      }
      auto& obj = out[it->second];
      obj.length += arc;
      if (contains0) ++obj.strands;
      if (model_ == Model::loops) {
        if (g_->side(static_cast<std::int32_t>(x)) == Sublattice::A)
          len_a[it->second] += arc;
        else
          len_b[it->second] += arc;
      }
    };
    if (ev.empty()) {
      handle(free_segment_[x], beta_, true);
      continue;
    }
    const double first = ev.begin()->first;
    for (auto it = ev.begin(); it != ev.end(); ++it) {
      const auto nx = std::next(it);
      const double top = nx == ev.end() ? first + beta_ : nx->first;
      const bool wraps = nx == ev.end();
      handle(it->second, top - it->first, first > 0.0 ? wraps : it == ev.begin());
    }
  }
  if (model_ == Model::loops) {
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i].winding = static_cast<std::int32_t>(std::lround((len_a[i] - len_b[i]) / beta_));
  }
  return out;
}

bool ChainDecomposition::equivalent_to(const Decomposition& ref) const {
  if (ref.size() != n_objects_) return false;
  // The partitions agree iff the label maps agree up to a bijection.
  std::unordered_map<std::int64_t, std::int32_t> fwd;
  std::unordered_map<std::int32_t, std::int64_t> bwd;
  const auto match = [&](std::int64_t mine, std::int32_t theirs) {
    const auto f = fwd.find(mine);
    if (f != fwd.end() && f->second != theirs) return false;
    const auto b = bwd.find(theirs);
    if (b != bwd.end() && b->second != mine) return false;
    fwd.emplace(mine, theirs);
    bwd.emplace(theirs, mine);
    return true;
  };
  for (std::int32_t x = 0; x < g_->vertex_count(); ++x) {
    const auto& ev = events_[static_cast<std::size_t>(x)];
    const auto& ref_times = ref.events_at(x);
    const auto& ref_labels = ref.segment_labels_at(x);
    if (ref_times.size() != ev.size()) return false;
    if (ev.empty()) {
      if (!match(pool_[static_cast<std::size_t>(free_segment_[static_cast<std::size_t>(x)])].label,
                 ref_labels[0]))
        return false;
      continue;
    }
    std::size_t i = 0;
    for (const auto& [t, seg] : ev) {
      if (t != ref_times[i]) return false;
      if (!match(pool_[static_cast<std::size_t>(seg)].label, ref_labels[i])) return false;
      ++i;
    }
  }
  return true;
}

Chain::Chain(const Graph& g, double beta, Options opt, Rng rng)
    : g_(&g),
      beta_(beta),
      opt_(opt),
      rng_(rng),
      omega_(beta, static_cast<std::size_t>(g.edge_count())),
      dec_(g, beta, opt.model) {
  if (!(opt.theta > 0.0)) throw std::invalid_argument("theta must be positive");
  if (g.edge_count() == 0) throw std::invalid_argument("chain needs at least one edge");
}

void Chain::do_insert(std::size_t e, double t) {
  dec_.apply_insert(g_->edges()[e], t);
  omega_.insert(e, t);
  flat_.push_back({static_cast<std::int32_t>(e), t});
}

void Chain::do_remove(std::size_t idx) {
  const auto [e, t] = flat_[idx];
  dec_.apply_remove(g_->edges()[static_cast<std::size_t>(e)], t);
  omega_.remove(static_cast<std::size_t>(e), t);
  flat_[idx] = flat_.back();
  flat_.pop_back();
}

bool Chain::step() {
  ++steps_;
  const bool applied = opt_.sampler == SamplerKind::mh ? mh_step() : ct_step();
  if (applied) {
    ++applied_;
    if (opt_.check_interval > 0 && applied_ % opt_.check_interval == 0)
      verify_against_rebuild();
  }
  return applied;
}

bool Chain::mh_step() {
  const auto volume = beta_ * static_cast<double>(g_->edge_count());
  const auto k = flat_.size();
  if (rng_.uniform() < 0.5) {
    const auto e = static_cast<std::size_t>(rng_.below(static_cast<std::uint64_t>(g_->edge_count())));
    const double t = rng_.uniform(0.0, beta_);
    const auto& edge = g_->edges()[e];
    if (dec_.time_collides(edge.u, t) || dec_.time_collides(edge.v, t)) return false;
    const double delta = dec_.insert_would_split(edge, t) ? 1.0 : -1.0;
    const double accept = std::pow(opt_.theta, delta) * volume / static_cast<double>(k + 1);
    if (rng_.uniform() < accept) {
      do_insert(e, t);
      return true;
    }
    return false;
  }
  if (k == 0) return false;  // delete proposal on the empty configuration
  const auto idx = static_cast<std::size_t>(rng_.below(k));
  const auto [e, t] = flat_[idx];
  const double delta =
      dec_.remove_would_split(g_->edges()[static_cast<std::size_t>(e)], t) ? 1.0 : -1.0;
  const double accept = std::pow(opt_.theta, delta) * static_cast<double>(k) / volume;
  if (rng_.uniform() < accept) {
    do_remove(idx);
    return true;
  }
  return false;
}

double Chain::ct_advance() {
  const double sqrt_theta = std::sqrt(opt_.theta);
  const double dominating = std::max(sqrt_theta, 1.0 / sqrt_theta);
  const auto volume = beta_ * static_cast<double>(g_->edge_count());
  const auto k = static_cast<double>(flat_.size());
  const double dwell = rng_.exponential(dominating * (volume + k));
  sim_time_ += dwell;
  return dwell;
}

bool Chain::ct_resolve() {
  const double sqrt_theta = std::sqrt(opt_.theta);
  const double dominating = std::max(sqrt_theta, 1.0 / sqrt_theta);
  const auto volume = beta_ * static_cast<double>(g_->edge_count());
  const auto k = static_cast<double>(flat_.size());
  if (rng_.uniform() * (volume + k) < volume) {
    const auto e = static_cast<std::size_t>(rng_.below(static_cast<std::uint64_t>(g_->edge_count())));
    const double t = rng_.uniform(0.0, beta_);
    const auto& edge = g_->edges()[e];
    if (dec_.time_collides(edge.u, t) || dec_.time_collides(edge.v, t)) return false;
    const double rate = dec_.insert_would_split(edge, t) ? sqrt_theta : 1.0 / sqrt_theta;
    if (rng_.uniform() * dominating < rate) {
      do_insert(e, t);
      return true;
    }
    return false;
  }
  const auto idx = static_cast<std::size_t>(rng_.below(flat_.size()));
  const auto [e, t] = flat_[idx];
  const double rate =
      dec_.remove_would_split(g_->edges()[static_cast<std::size_t>(e)], t) ? sqrt_theta
                                                                           : 1.0 / sqrt_theta;
  if (rng_.uniform() * dominating < rate) {
    do_remove(idx);
    return true;
  }
  return false;
}

bool Chain::ct_step() {
  ct_advance();
  return ct_resolve();
}

void Chain::verify_against_rebuild() const {
  const auto ref = decompose(omega_, *g_, opt_.model);
  if (!dec_.equivalent_to(ref))
    throw std::logic_error("incremental decomposition diverged from full recomputation");
}

std::vector<ChainSample> run_chain(const Graph& g, double beta, double theta, Model model,
                                   SamplerKind sampler, ChainRunConfig cfg, Rng rng) {
  const auto volume = beta * static_cast<double>(g.edge_count());
  const auto burn = cfg.burn_in > 0 ? cfg.burn_in
                                    : static_cast<std::uint64_t>(std::ceil(10.0 * volume));
  const auto thin = cfg.thin > 0 ? cfg.thin
                                 : std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(volume)));
  if (cfg.n_steps <= burn)
    throw std::invalid_argument("n_steps must exceed the burn-in");

  Chain chain(g, beta, {theta, model, sampler, 0}, rng);
  std::vector<ChainSample> out;
  const auto emit = [&](std::uint64_t step) {
    ChainSample sample;
    sample.step = step;
    sample.n_bridges = chain.bridge_count();
    sample.n_objects = chain.dec().n_objects();
    sample.objects = chain.dec().object_stats();
    std::sort(sample.objects.begin(), sample.objects.end(),
              [](const ObjectStats& a1, const ObjectStats& b1) { return a1.length > b1.length; });
    out.push_back(std::move(sample));
  };

  if (sampler == SamplerKind::mh) {
    for (std::uint64_t s = 1; s <= cfg.n_steps; ++s) {
      chain.step();
      if (s > burn && (s - burn) % thin == 0) emit(s);
    }
    return out;
  }

  // ct: candidates arrive at rate M (beta |E| + k) >= M beta |E|; the
  // burn-in and thinning budgets convert to sim time at the insertion
  // candidate rate M beta |E|.
  const double sqrt_theta = std::sqrt(theta);
  const double rate0 = std::max(sqrt_theta, 1.0 / sqrt_theta) * volume;
  const double thin_time = static_cast<double>(thin) / rate0;
  double next_emit = static_cast<double>(burn) / rate0 + thin_time;
  for (std::uint64_t s = 1; s <= cfg.n_steps; ++s) {
    chain.ct_advance();
    while (next_emit <= chain.sim_time()) {
      emit(s);  // the pre-event state occupies the dwell interval
      next_emit += thin_time;
    }
    chain.ct_resolve();
  }
  return out;
}

}  // namespace loopsoup
