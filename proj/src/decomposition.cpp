#include "loopsoup/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace loopsoup {

namespace {

struct FlatBridge {
  double t;
  std::int32_t u, v;
  std::int32_t pos_u = -1, pos_v = -1;  // index in each endpoint's event list
};

}  // namespace

std::int32_t Decomposition::object_at(std::int32_t x, double t) const {
  const auto& ev = event_times_[static_cast<std::size_t>(x)];
  const auto& lab = segment_labels_[static_cast<std::size_t>(x)];
  if (ev.empty()) return lab[0];
  const auto it = std::upper_bound(ev.begin(), ev.end(), t);
  if (it == ev.begin()) return lab.back();  // below the first event: wrap segment
  return lab[static_cast<std::size_t>(it - ev.begin()) - 1];
}

double Decomposition::total_length() const {
  double s = 0.0;
  for (const auto& o : objects_) s += o.length;
  return s;
}

std::vector<double> Decomposition::sorted_lengths() const {
  std::vector<double> out;
  out.reserve(objects_.size());
  for (const auto& o : objects_) out.push_back(o.length);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::string Decomposition::to_csv() const {
  std::string out = "cycle_id,length,winding,n_strands\n";
  char buf[96];
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%d,%d\n", i, objects_[i].length,
                  objects_[i].winding, objects_[i].strands);
    out += buf;
  }
  return out;
}

Decomposition decompose(const BridgeConfig& w, const Graph& g, Model model) {
  if (model == Model::loops && !g.bipartite())
    throw std::invalid_argument("loops require a bipartite graph");
  const auto n = static_cast<std::size_t>(g.vertex_count());
  const double beta = w.beta();

  // Flatten bridges and build per-vertex event lists (time, bridge id).
  std::vector<FlatBridge> bridges;
  bridges.reserve(w.total_count());
  for (std::size_t e = 0; e < w.edge_count(); ++e) {
    const auto& edge = g.edges()[e];
    for (const double t : w.times(e)) bridges.push_back({t, edge.u, edge.v});
  }
  std::vector<std::vector<std::pair<double, std::int32_t>>> events(n);
  for (std::size_t b = 0; b < bridges.size(); ++b) {
    events[static_cast<std::size_t>(bridges[b].u)].push_back({bridges[b].t, static_cast<std::int32_t>(b)});
    events[static_cast<std::size_t>(bridges[b].v)].push_back({bridges[b].t, static_cast<std::int32_t>(b)});
  }
  for (std::size_t x = 0; x < n; ++x) {
    auto& ev = events[x];
    std::sort(ev.begin(), ev.end());
    for (std::size_t i = 0; i + 1 < ev.size(); ++i)
      if (ev[i].first == ev[i + 1].first)
        throw std::invalid_argument("coincident bridge times at a vertex");
    for (std::size_t i = 0; i < ev.size(); ++i) {
      auto& fb = bridges[static_cast<std::size_t>(ev[i].second)];
      if (fb.u == static_cast<std::int32_t>(x))
        fb.pos_u = static_cast<std::int32_t>(i);
      else
        fb.pos_v = static_cast<std::int32_t>(i);
    }
  }

  // Global segment indexing: segment i at vertex x is the arc starting at
  // event i (one full-circle segment when the vertex has no events).
  std::vector<std::int32_t> offset(n + 1, 0);
  for (std::size_t x = 0; x < n; ++x)
    offset[x + 1] = offset[x] + std::max<std::int32_t>(1, static_cast<std::int32_t>(events[x].size()));
  const auto n_segs = static_cast<std::size_t>(offset[n]);

  const auto other = [](const FlatBridge& fb, std::int32_t x) { return fb.u == x ? fb.v : fb.u; };
  const auto pos_at = [](const FlatBridge& fb, std::int32_t x) { return fb.u == x ? fb.pos_u : fb.pos_v; };

  // Successor map: the segment entered after traversing a segment in its
  // vertex's time direction and jumping across the bridge at its exit.
  std::vector<std::int32_t> succ(n_segs);
  for (std::size_t x = 0; x < n; ++x) {
    const auto m = static_cast<std::int32_t>(events[x].size());
    const auto vx = static_cast<std::int32_t>(x);
    if (m == 0) {
      succ[static_cast<std::size_t>(offset[x])] = offset[x];
      continue;
    }
    const bool down = model == Model::loops && g.side(vx) == Sublattice::B;
    for (std::int32_t i = 0; i < m; ++i) {
      const auto seg = static_cast<std::size_t>(offset[x] + i);
      if (!down) {
        // exit at the top event (i+1 mod m); enter the segment at the other
        // endpoint anchored there (cycles / A side), or the one ending there
        // when the other endpoint runs downward (loops, B side).
        const auto& fb = bridges[static_cast<std::size_t>(events[x][static_cast<std::size_t>((i + 1) % m)].second)];
        const auto y = other(fb, vx);
        const auto my = static_cast<std::int32_t>(events[static_cast<std::size_t>(y)].size());
        const auto py = pos_at(fb, y);
        const bool y_down = model == Model::loops && g.side(y) == Sublattice::B;
        succ[seg] = offset[static_cast<std::size_t>(y)] + (y_down ? (py + my - 1) % my : py);
      } else {
        // B side runs downward: exit at the bottom event i.
        const auto& fb = bridges[static_cast<std::size_t>(events[x][static_cast<std::size_t>(i)].second)];
        const auto y = other(fb, vx);
        succ[seg] = offset[static_cast<std::size_t>(y)] + pos_at(fb, y);
      }
    }
  }

  // Orbits of the successor map are the cycles/loops.
  Decomposition dec;
  dec.model_ = model;
  dec.beta_ = beta;
  std::vector<std::int32_t> label(n_segs, -1);
  std::vector<double> len_a, len_b;
  for (std::size_t x = 0; x < n; ++x) {
    const auto m = static_cast<std::int32_t>(events[x].size());
    for (std::int32_t i = 0; i < std::max<std::int32_t>(1, m); ++i) {
      const auto start = offset[x] + i;
      if (label[static_cast<std::size_t>(start)] != -1) continue;
      const auto id = static_cast<std::int32_t>(dec.objects_.size());
      dec.objects_.push_back({});
      len_a.push_back(0.0);
      len_b.push_back(0.0);
      auto& obj = dec.objects_.back();
      std::int32_t s = start;
      do {
        label[static_cast<std::size_t>(s)] = id;
        // locate the segment's vertex by binary search on offsets
        const auto vx = static_cast<std::int32_t>(
            std::upper_bound(offset.begin(), offset.end(), s) - offset.begin() - 1);
        const auto& ev = events[static_cast<std::size_t>(vx)];
        const auto mi = static_cast<std::int32_t>(ev.size());
        const auto si = s - offset[static_cast<std::size_t>(vx)];
        double arc;
        bool contains0;
        if (mi == 0) {
          arc = beta;
          contains0 = true;
        } else {
          const double a = ev[static_cast<std::size_t>(si)].first;
          const double b = si + 1 < mi ? ev[static_cast<std::size_t>(si) + 1].first : ev[0].first + beta;
          arc = b - a;
          contains0 = ev[0].first > 0.0 ? si == mi - 1 : si == 0;
        }
        obj.length += arc;
        if (contains0) ++obj.strands;
        if (model == Model::loops) {
          if (g.side(vx) == Sublattice::A)
            len_a[static_cast<std::size_t>(id)] += arc;
          else
            len_b[static_cast<std::size_t>(id)] += arc;
        }
        s = succ[static_cast<std::size_t>(s)];
      } while (s != start);
    }
  }
  if (model == Model::loops) {
    for (std::size_t i = 0; i < dec.objects_.size(); ++i) {
      const double wnd = (len_a[i] - len_b[i]) / beta;
      dec.objects_[i].winding = static_cast<std::int32_t>(std::lround(wnd));
    }
  }

  dec.event_times_.resize(n);
  dec.segment_labels_.resize(n);
  dec.object_at_zero_.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    const auto m = static_cast<std::size_t>(events[x].size());
    dec.event_times_[x].reserve(m);
    for (const auto& [t, b] : events[x]) dec.event_times_[x].push_back(t);
    const auto count = std::max<std::size_t>(1, m);
    dec.segment_labels_[x].assign(count, -1);
    for (std::size_t i = 0; i < count; ++i)
      dec.segment_labels_[x][i] = label[static_cast<std::size_t>(offset[x]) + i];
    if (m == 0)
      dec.object_at_zero_[x] = dec.segment_labels_[x][0];
    else
      dec.object_at_zero_[x] =
          dec.event_times_[x][0] > 0.0 ? dec.segment_labels_[x].back() : dec.segment_labels_[x][0];
  }
  return dec;
}

double ContactReport::zone_total() const {
  double s = 0.0;
  for (const double z : self_zone) s += z;
  for (const auto& [k, z] : pair_zone) s += z;
  return s;
}

std::int64_t ContactReport::bridge_total() const {
  std::int64_t s = 0;
  for (const auto b : self_bridges) s += b;
  for (const auto& [k, b] : pair_bridges) s += b;
  return s;
}

ContactReport contact_report(const BridgeConfig& w, const Decomposition& dec, const Graph& g) {
  ContactReport rep;
  rep.self_zone.assign(static_cast<std::size_t>(dec.size()), 0.0);
  rep.self_bridges.assign(static_cast<std::size_t>(dec.size()), 0);
  const double beta = w.beta();

  const auto add_zone = [&](std::int32_t a, std::int32_t b, double len) {
    if (len <= 0.0) return;
    if (a == b)
      rep.self_zone[static_cast<std::size_t>(a)] += len;
    else
      rep.pair_zone[{std::min(a, b), std::max(a, b)}] += len;
  };

  for (std::size_t e = 0; e < w.edge_count(); ++e) {
    const auto& edge = g.edges()[e];
    const auto& ev_u = dec.event_times_[static_cast<std::size_t>(edge.u)];
    const auto& ev_v = dec.event_times_[static_cast<std::size_t>(edge.v)];
    const auto& lab_u = dec.segment_labels_[static_cast<std::size_t>(edge.u)];
    const auto& lab_v = dec.segment_labels_[static_cast<std::size_t>(edge.v)];

    // Sweep the edge's timeline; labels change only at bridge endpoints
    // incident to u or v (a bridge on e itself is an event at both).
    std::int32_t lu = dec.object_at(edge.u, 0.0);
    std::int32_t lv = dec.object_at(edge.v, 0.0);
    std::size_t iu = 0, iv = 0;
    double cur = 0.0;
    while (iu < ev_u.size() || iv < ev_v.size()) {
      double t;
      bool at_u = false, at_v = false;
      if (iu < ev_u.size() && (iv >= ev_v.size() || ev_u[iu] <= ev_v[iv])) {
        t = ev_u[iu];
        at_u = true;
        if (iv < ev_v.size() && ev_v[iv] == t) at_v = true;
      } else {
        t = ev_v[iv];
        at_v = true;
      }
      add_zone(lu, lv, t - cur);
      if (at_u) lu = lab_u[iu++];
      if (at_v) lv = lab_v[iv++];
      cur = t;
    }
    add_zone(lu, lv, beta - cur);

    // Classify the bridges on this edge: compare the object just below the
    // bridge at u with the one just above; those are the two passages
    // through the bridge (equal labels mean a self contact).
    for (const double t : w.times(e)) {
      const auto pu = static_cast<std::size_t>(
          std::lower_bound(ev_u.begin(), ev_u.end(), t) - ev_u.begin());
      const auto m = ev_u.size();
      const auto above = lab_u[pu];
      const auto below = lab_u[(pu + m - 1) % m];
      if (above == below)
        ++rep.self_bridges[static_cast<std::size_t>(above)];
      else
        ++rep.pair_bridges[{std::min(above, below), std::max(above, below)}];
    }
  }
  return rep;
}

}  // namespace loopsoup
