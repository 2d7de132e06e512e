#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "loopsoup/decomposition.hpp"
#include "reference_trace.hpp"

using namespace loopsoup;

namespace {

BridgeConfig single_edge_config(double beta, const std::vector<double>& ts) {
  BridgeConfig w(beta, 1);
  for (const double t : ts) w.insert(0, t);
  return w;
}

void check_against_reference(const BridgeConfig& w, const Graph& g, Model model) {
  const auto dec = decompose(w, g, model);
  const auto ref = testing::reference_decompose(w, g, model);
  REQUIRE(dec.size() == static_cast<std::int64_t>(ref.size()));
  auto lengths = dec.sorted_lengths();
  std::vector<double> ref_lengths;
  std::vector<int> windings, ref_windings, strands, ref_strands;
  for (const auto& o : ref) {
    ref_lengths.push_back(o.length);
    ref_windings.push_back(o.winding());
    ref_strands.push_back(o.strands);
  }
  std::sort(ref_lengths.begin(), ref_lengths.end(), std::greater<>());
  for (std::size_t i = 0; i < lengths.size(); ++i)
    CHECK(lengths[i] == doctest::Approx(ref_lengths[i]).epsilon(1e-12));
  for (const auto& o : dec.objects()) {
    windings.push_back(o.winding);
    strands.push_back(o.strands);
  }
  std::sort(windings.begin(), windings.end());
  std::sort(ref_windings.begin(), ref_windings.end());
  std::sort(strands.begin(), strands.end());
  std::sort(ref_strands.begin(), ref_strands.end());
  CHECK(windings == ref_windings);
  CHECK(strands == ref_strands);
  // conservation and support partition
  CHECK(dec.total_length() ==
        doctest::Approx(w.beta() * g.vertex_count()).epsilon(1e-12));
  int total_strands = 0;
  for (const auto& o : dec.objects()) total_strands += o.strands;
  CHECK(total_strands == g.vertex_count());
}

}  // namespace

TEST_CASE("empty configuration: one trivial object per vertex") {
  const auto g = complete_graph(4);
  BridgeConfig w(1.5, static_cast<std::size_t>(g.edge_count()));
  const auto dec = cycles(w, g);
  CHECK(dec.size() == 4);
  for (const auto& o : dec.objects()) {
    CHECK(o.length == doctest::Approx(1.5));
    CHECK(o.strands == 1);
  }
}

TEST_CASE("single edge cycles: parity of the bridge count") {
  const auto g = cubic_lattice(1, 2, false);
  Rng rng(31);
  for (int k = 0; k <= 6; ++k) {
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<double> ts;
      for (int i = 0; i < k; ++i) ts.push_back(rng.uniform(0.0, 1.0));
      std::sort(ts.begin(), ts.end());
      ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
      if (static_cast<int>(ts.size()) != k) continue;
      const auto w = single_edge_config(1.0, ts);
      const auto dec = cycles(w, g);
      CHECK(dec.size() == (k == 0 ? 2 : (k % 2 == 0 ? 2 : 1)));
      if (k == 1) CHECK(dec.objects()[0].length == doctest::Approx(2.0));
      check_against_reference(w, g, Model::cycles);
    }
  }
}

TEST_CASE("single edge loops: k bridges make k loops") {
  const auto g = cubic_lattice(1, 2, false);
  Rng rng(37);
  for (int k = 0; k <= 6; ++k) {
    std::vector<double> ts;
    for (int i = 0; i < k; ++i) ts.push_back(rng.uniform(0.0, 1.0));
    std::sort(ts.begin(), ts.end());
    const auto w = single_edge_config(1.0, ts);
    const auto dec = loops(w, g);
    CHECK(dec.size() == (k == 0 ? 2 : k));
    if (k == 0) {
      CHECK(dec.objects()[0].winding + dec.objects()[1].winding == 0);
      CHECK(std::abs(dec.objects()[0].winding) == 1);
    } else {
      for (const auto& o : dec.objects()) CHECK(o.winding == 0);
    }
    check_against_reference(w, g, Model::loops);
  }
}

TEST_CASE("loops need a bipartition") {
  const auto g = complete_graph(3);
  BridgeConfig w(1.0, static_cast<std::size_t>(g.edge_count()));
  CHECK_THROWS(loops(w, g));
}

TEST_CASE("object_containing matches object_at(x, 0)") {
  const auto g = complete_graph(4);
  Rng rng(41);
  for (int rep = 0; rep < 50; ++rep) {
    const auto w = sample_rho(g, 1.0, rng);
    const auto dec = cycles(w, g);
    for (std::int32_t x = 0; x < 4; ++x)
      CHECK(dec.object_containing(x) == dec.object_at(x, 0.0));
  }
  // one bridge joins the two endpoints' objects at time zero
  BridgeConfig w(1.0, static_cast<std::size_t>(g.edge_count()));
  w.insert(0, 0.5);  // edge {0,1}
  const auto dec = cycles(w, g);
  CHECK(dec.object_containing(0) == dec.object_containing(1));
  CHECK(dec.object_containing(2) != dec.object_containing(0));
}

TEST_CASE("random configurations match the literal-definition tracer") {
  Rng rng(43);
  const auto k4 = complete_graph(4);
  const auto lat = cubic_lattice(2, 3, false);
  const auto path = Graph(3, {{0, 1}, {1, 2}},
                          std::vector<Sublattice>{Sublattice::A, Sublattice::B, Sublattice::A});
  for (int rep = 0; rep < 300; ++rep) {
    const double beta = 0.25 + rng.uniform() * 2.0;
    check_against_reference(sample_rho(k4, beta, rng), k4, Model::cycles);
    check_against_reference(sample_rho(lat, beta, rng), lat, Model::cycles);
    check_against_reference(sample_rho(lat, beta, rng), lat, Model::loops);
    check_against_reference(sample_rho(path, beta, rng), path, Model::loops);
  }
}

TEST_CASE("winding identity L_A - L_B = beta w on every loop") {
  Rng rng(47);
  const auto lat = cubic_lattice(2, 4, true);
  for (int rep = 0; rep < 100; ++rep) {
    const auto w = sample_rho(lat, 0.8, rng);
    const auto ref = testing::reference_decompose(w, lat, Model::loops);
    for (const auto& o : ref) {
      const double exact = (o.len_a - o.len_b) / 0.8;
      CHECK(std::abs(exact - std::lround(exact)) < 1e-9);
    }
    const auto dec = loops(w, lat);
    double total = 0.0;
    for (const auto& o : dec.objects()) total += o.length;
    CHECK(total == doctest::Approx(0.8 * 16).epsilon(1e-12));
  }
}

TEST_CASE("adding one bridge changes the object count by exactly one") {
  Rng rng(53);
  const auto k4 = complete_graph(4);
  const auto lat = cubic_lattice(2, 3, false);
  for (int rep = 0; rep < 5000; ++rep) {
    const auto& g = rep % 2 == 0 ? k4 : lat;
    auto w = sample_rho(g, 1.0, rng);
    const auto e = rng.below(static_cast<std::uint64_t>(g.edge_count()));
    const double t = rng.uniform(0.0, 1.0);
    if (w.contains(e, t)) continue;
    const auto before = cycles(w, g).size();
    w.insert(e, t);
    const auto after = cycles(w, g).size();
    CHECK(std::abs(after - before) == 1);
    if (g.bipartite()) {
      w.remove(e, t);
      const auto lb = loops(w, g).size();
      w.insert(e, t);
      CHECK(std::abs(loops(w, g).size() - lb) == 1);
    }
  }
}

TEST_CASE("contact report: trivial cases") {
  const auto g = cubic_lattice(1, 2, false);
  BridgeConfig w(1.0, 1);
  const auto dec = cycles(w, g);
  const auto rep = contact_report(w, dec, g);
  // two trivial cycles; the whole edge timeline is their pair zone
  CHECK(rep.pair_zone.size() == 1);
  CHECK(rep.pair_zone.begin()->second == doctest::Approx(1.0));
  CHECK(rep.self_zone[0] == 0.0);
  CHECK(rep.self_zone[1] == 0.0);
  CHECK(rep.bridge_total() == 0);
}

TEST_CASE("contact zones and bridge classes partition") {
  Rng rng(59);
  const auto k5 = complete_graph(5);
  const auto lat = cubic_lattice(2, 3, false);
  for (int rep = 0; rep < 50; ++rep) {
    for (const Graph* gp : {&k5, &lat}) {
      const auto& g = *gp;
      const double beta = 0.5 + rng.uniform();
      const auto w = sample_rho(g, beta, rng);
      for (const Model model : {Model::cycles, Model::loops}) {
        if (model == Model::loops && !g.bipartite()) continue;
        const auto dec = decompose(w, g, model);
        const auto cr = contact_report(w, dec, g);
        CHECK(cr.zone_total() ==
              doctest::Approx(beta * static_cast<double>(g.edge_count())).epsilon(1e-9));
        CHECK(cr.bridge_total() == static_cast<std::int64_t>(w.total_count()));
      }
    }
  }
}

TEST_CASE("complete graph contact zones are exact") {
  Rng rng(61);
  for (const int n : {5, 8}) {
    const auto g = complete_graph(n);
    for (int rep = 0; rep < 30; ++rep) {
      const double beta = 0.3 + rng.uniform();
      const auto w = sample_rho(g, beta, rng);
      const auto dec = cycles(w, g);
      const auto cr = contact_report(w, dec, g);
      const auto& objs = dec.objects();
      for (std::size_t i = 0; i < objs.size(); ++i) {
        const double lv = objs[i].strands;
        CHECK(std::abs(cr.self_zone[i] - 0.5 * beta * lv * (lv - 1.0)) < 1e-9);
      }
      for (const auto& [pair, zone] : cr.pair_zone) {
        const double li = objs[static_cast<std::size_t>(pair.first)].strands;
        const double lj = objs[static_cast<std::size_t>(pair.second)].strands;
        CHECK(std::abs(zone - beta * li * lj) < 1e-9);
      }
    }
  }
}

TEST_CASE("bridge classification flips the object count as advertised") {
  // removing a self-contact bridge splits; removing a contact bridge merges
  Rng rng(67);
  const auto g = complete_graph(4);
  for (int rep = 0; rep < 200; ++rep) {
    auto w = sample_rho(g, 1.2, rng);
    if (w.total_count() == 0) continue;
    const auto dec = cycles(w, g);
    const auto cr = contact_report(w, dec, g);
    // pick one bridge, classify it, then check the count change on removal
    std::size_t pick = rng.below(w.total_count());
    for (std::size_t e = 0; e < w.edge_count(); ++e) {
      if (pick >= w.times(e).size()) {
        pick -= w.times(e).size();
        continue;
      }
      const double t = w.times(e)[pick];
      auto w2 = w;
      w2.remove(e, t);
      const auto after = cycles(w2, g).size();
      CHECK(std::abs(after - dec.size()) == 1);
      break;
    }
    (void)cr;
  }
}

TEST_CASE("decomposition csv shape") {
  const auto g = cubic_lattice(1, 2, false);
  const auto w = single_edge_config(1.0, {0.5});
  const auto dec = cycles(w, g);
  const auto csv = dec.to_csv();
  CHECK(csv.find("cycle_id,length,winding,n_strands") == 0);
  CHECK(csv.find("0,2,0,2") != std::string::npos);
}
