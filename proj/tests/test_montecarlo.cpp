#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "bondperc/error.hpp"
#include "bondperc/montecarlo.hpp"
#include "bondperc/oracle.hpp"
#include "support.hpp"

using namespace bondperc;

TEST_CASE("rng streams are reproducible and distinct") {
  SampleRng a(1, 0), b(1, 0), c(1, 1), d(2, 0);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    seen.insert(x);
    seen.insert(c.next());
    seen.insert(d.next());
  }
  CHECK(seen.size() == 300);
  SampleRng r(3, 4);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(r.below(7) < 7);
  }
}

TEST_CASE("degenerate probabilities") {
  for (Solid s : kAllSolids) {
    const Graph g = make_solid(s);
    SimConfig cfg;
    cfg.samples = 500;
    cfg.threads = 1;
    cfg.p = 0.0;
    const auto zero = sample_cluster_size(g, cfg);
    CHECK(zero.mean_s == 1.0);
    CHECK(zero.mean_s2 == 1.0);
    CHECK(zero.se_s == 0.0);
    cfg.p = 1.0;
    const auto one = sample_cluster_size(g, cfg);
    const auto n = static_cast<double>(g.n_vertices());
    CHECK(one.mean_s == n);
    CHECK(one.mean_s2 == n * n);
  }
}

TEST_CASE("tetrahedron at p = 1/2") {
  SimConfig cfg;
  cfg.p = 0.5;
  cfg.samples = 100000;
  cfg.seed = 3;
  const auto r = sample_cluster_size(make_solid(Solid::tetrahedron), cfg);
  CHECK(std::abs(r.mean_s - 3.25) <= 3 * r.se_s);
  // E(S^2) from the exact polynomial: 1 + 9/2 + 36/4 + 30/8 - 171/16 + 153/32 - 42/64
  const double e2 = 1 + 4.5 + 9 + 3.75 - 10.6875 + 4.78125 - 0.65625;
  CHECK(std::abs(r.mean_s2 - e2) <= 3 * r.se_s2);
  CHECK(r.samples == 100000);
  CHECK(r.seed == 3);
}

TEST_CASE("output does not depend on the thread count") {
  const Graph g = make_solid(Solid::dodecahedron);
  SimConfig cfg;
  cfg.p = 0.4;
  cfg.samples = 20000;
  cfg.seed = 9;
  cfg.policy = SourcePolicy::uniform;
  cfg.threads = 1;
  const auto a = sample_cluster_size(g, cfg);
  for (unsigned t : {2U, 3U, 7U}) {
    cfg.threads = t;
    const auto b = sample_cluster_size(g, cfg);
    CHECK(a.mean_s == b.mean_s);
    CHECK(a.mean_s2 == b.mean_s2);
    CHECK(a.se_s == b.se_s);
    CHECK(a.se_s2 == b.se_s2);
  }
  cfg.seed = 10;
  CHECK(sample_cluster_size(g, cfg).mean_s != a.mean_s);
}

TEST_CASE("invalid configurations") {
  const Graph g = make_solid(Solid::cube);
  SimConfig cfg;
  cfg.p = 1.5;
  CHECK_THROWS_AS(sample_cluster_size(g, cfg), InvalidInput);
  cfg.p = 0.5;
  cfg.samples = 0;
  CHECK_THROWS_AS(sample_cluster_size(g, cfg), InvalidInput);
  cfg.samples = 10;
  cfg.source = 8;
  CHECK_THROWS_AS(sample_cluster_size(g, cfg), InvalidInput);
}

TEST_CASE("cluster size") {
  const Graph g = testing::path_graph(5);
  CHECK(cluster_size(g, EdgeSet(), 2) == 1);
  CHECK(cluster_size(g, EdgeSet(0b0110), 2) == 3);
  CHECK(cluster_size(g, EdgeSet(0b0110), 0) == 1);
  CHECK(cluster_size(g, EdgeSet::all(4), 4) == 5);
}

TEST_CASE("birth process with nothing open") {
  const auto trace = birth_process(make_solid(Solid::cube), EdgeSet(), 0);
  CHECK(trace.total_particles() == 1);
  for (std::size_t n = 0; n < trace.newborn.size(); ++n) {
    CHECK(trace.occupied(n) == std::vector<VertexId>{0});
    if (n > 0) CHECK(trace.newborn[n].empty());
  }
}

TEST_CASE("birth process with everything open follows the distance layers") {
  for (Solid s : kAllSolids) {
    const Graph g = make_solid(s);
    const auto dc = distance_classes(g, 0);
    const auto trace = birth_process(g, EdgeSet::all(g.n_edges()), 0);
    CHECK(trace.total_particles() == g.n_vertices());
    std::vector<VertexId> so_far;
    for (std::size_t n = 0; n < dc.classes.size(); ++n) {
      CHECK(trace.newborn[n] == dc.classes[n]);
      so_far.insert(so_far.end(), dc.classes[n].begin(), dc.classes[n].end());
      std::sort(so_far.begin(), so_far.end());
      CHECK(trace.occupied(n) == so_far);
    }
    for (std::size_t n = 1; n < dc.classes.size(); ++n) {
      for (VertexId v : trace.newborn[n]) {
        const VertexId parent = trace.parent[v];
        CHECK(g.edge_between(parent, v).has_value());
        CHECK(std::find(dc.classes[n - 1].begin(), dc.classes[n - 1].end(), parent) != dc.classes[n - 1].end());
      }
    }
  }
}

TEST_CASE("birth process total equals the cluster size") {
  const Graph g = make_solid(Solid::icosahedron);
  for (std::uint64_t i = 0; i < 2000; ++i) {
    SampleRng rng(17, i);
    const double p = rng.uniform();
    const EdgeSet open = sample_open_edges(g, p, rng);
    const auto x = static_cast<VertexId>(rng.below(12));
    CHECK(birth_process(g, open, x).total_particles() == cluster_size(g, open, x));
  }
}

TEST_CASE("newborn layers are open-path distances") {
  for (Solid s : kAllSolids) {
    const Graph g = make_solid(s);
    for (std::uint64_t i = 0; i < 500; ++i) {
      SampleRng rng(23, i);
      const EdgeSet open = sample_open_edges(g, rng.uniform(), rng);
      const auto x = static_cast<VertexId>(rng.below(g.n_vertices()));
      // distances in the open subgraph by plain BFS
      std::vector<int> dist(g.n_vertices(), -1);
      std::vector<VertexId> queue{x};
      dist[x] = 0;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const VertexId v = queue[head];
        for (const auto& inc : g.neighbors(v)) {
          if (open.contains(inc.edge) && dist[inc.neighbor] < 0) {
            dist[inc.neighbor] = dist[v] + 1;
            queue.push_back(inc.neighbor);
          }
        }
      }
      const auto trace = birth_process(g, open, x);
      for (std::size_t n = 0; n < trace.newborn.size(); ++n) {
        std::vector<VertexId> expect;
        for (VertexId v = 0; v < g.n_vertices(); ++v)
          if (dist[v] == static_cast<int>(n)) expect.push_back(v);
        REQUIRE(trace.newborn[n] == expect);
      }
    }
  }
}

// Exact E(S^4) from the tally, for the true spread of the S^2 estimator.
static IntPolynomial fourth_moment(const ClusterSizeTally& t) {
  IntPolynomial out(t.n_edges());
  for (std::size_t j = 0; j <= t.n_edges(); ++j)
    for (std::size_t s = 1; s <= t.n_vertices(); ++s) {
      const auto w = static_cast<std::int64_t>(t.at(j, s) * s * s * s * s);
      if (w) out.add_bernstein(j, t.n_edges(), w);
    }
  return out;
}

// Standard errors here come from the exact variance, not the sample one:
// near p = 1 deficient clusters are so rare that the plug-in estimate rests on
// a handful of samples and is far too small.
TEST_CASE("estimates within 4 standard errors of the exact moments on the grid") {
  for (Solid s : {Solid::tetrahedron, Solid::cube, Solid::octahedron}) {
    const Graph g = make_solid(s);
    const auto tally = exhaustive_tally(g, 0);
    const auto m1 = tally_to_moment_polynomial(tally, 1);
    const auto m2 = tally_to_moment_polynomial(tally, 2);
    const auto m4 = fourth_moment(tally);
    for (int i = 1; i < 20; ++i) {
      SimConfig cfg;
      cfg.p = i / 20.0;
      cfg.samples = 100000;
      cfg.seed = 2024;
      const auto r = sample_cluster_size(g, cfg);
      const double n = static_cast<double>(cfg.samples);
      const double e1 = m1.eval(cfg.p), e2 = m2.eval(cfg.p), e4 = m4.eval(cfg.p);
      const double se1 = std::sqrt(std::max(0.0, e2 - e1 * e1) / n);
      const double se2 = std::sqrt(std::max(0.0, e4 - e2 * e2) / n);
      CAPTURE(solid_name(s));
      CAPTURE(cfg.p);
      CHECK(std::abs(r.mean_s - e1) <= 4 * se1);
      CHECK(std::abs(r.mean_s2 - e2) <= 4 * se2);
    }
  }
}
