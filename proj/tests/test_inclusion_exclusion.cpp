#include <doctest.h>

#include <random>

#include "bondperc/error.hpp"
#include "bondperc/inclusion_exclusion.hpp"
#include "bondperc/oracle.hpp"
#include "support.hpp"

using namespace bondperc;

namespace {

IeOptions serial() {
  IeOptions o;
  o.threads = 1;
  return o;
}

}  // namespace

TEST_CASE("single path gives p^L") {
  for (std::size_t len = 1; len <= 6; ++len) {
    const std::vector<EdgeSet> fam{EdgeSet::all(len)};
    const auto r = connection_polynomial(fam, 10, serial());
    CHECK(r.poly == IntPolynomial::monomial(10, len));
    CHECK(r.subsets_visited == 1);
  }
}

TEST_CASE("triangle") {
  const Graph tri = testing::cycle_graph(3);
  const auto fam = enumerate_paths(tri, 0, 1);
  CHECK(fam.size() == 2);
  const auto r = connection_polynomial(fam, 3, serial());
  // p + p^2 - p^3
  CHECK(r.poly == IntPolynomial{3, {0, 1, 1, -1}});
  CHECK(r.poly == testing::joint_connection_bruteforce(tri, 0, {1}));

  const auto m1 = first_moment(tri, std::nullopt, serial());
  CHECK(m1.poly == IntPolynomial{3, {1, 2, 2, -2}});

  // both other vertices reached: 3p^2 - 2p^3
  CHECK(testing::joint_connection_bruteforce(tri, 0, {1, 2}) == IntPolynomial{3, {0, 0, 3, -2}});
  const auto pair = enumerate_pair_events(tri, 0, 1, 2);
  CHECK(connection_polynomial(pair, 3, serial()).poly == IntPolynomial{3, {0, 0, 3, -2}});
}

TEST_CASE("empty or oversized families are refused") {
  CHECK_THROWS_AS(connection_polynomial(std::vector<EdgeSet>{}, 4), InvalidInput);
  std::vector<EdgeSet> big;
  for (EdgeId e = 0; e < 41; ++e) big.push_back(EdgeSet::single(e));
  CHECK_THROWS_AS(connection_polynomial(big, 50), BudgetExceeded);
}

TEST_CASE("subset count is 2^K - 1") {
  const Graph cube = make_solid(Solid::cube);
  for (VertexId y : {1U, 3U, 7U}) {
    const auto fam = enumerate_paths(cube, 0, y);
    const auto r = connection_polynomial(fam, 12, serial());
    CHECK(r.subsets_visited == (std::uint64_t{1} << fam.size()) - 1);
  }
}

TEST_CASE("matches the union-event brute force on random families") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n_edges = 4 + rng() % 12;
    const std::size_t k = 1 + rng() % 10;
    std::vector<EdgeSet> fam;
    for (std::size_t i = 0; i < k; ++i) {
      EdgeSet s(rng() & EdgeSet::all(n_edges).bits());
      if (s.empty()) s.insert(static_cast<EdgeId>(rng() % n_edges));
      fam.push_back(s);
    }
    CAPTURE(trial);
    const auto r = connection_polynomial(fam, n_edges, serial());
    CHECK(r.poly == testing::union_event_polynomial(fam, n_edges));
  }
}

TEST_CASE("adding a superset of a member changes nothing") {
  const Graph cube = make_solid(Solid::cube);
  auto fam = enumerate_paths(cube, 0, 3).paths;
  const auto before = connection_polynomial(fam, 12, serial()).poly;
  fam.push_back(fam[0] | EdgeSet::single(11) | EdgeSet::single(10));
  fam.push_back(fam[2]);
  CHECK(connection_polynomial(fam, 12, serial()).poly == before);
}

TEST_CASE("thread count and split depth do not change results") {
  const Graph cube = make_solid(Solid::cube);
  const auto fam = enumerate_paths(cube, 0, 7);
  const auto reference = connection_polynomial(fam, 12, serial());
  for (unsigned threads : {1U, 2U, 3U, 8U}) {
    for (std::size_t split : {0U, 1U, 5U, 8U, 18U, 30U}) {
      IeOptions o;
      o.threads = threads;
      o.split_depth = split;
      const auto r = connection_polynomial(fam, 12, o);
      CHECK(r.poly == reference.poly);
      CHECK(r.subsets_visited == reference.subsets_visited);
    }
  }
}

TEST_CASE("connection probabilities lie in [0,1] and grow with p") {
  for (Solid s : {Solid::tetrahedron, Solid::cube, Solid::octahedron}) {
    const Graph g = make_solid(s);
    const auto dc = distance_classes(g, 0);
    for (std::size_t d = 1; d < dc.classes.size(); ++d) {
      const auto poly = connection_polynomial(enumerate_paths(g, 0, dc.classes[d][0]), g.n_edges()).poly;
      CHECK(poly[0] == 0);
      CHECK(poly.eval(1.0) == doctest::Approx(1.0));
      double prev = 0.0;
      for (int i = 0; i <= 100; ++i) {
        const double v = poly.eval(i / 100.0);
        CHECK(v >= -1e-12);
        CHECK(v <= 1.0 + 1e-12);
        CHECK(v >= prev - 1e-12);
        prev = v;
      }
    }
  }
}

TEST_CASE("octahedron antipode family has 2^28 - 1 subsets") {
  const Graph oct = make_solid(Solid::octahedron);
  const auto fam = enumerate_paths(oct, 0, 3);
  REQUIRE(fam.size() == 28);
  CHECK(connection_polynomial(fam, 12).subsets_visited == 268435455ULL);
}

TEST_CASE("class method equals the oracle on the small solids") {
  for (Solid s : {Solid::tetrahedron, Solid::cube, Solid::octahedron}) {
    const Graph g = make_solid(s);
    CAPTURE(solid_name(s));
    CHECK(first_moment(g).poly == tally_to_moment_polynomial(exhaustive_tally(g, 0), 1));
  }
}

TEST_CASE("cutoff polynomials sit between 0 and the exact value") {
  const Graph cube = make_solid(Solid::cube);
  const auto exact = first_moment(cube, std::nullopt, serial());
  CHECK(exact.kind == MomentKind::exact);
  for (std::size_t c : {3U, 4U, 5U}) {
    const auto cut = first_moment(cube, c, serial());
    CHECK(cut.kind == MomentKind::lower_bound);
    for (int i = 0; i <= 20; ++i) {
      const double p = i / 20.0;
      CHECK(cut.poly.eval(p) <= exact.poly.eval(p) + 1e-12);
      CHECK(cut.poly.eval(p) >= 1.0 - 1e-12);
    }
    for (std::size_t s = 1; s < cut.per_class.size(); ++s) {
      for (int i = 0; i <= 20; ++i) {
        const double p = i / 20.0;
        CHECK(cut.per_class[s].poly.eval(p) <= exact.per_class[s].poly.eval(p) + 1e-12);
      }
    }
  }
}

TEST_CASE("known first moments") {
  const auto tet = first_moment(make_solid(Solid::tetrahedron), std::nullopt, serial());
  CHECK(tet.poly == IntPolynomial{6, {1, 3, 6, 0, -21, 21, -6}});
  CHECK(tet.per_class.size() == 2);
  CHECK(tet.per_class[1].n_s == 3);
  CHECK(tet.per_class[1].k_s == 5);

  const auto cube = first_moment(make_solid(Solid::cube), std::nullopt, serial());
  CHECK(cube.poly == IntPolynomial{12, {1, 3, 6, 12, 9, 12, -81, -75, 69, 473, -777, 447, -91}});
  CHECK(cube.per_class[1].poly == IntPolynomial{12, {0, 1, 0, 2, -2, 8, -15, -5, 0, 67, -99, 55, -11}});
}

TEST_CASE("source choice does not matter on a vertex-transitive solid") {
  const Graph cube = make_solid(Solid::cube);
  const auto a = first_moment(cube, std::nullopt, serial());
  IeOptions o = serial();
  o.source = 6;
  const auto b = first_moment(cube, std::nullopt, o);
  CHECK(a.poly == b.poly);
}

TEST_CASE("inhomogeneous graphs are refused by the class method") {
  CHECK_THROWS_AS(first_moment(testing::path_graph(4), std::nullopt, serial()), InvalidInput);
  // 6-cycle plus one chord
  const Graph g = Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}, {0, 3}});
  CHECK_THROWS_AS(first_moment(g, std::nullopt, serial()), InvalidInput);
}

TEST_CASE("per-vertex and second moments match the exhaustive oracle on small graphs") {
  std::mt19937_64 rng(77);
  OracleOptions oo;
  oo.threads = 1;
  int second_checked = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 3 + rng() % 5;
    const std::size_t m = n - 1 + rng() % 6;
    const Graph g = testing::random_connected_graph(rng, n, std::min<std::size_t>(m, 14));
    const VertexId x = static_cast<VertexId>(rng() % n);
    CAPTURE(trial);
    IeOptions o = serial();
    o.source = x;
    const auto tally = exhaustive_tally(g, x, oo);
    CHECK(first_moment_at(g, std::nullopt, o).poly == tally_to_moment_polynomial(tally, 1));
    const auto work = second_moment_work(g, x);
    if (work && *work <= (std::uint64_t{1} << 22)) {
      CHECK(second_moment(g, o).poly == tally_to_moment_polynomial(tally, 2));
      ++second_checked;
    }
  }
  CHECK(second_checked >= 10);
}

TEST_CASE("tetrahedron second moment") {
  const auto r = second_moment(make_solid(Solid::tetrahedron), serial());
  CHECK(r.poly == IntPolynomial{6, {1, 9, 36, 30, -171, 153, -42}});
  CHECK(r.pair_terms.size() == 6);
  for (const auto& t : r.pair_terms) CHECK(t.k == 10);
}

TEST_CASE("oversized second moments are refused") {
  IeOptions o = serial();
  o.second_moment_budget = 1000;
  CHECK_THROWS_AS(second_moment(make_solid(Solid::cube), o), BudgetExceeded);
  CHECK_FALSE(second_moment_work(make_solid(Solid::dodecahedron), 0).has_value());
}

TEST_CASE("report json") {
  const auto r = first_moment(make_solid(Solid::tetrahedron), std::nullopt, serial());
  const auto j = to_json(r);
  CHECK(j["solid"] == "tetrahedron");
  CHECK(j["kind"] == "exact");
  CHECK(j["cutoff"].is_null());
  CHECK(j["coeffs"] == std::vector<std::int64_t>{1, 3, 6, 0, -21, 21, -6});
  CHECK_FALSE(j.contains("wall_seconds"));
  CHECK(to_json(r, true).contains("wall_seconds"));
  CHECK(j.dump() == to_json(first_moment(make_solid(Solid::tetrahedron), std::nullopt, serial())).dump());
}
