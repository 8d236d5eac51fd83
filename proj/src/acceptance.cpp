#include "bondperc/acceptance.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <queue>
#include <sstream>

#include "bondperc/bounds.hpp"
#include "bondperc/error.hpp"
#include "bondperc/inclusion_exclusion.hpp"
#include "bondperc/montecarlo.hpp"
#include "bondperc/oracle.hpp"
#include "bondperc/paths.hpp"

namespace bondperc::acceptance {

namespace {

using Coeffs = std::vector<std::int64_t>;

// Published coefficient vectors, index j = coefficient of p^j.
const Coeffs kTetrahedronFirst{1, 3, 6, 0, -21, 21, -6};
const Coeffs kTetrahedronSecond{1, 9, 36, 30, -171, 153, -42};
const Coeffs kCubeFirst{1, 3, 6, 12, 9, 12, -81, -75, 69, 473, -777, 447, -91};
const Coeffs kOctahedronFirst{1, 4, 12, 20, -14, -196, 12, 1316, -2815, 2824, -1564, 464, -58};
const Coeffs kDodecahedronLower{1, 3, 6, 12, 24, 30, -24, -30, -36, 3, -6, 42, -6, 18, -21, 14,
                                0, -6, -9, 0, 0, 6, 0, 0, -1, 0, 0, 0, 0, 0, 0};
const Coeffs kIcosahedronLower{1, 5, 20, 60, -90, -75, 0, 190, -10, -80, -60, 10, -5, 120, -35, -88,
                               35, 40, -35, 10, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};

constexpr double kSlack = 1e-9;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<double> interior_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 19; ++i) grid.push_back(0.05 * i);
  return grid;
}

std::string show(const Coeffs& c) { return IntPolynomial(c.size() - 1, c).to_tuple_string(); }

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      passed_ = false;
      if (!failures_.empty()) failures_ += "; ";
      failures_ += what;
    }
  }
  void note(const std::string& text) {
    if (!notes_.empty()) notes_ += "; ";
    notes_ += text;
  }
  bool passed() const { return passed_; }
  std::string detail() const { return passed_ ? notes_ : failures_; }

 private:
  bool passed_ = true;
  std::string failures_;
  std::string notes_;
};

// Exact-moment polynomials from the exhaustive oracle, computed once.
struct OracleCache {
  unsigned threads = 0;
  std::map<Solid, std::pair<IntPolynomial, IntPolynomial>> moments;

  const std::pair<IntPolynomial, IntPolynomial>& get(Solid s) {
    auto it = moments.find(s);
    if (it == moments.end()) {
      OracleOptions opts;
      opts.threads = threads;
      const auto tally = exhaustive_tally(make_solid(s), 0, opts);
      it = moments.emplace(s, std::pair{tally_to_moment_polynomial(tally, 1), tally_to_moment_polynomial(tally, 2)})
               .first;
    }
    return it->second;
  }
  bool has(Solid s) const { return moments.count(s) > 0; }
};

IeOptions ie_options(const Options& o) {
  IeOptions ie;
  ie.threads = o.threads;
  return ie;
}

CriterionResult criterion_tetrahedron(const Options& o) {
  Checker c;
  const auto t0 = Clock::now();
  const Graph g = make_solid(Solid::tetrahedron);
  const auto first = first_moment(g, std::nullopt, ie_options(o));
  const auto second = second_moment(g, ie_options(o));
  const double elapsed = seconds_since(t0);
  c.expect(first.poly.coeff_vector() == kTetrahedronFirst, "E(S) = " + first.poly.to_tuple_string());
  c.expect(first.kind == MomentKind::exact, "E(S) not marked exact");
  c.expect(second.poly.coeff_vector() == kTetrahedronSecond, "E(S^2) = " + second.poly.to_tuple_string());
  c.expect(elapsed < 1.0, "took " + std::to_string(elapsed) + " s (limit 1 s)");
  c.note("E(S) = " + first.poly.to_tuple_string() + ", E(S^2) = " + second.poly.to_tuple_string());
  return {1, "tetrahedron exact first and second moments", c.passed() ? Status::pass : Status::fail, c.detail(),
          elapsed};
}

CriterionResult criterion_cube_octahedron(const Options& o) {
  Checker c;
  const auto t0 = Clock::now();
  const auto cube = first_moment(make_solid(Solid::cube), std::nullopt, ie_options(o));
  c.expect(cube.poly.coeff_vector() == kCubeFirst, "cube E(S) = " + cube.poly.to_tuple_string());
  c.expect(cube.kind == MomentKind::exact, "cube E(S) not marked exact");

  const auto t_oct = Clock::now();
  const auto oct = first_moment(make_solid(Solid::octahedron), std::nullopt, ie_options(o));
  const double oct_seconds = seconds_since(t_oct);
  c.expect(oct.poly.coeff_vector() == kOctahedronFirst, "octahedron E(S) = " + oct.poly.to_tuple_string());
  c.expect(oct.kind == MomentKind::exact, "octahedron E(S) not marked exact");
  const std::uint64_t class1 = (std::uint64_t{1} << 26) - 1;
  const std::uint64_t class2 = (std::uint64_t{1} << 28) - 1;
  c.expect(oct.per_class.size() == 3 && oct.per_class[1].k_s == 26 && oct.per_class[2].k_s == 28,
           "octahedron family sizes differ from 26/28");
  if (oct.per_class.size() == 3) {
    c.expect(oct.per_class[1].subsets_visited == class1,
             "distance-1 class visited " + std::to_string(oct.per_class[1].subsets_visited));
    c.expect(oct.per_class[2].subsets_visited == class2 && class2 == 268435455,
             "distance-2 class visited " + std::to_string(oct.per_class[2].subsets_visited));
  }
  c.expect(oct.subsets_visited == class1 + class2, "octahedron total " + std::to_string(oct.subsets_visited));
  c.expect(oct.verification_subsets_visited == class1 + class2,
           "octahedron second-source total " + std::to_string(oct.verification_subsets_visited));
  c.expect(oct_seconds < 60.0, "octahedron took " + std::to_string(oct_seconds) + " s (target 60 s)");
  c.note("octahedron traversed 2*(2^26-1) + 2*(2^28-1) = " +
         std::to_string(oct.subsets_visited + oct.verification_subsets_visited) + " subsets in " +
         std::to_string(oct_seconds) + " s");
  return {2, "cube and octahedron exact first moments", c.passed() ? Status::pass : Status::fail, c.detail(),
          seconds_since(t0)};
}

CriterionResult criterion_lower_bounds(const Options& o) {
  Checker c;
  const auto t0 = Clock::now();
  const auto dodeca = first_moment(make_solid(Solid::dodecahedron), 5, ie_options(o));
  const auto icosa = first_moment(make_solid(Solid::icosahedron), 3, ie_options(o));
  c.expect(dodeca.poly.coeff_vector() == kDodecahedronLower,
           "dodecahedron cutoff-5 vector " + dodeca.poly.to_tuple_string());
  c.expect(icosa.poly.coeff_vector() == kIcosahedronLower, "icosahedron cutoff-3 vector " + icosa.poly.to_tuple_string());
  c.expect(dodeca.kind == MomentKind::lower_bound && icosa.kind == MomentKind::lower_bound,
           "cutoff reports not marked lower_bound");
  c.note("both 31-entry vectors match");
  return {3, "dodecahedron/icosahedron cutoff lower bounds", c.passed() ? Status::pass : Status::fail, c.detail(),
          seconds_since(t0)};
}

CriterionResult criterion_path_counts(const Options&) {
  Checker c;
  const auto t0 = Clock::now();
  auto check_solid = [&](Solid s, const std::vector<std::size_t>& by_distance) {
    const Graph g = make_solid(s);
    for (VertexId x = 0; x < g.n_vertices(); ++x) {
      const auto dc = distance_classes(g, x);
      for (std::size_t d = 1; d < dc.classes.size(); ++d) {
        for (VertexId y : dc.classes[d]) {
          const auto n = enumerate_paths(g, x, y).size();
          if (d > by_distance.size() || n != by_distance[d - 1]) {
            c.expect(false, std::string(solid_name(s)) + " pair (" + std::to_string(x) + "," + std::to_string(y) +
                                ") has " + std::to_string(n) + " paths");
            return;
          }
        }
      }
    }
  };
  check_solid(Solid::tetrahedron, {5});
  check_solid(Solid::cube, {15, 16, 18});
  check_solid(Solid::octahedron, {26, 28});
  const Graph tetra = make_solid(Solid::tetrahedron);
  for (VertexId x = 0; x < 4; ++x)
    for (VertexId y = 0; y < 4; ++y)
      for (VertexId z = 0; z < 4; ++z) {
        if (x == y || x == z || y == z) continue;
        const auto k = enumerate_pair_events(tetra, x, y, z).size();
        c.expect(k == 10, "tetrahedron triple has " + std::to_string(k) + " pair events");
      }
  c.note("tetrahedron 5, cube 15/16/18, octahedron 26/28 for every pair; 10 pair events for every triple");
  return {4, "self-avoiding path and pair-event counts", c.passed() ? Status::pass : Status::fail, c.detail(),
          seconds_since(t0)};
}

CriterionResult criterion_oracle_matches_ie(const Options& o, OracleCache& cache) {
  Checker c;
  const auto t0 = Clock::now();
  for (Solid s : {Solid::tetrahedron, Solid::cube, Solid::octahedron}) {
    const auto& [first, second] = cache.get(s);
    const Coeffs& expected = s == Solid::tetrahedron ? kTetrahedronFirst : s == Solid::cube ? kCubeFirst
                                                                                             : kOctahedronFirst;
    c.expect(first.coeff_vector() == expected,
             std::string(solid_name(s)) + " oracle E(S) = " + first.to_tuple_string() + ", IE " + show(expected));
    if (s == Solid::tetrahedron) {
      c.expect(second.coeff_vector() == kTetrahedronSecond, "tetrahedron oracle E(S^2) = " + second.to_tuple_string());
    }
  }
  const double elapsed = seconds_since(t0);
  (void)o;
  c.expect(elapsed < 1.0, "oracle runs took " + std::to_string(elapsed) + " s (limit 1 s)");
  c.note("2^6 and 2^12 configurations agree with inclusion-exclusion in " + std::to_string(elapsed) + " s");
  return {5, "exhaustive oracle equals inclusion-exclusion", c.passed() ? Status::pass : Status::fail, c.detail(),
          elapsed};
}

CriterionResult criterion_bound_dominance(const Options&, OracleCache& cache) {
  Checker c;
  const auto t0 = Clock::now();
  double min_margin = 1e300;
  for (Solid s : {Solid::tetrahedron, Solid::cube, Solid::octahedron}) {
    const Graph g = make_solid(s);
    const auto d = validate_regular(g);
    const auto& [first, second] = cache.get(s);
    for (double p : interior_grid()) {
      const auto row = evaluate_bounds(d, g.n_vertices(), p);
      const double es = first.eval(p), es2 = second.eval(p);
      const std::pair<const char*, double> checks[] = {{"branching E(S)", row.e_s_branching_raw - es},
                                                       {"branching E(S^2)", row.e_s2_branching_raw - es2},
                                                       {"large-p E(S)", row.e_s_plarge - es},
                                                       {"large-p E(S^2)", row.e_s2_plarge - es2}};
      for (const auto& [name, margin] : checks) {
        min_margin = std::min(min_margin, margin);
        std::ostringstream where;
        where << solid_name(s) << ' ' << name << " at p=" << p << " margin " << margin;
        c.expect(margin >= -kSlack, where.str());
        c.expect(margin > 0.0, "not strict: " + where.str());
      }
    }
  }
  std::ostringstream note;
  note << "all 228 bound checks hold strictly, smallest margin " << min_margin;
  c.note(note.str());
  return {6, "upper bounds dominate exact moments", c.passed() ? Status::pass : Status::fail, c.detail(),
          seconds_since(t0)};
}

CriterionResult criterion_lower_bound_validity(const Options& o, OracleCache& cache) {
  if (!o.include_long) return {7, "cutoff lower bounds below 2^30-configuration oracle", Status::skipped,
                               "long test disabled", 0.0};
  Checker c;
  const auto t0 = Clock::now();
  for (auto [s, lower] : {std::pair{Solid::dodecahedron, &kDodecahedronLower}, {Solid::icosahedron, &kIcosahedronLower}}) {
    const auto& exact = cache.get(s).first;
    const IntPolynomial bound(30, *lower);
    for (double p : interior_grid()) {
      std::ostringstream where;
      where << solid_name(s) << " at p=" << p << ": bound " << bound.eval(p) << " exact " << exact.eval(p);
      c.expect(bound.eval(p) <= exact.eval(p) + kSlack, where.str());
    }
    for (double p : {0.0, 1.0}) {
      c.expect(std::abs(bound.eval(p) - exact.eval(p)) <= kSlack,
               std::string(solid_name(s)) + " endpoint p=" + std::to_string(p) + " differs");
    }
  }
  c.note("2^30 configurations per solid in " + std::to_string(seconds_since(t0)) + " s");
  return {7, "cutoff lower bounds below 2^30-configuration oracle", c.passed() ? Status::pass : Status::fail,
          c.detail(), seconds_since(t0)};
}

// Hop distance of every vertex from `source` in the open subgraph, -1 when
// unreachable.
std::vector<int> open_distances(const Graph& g, EdgeSet open, VertexId source) {
  std::vector<int> dist(g.n_vertices(), -1);
  std::queue<VertexId> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const VertexId v = q.front();
    q.pop();
    for (const auto& inc : g.neighbors(v)) {
      if (open.contains(inc.edge) && dist[inc.neighbor] < 0) {
        dist[inc.neighbor] = dist[v] + 1;
        q.push(inc.neighbor);
      }
    }
  }
  return dist;
}

CriterionResult criterion_birth_process(const Options&) {
  Checker c;
  const auto t0 = Clock::now();
  constexpr std::uint64_t kRealizations = 10000;
  std::uint64_t agree = 0, total = 0;
  for (Solid s : kAllSolids) {
    const Graph g = make_solid(s);
    for (std::uint64_t i = 0; i < kRealizations; ++i) {
      SampleRng rng(20240, i);
      const double p = rng.uniform();
      const auto x = static_cast<VertexId>(rng.below(g.n_vertices()));
      const EdgeSet open = sample_open_edges(g, p, rng);
      const auto trace = birth_process(g, open, x);
      const auto dist = open_distances(g, open, x);
      bool ok = trace.total_particles() == cluster_size(g, open, x);
      for (std::size_t n = 0; ok && n < trace.newborn.size(); ++n)
        for (VertexId v : trace.newborn[n]) ok = ok && dist[v] == static_cast<int>(n);
      ++total;
      if (ok) ++agree;
    }
  }
  c.expect(agree == total, std::to_string(total - agree) + " of " + std::to_string(total) + " realizations disagree");
  c.note(std::to_string(agree) + "/" + std::to_string(total) + " realizations: total particles = BFS cluster size");
  return {8, "birth process total equals cluster size", c.passed() ? Status::pass : Status::fail, c.detail(),
          seconds_since(t0)};
}

CriterionResult criterion_monte_carlo(const Options& o, OracleCache& cache) {
  Checker c;
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::size_t solids = 0;
  for (Solid s : kAllSolids) {
    const Graph g = make_solid(s);
    if (g.n_edges() > 12 && !o.include_long) continue;
    const auto& [first, second] = cache.get(s);
    const auto ts = Clock::now();
    for (double p : {0.2, 0.5, 0.8}) {
      SimConfig cfg;
      cfg.p = p;
      cfg.samples = 100000;
      cfg.seed = 7;
      cfg.threads = o.threads;
      const auto r = sample_cluster_size(g, cfg);
      const double z1 = std::abs(r.mean_s - first.eval(p)) / r.se_s;
      const double z2 = std::abs(r.mean_s2 - second.eval(p)) / r.se_s2;
      worst = std::max({worst, z1, z2});
      std::ostringstream where;
      where << solid_name(s) << " p=" << p << " z(S)=" << z1 << " z(S^2)=" << z2;
      c.expect(z1 <= 4.0 && z2 <= 4.0, where.str());
    }
    const double elapsed = seconds_since(ts);
    c.expect(elapsed < 10.0, std::string(solid_name(s)) + " took " + std::to_string(elapsed) + " s");
    ++solids;
  }
  std::ostringstream note;
  note << solids << " solids x 3 values of p, worst deviation " << worst << " standard errors";
  c.note(note.str());
  return {9, "Monte Carlo means within 4 standard errors", c.passed() ? Status::pass : Status::fail, c.detail(),
          seconds_since(t0)};
}

// Brute-force second moment of X_0 + ... + X_R for the branching process:
// every offspring coin of every individual is enumerated explicitly.
struct TreeMoments {
  double first = 0.0;
  double second = 0.0;
};

void enumerate_tree(std::size_t degree, double p, std::size_t generation, std::size_t last_generation,
                    std::uint64_t individuals, std::uint64_t total, double weight, TreeMoments& out) {
  if (generation == last_generation) {
    out.first += weight * static_cast<double>(total);
    out.second += weight * static_cast<double>(total * total);
    return;
  }
  const std::uint64_t coins = individuals * (generation == 0 ? degree : degree - 1);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << coins); ++mask) {
    const auto born = static_cast<std::uint64_t>(std::popcount(mask));
    const double w = weight * std::pow(p, static_cast<double>(born)) *
                     std::pow(1.0 - p, static_cast<double>(coins - born));
    enumerate_tree(degree, p, generation + 1, last_generation, born, total + born, w, out);
  }
}

CriterionResult criterion_branching_brute_force(const Options&) {
  Checker c;
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int i = 1; i <= 9; ++i) {
    const double p = 0.1 * i;
    TreeMoments tree;
    enumerate_tree(3, p, 0, 3, 1, 1, 1.0, tree);
    const BoundInputs in(3, 4, p);
    const double second = branching_second_moment_bound(in);
    const double first = branching_first_moment_bound(in);
    worst = std::max({worst, std::abs(second - tree.second), std::abs(first - tree.first)});
    std::ostringstream where;
    where << "p=" << p << ": closed form " << second << " vs enumeration " << tree.second;
    c.expect(std::abs(second - tree.second) <= kSlack, where.str());
    c.expect(std::abs(first - tree.first) <= kSlack, "first moment mismatch at p=" + std::to_string(p));
  }
  std::ostringstream note;
  note << "D=3, N=4, p=0.1..0.9 (nu=1 at p=0.5), max abs error " << worst;
  c.note(note.str());
  return {10, "branching second moment vs tree enumeration", c.passed() ? Status::pass : Status::fail, c.detail(),
          seconds_since(t0)};
}

CriterionResult guarded(int id, const std::string& title, const std::function<CriterionResult()>& run) {
  try {
    return run();
  } catch (const std::exception& e) {
    return {id, title, Status::fail, std::string("exception: ") + e.what(), 0.0};
  }
}

}  // namespace

std::vector<CriterionResult> run_all(const Options& options, std::ostream* log) {
  OracleCache cache;
  cache.threads = options.threads;
  std::vector<CriterionResult> results;
  auto record = [&](CriterionResult r) {
    if (log) *log << format_line(r) << std::endl;
    results.push_back(std::move(r));
  };
  record(guarded(1, "tetrahedron exact moments", [&] { return criterion_tetrahedron(options); }));
  record(guarded(2, "cube and octahedron exact first moments", [&] { return criterion_cube_octahedron(options); }));
  record(guarded(3, "cutoff lower bounds", [&] { return criterion_lower_bounds(options); }));
  record(guarded(4, "path counts", [&] { return criterion_path_counts(options); }));
  record(guarded(5, "oracle equals inclusion-exclusion", [&] { return criterion_oracle_matches_ie(options, cache); }));
  record(guarded(6, "bound dominance", [&] { return criterion_bound_dominance(options, cache); }));
  record(guarded(7, "lower-bound validity", [&] { return criterion_lower_bound_validity(options, cache); }));
  record(guarded(8, "birth process", [&] { return criterion_birth_process(options); }));
  record(guarded(9, "Monte Carlo consistency", [&] { return criterion_monte_carlo(options, cache); }));
  record(guarded(10, "branching brute force", [&] { return criterion_branching_brute_force(options); }));
  return results;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  const char* tag = r.status == Status::pass ? "PASS" : r.status == Status::fail ? "FAIL" : "SKIP";
  os << '[' << tag << "] " << (r.id < 10 ? " " : "") << r.id << "  " << r.title;
  os.precision(3);
  os << std::fixed << " (" << r.seconds << " s)";
  if (!r.detail.empty()) os << ": " << r.detail;
  return os.str();
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CriterionResult& r) { return r.status != Status::fail; });
}

}  // namespace bondperc::acceptance
