#include "bondperc/inclusion_exclusion.hpp"

#include <algorithm>
#include <bit>
#include <chrono>

#include "bondperc/error.hpp"
#include "bondperc/parallel.hpp"

namespace bondperc {

void CoefficientAccumulator::merge(const CoefficientAccumulator& other) {
  if (other.a_.size() != a_.size()) throw InvalidInput("accumulator sizes differ");
  for (std::size_t j = 0; j < a_.size(); ++j) a_[j] = checked_add(a_[j], other.a_[j]);
}

IntPolynomial CoefficientAccumulator::to_polynomial() const { return IntPolynomial(a_.size() - 1, a_); }

namespace {

// Visits every nonempty extension of the current subfamily by paths with
// index >= start. `sign` is the sign of the children (-1)^(|B|+1).
void visit_subsets(const std::uint64_t* paths, std::size_t k, std::size_t start, std::uint64_t acc_union,
                   std::int64_t sign, std::int64_t* a, std::uint64_t& visited) {
  for (std::size_t i = start; i < k; ++i) {
    const std::uint64_t u = acc_union | paths[i];
    a[std::popcount(u)] += sign;
    ++visited;
    if (i + 1 < k) visit_subsets(paths, k, i + 1, u, -sign, a, visited);
  }
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_source(const Graph& g, VertexId source) {
  if (!g.has_vertex(source)) throw InvalidInput("source vertex out of range");
  if (!g.is_connected()) throw InvalidInput("graph is disconnected");
}

std::vector<std::size_t> sorted_lengths(const PathFamily& f) {
  auto lengths = f.lengths;
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

// One ClassTerm per distance class s >= 1, using the smallest-id member as
// representative. Members of a class must share the representative's
// path-length profile.
std::vector<ClassTerm> class_terms(const Graph& g, const DistanceClasses& dc,
                                   std::optional<std::size_t> cutoff, const IeOptions& options,
                                   bool& truncated) {
  std::vector<ClassTerm> terms;
  for (std::size_t s = 1; s < dc.classes.size(); ++s) {
    const auto& members = dc.classes[s];
    const PathFamily family = enumerate_paths(g, dc.source, members.front(), cutoff);
    const auto profile = sorted_lengths(family);
    for (std::size_t i = 1; i < members.size(); ++i) {
      const PathFamily other = enumerate_paths(g, dc.source, members[i], cutoff);
      if (sorted_lengths(other) != profile) {
        throw InvalidInput("graph is not distance-class homogeneous: vertices " +
                           std::to_string(members.front()) + " and " + std::to_string(members[i]) +
                           " at distance " + std::to_string(s) + " from " + std::to_string(dc.source) +
                           " have different path profiles");
      }
    }
    ClassTerm term;
    term.s = s;
    term.n_s = members.size();
    term.k_s = family.size();
    term.representative = members.front();
    term.path_lengths = family.lengths;
    truncated = truncated || family.truncated;
    if (family.paths.empty()) {
      term.poly = IntPolynomial(g.n_edges());
    } else {
      auto result = connection_polynomial(family, g.n_edges(), options);
      term.poly = std::move(result.poly);
      term.subsets_visited = result.subsets_visited;
    }
    terms.push_back(std::move(term));
  }
  return terms;
}

ClassTerm origin_term(const Graph& g) {
  ClassTerm t;
  t.s = 0;
  t.n_s = 1;
  t.poly = IntPolynomial::constant(g.n_edges(), 1);
  return t;
}

}  // namespace

ConnectionResult connection_polynomial(std::span<const EdgeSet> family, std::size_t n_edges,
                                       const IeOptions& options) {
  if (family.empty()) throw InvalidInput("connection_polynomial needs a nonempty family");
  if (family.size() > kMaxFamilySize) {
    throw BudgetExceeded("family of " + std::to_string(family.size()) +
                         " events exceeds the inclusion-exclusion limit of " +
                         std::to_string(kMaxFamilySize) + " (2^K subsets)");
  }
  if (n_edges > kMaxEdges) throw InvalidInput("too many edges");
  const auto allowed = EdgeSet::all(n_edges);
  std::vector<std::uint64_t> paths;
  paths.reserve(family.size());
  for (EdgeSet s : family) {
    if (!s.subset_of(allowed)) throw InvalidInput("edge set uses an edge id >= n_edges");
    paths.push_back(s.bits());
  }

  const std::size_t k = paths.size();
  const std::size_t split = std::min(k, options.split_depth);
  const std::size_t n_tasks = std::size_t{1} << split;
  const unsigned threads = resolve_threads(options.threads);

  std::vector<CoefficientAccumulator> per_worker(threads, CoefficientAccumulator(n_edges));
  std::vector<std::uint64_t> visited(threads, 0);

  // Task t fixes which of the first `split` paths are in B; the task then
  // walks all extensions by the remaining paths.
  parallel_tasks(n_tasks, threads, [&](std::size_t task, unsigned worker) {
    std::int64_t* a = per_worker[worker].data();
    std::uint64_t& count = visited[worker];
    std::uint64_t prefix_union = 0;
    for (std::size_t i = 0; i < split; ++i) {
      if ((task >> i) & 1U) prefix_union |= paths[i];
    }
    const int chosen = std::popcount(task);
    std::int64_t child_sign = 1;
    if (chosen > 0) {
      const std::int64_t sign = (chosen % 2 == 1) ? 1 : -1;
      a[std::popcount(prefix_union)] += sign;
      ++count;
      child_sign = -sign;
    }
    visit_subsets(paths.data(), k, split, prefix_union, child_sign, a, count);
  });

  ConnectionResult result;
  CoefficientAccumulator total(n_edges);
  for (const auto& acc : per_worker) total.merge(acc);
  for (auto v : visited) result.subsets_visited += v;
  result.poly = total.to_polynomial();
  return result;
}

ConnectionResult connection_polynomial(const PathFamily& family, std::size_t n_edges,
                                       const IeOptions& options) {
  return connection_polynomial(std::span<const EdgeSet>(family.paths), n_edges, options);
}

std::string_view to_string(MomentKind kind) { return kind == MomentKind::exact ? "exact" : "lower_bound"; }

MomentReport first_moment(const Graph& g, std::optional<std::size_t> cutoff, const IeOptions& options) {
  const auto start = Clock::now();
  require_source(g, options.source);
  const DistanceClasses dc = distance_classes(g, options.source);
  for (VertexId v = 0; v < g.n_vertices(); ++v) {
    if (distance_classes(g, v).sizes != dc.sizes) {
      throw InvalidInput("graph is not distance-class homogeneous: vertices " +
                         std::to_string(options.source) + " and " + std::to_string(v) +
                         " see different distance-class sizes");
    }
  }

  MomentReport report;
  report.solid = g.name();
  report.moment = 1;
  report.source = options.source;
  report.cutoff = cutoff;
  report.per_class.push_back(origin_term(g));

  bool truncated = false;
  for (auto& term : class_terms(g, dc, cutoff, options, truncated)) {
    report.subsets_visited += term.subsets_visited;
    report.per_class.push_back(std::move(term));
  }

  if (options.verify_homogeneity && g.n_vertices() > 1) {
    const VertexId other = options.source == g.n_vertices() - 1 ? 0 : static_cast<VertexId>(g.n_vertices() - 1);
    bool other_truncated = false;
    const auto check = class_terms(g, distance_classes(g, other), cutoff, options, other_truncated);
    for (std::size_t i = 0; i < check.size(); ++i) {
      report.verification_subsets_visited += check[i].subsets_visited;
      if (check[i].poly != report.per_class[i + 1].poly) {
        throw InvalidInput("graph is not distance-class homogeneous: P(x <-> y_" + std::to_string(i + 1) +
                           ") differs between sources " + std::to_string(options.source) + " and " +
                           std::to_string(other));
      }
    }
  }

  report.kind = truncated ? MomentKind::lower_bound : MomentKind::exact;
  report.poly = IntPolynomial(g.n_edges());
  for (const auto& term : report.per_class) {
    report.poly += term.poly.scaled(static_cast<std::int64_t>(term.n_s));
  }
  report.wall_seconds = seconds_since(start);
  return report;
}

MomentReport first_moment_at(const Graph& g, std::optional<std::size_t> cutoff, const IeOptions& options) {
  const auto start = Clock::now();
  require_source(g, options.source);
  const DistanceClasses dc = distance_classes(g, options.source);

  MomentReport report;
  report.solid = g.name();
  report.moment = 1;
  report.source = options.source;
  report.cutoff = cutoff;
  report.per_class.push_back(origin_term(g));
  report.poly = IntPolynomial::constant(g.n_edges(), 1);

  bool truncated = false;
  for (std::size_t s = 1; s < dc.classes.size(); ++s) {
    for (VertexId y : dc.classes[s]) {
      const PathFamily family = enumerate_paths(g, options.source, y, cutoff);
      truncated = truncated || family.truncated;
      ClassTerm term;
      term.s = s;
      term.n_s = 1;
      term.k_s = family.size();
      term.representative = y;
      term.path_lengths = family.lengths;
      if (family.paths.empty()) {
        term.poly = IntPolynomial(g.n_edges());
      } else {
        auto result = connection_polynomial(family, g.n_edges(), options);
        term.poly = std::move(result.poly);
        term.subsets_visited = result.subsets_visited;
      }
      report.subsets_visited += term.subsets_visited;
      report.poly += term.poly;
      report.per_class.push_back(std::move(term));
    }
  }
  report.kind = truncated ? MomentKind::lower_bound : MomentKind::exact;
  report.wall_seconds = seconds_since(start);
  return report;
}

namespace {

struct SecondMomentPlan {
  std::vector<PathFamily> singles;
  std::vector<PathFamily> pairs;
  std::uint64_t work = 0;
  bool feasible = true;
};

std::uint64_t lattice_size(std::size_t k) { return (std::uint64_t{1} << k) - 1; }

SecondMomentPlan plan_second_moment(const Graph& g, VertexId x) {
  SecondMomentPlan plan;
  for (VertexId y = 0; y < g.n_vertices(); ++y) {
    if (y == x) continue;
    plan.singles.push_back(enumerate_paths(g, x, y));
    if (plan.singles.back().size() > kMaxFamilySize) {
      plan.feasible = false;
      return plan;
    }
    plan.work += lattice_size(plan.singles.back().size());
  }
  for (VertexId y = 0; y < g.n_vertices(); ++y) {
    for (VertexId z = 0; z < g.n_vertices(); ++z) {
      if (y == x || z == x || y == z) continue;
      plan.pairs.push_back(enumerate_pair_events(g, x, y, z));
      if (plan.pairs.back().size() > kMaxFamilySize) {
        plan.feasible = false;
        return plan;
      }
      plan.work += lattice_size(plan.pairs.back().size());
    }
  }
  return plan;
}

}  // namespace

std::optional<std::uint64_t> second_moment_work(const Graph& g, VertexId source) {
  require_source(g, source);
  const auto plan = plan_second_moment(g, source);
  if (!plan.feasible) return std::nullopt;
  return plan.work;
}

MomentReport second_moment(const Graph& g, const IeOptions& options) {
  const auto start = Clock::now();
  require_source(g, options.source);
  const VertexId x = options.source;
  const auto plan = plan_second_moment(g, x);
  const std::string hint =
      "; the exhaustive oracle computes exact second moments instead (bondperc oracle --moment 2)";
  if (!plan.feasible) {
    throw BudgetExceeded("second moment of " + g.name() + " needs an event family larger than " +
                         std::to_string(kMaxFamilySize) + hint);
  }
  if (plan.work > options.second_moment_budget) {
    throw BudgetExceeded("second moment of " + g.name() + " needs " + std::to_string(plan.work) +
                         " subsets, over the budget of " + std::to_string(options.second_moment_budget) +
                         hint);
  }

  const DistanceClasses dc = distance_classes(g, x);
  std::vector<std::size_t> dist(g.n_vertices(), 0);
  for (std::size_t s = 0; s < dc.classes.size(); ++s)
    for (VertexId v : dc.classes[s]) dist[v] = s;

  MomentReport report;
  report.solid = g.name();
  report.moment = 2;
  report.kind = MomentKind::exact;
  report.source = x;
  report.poly = IntPolynomial::constant(g.n_edges(), 1);
  report.per_class.push_back(origin_term(g));

  for (const auto& family : plan.singles) {
    auto result = connection_polynomial(family, g.n_edges(), options);
    report.subsets_visited += result.subsets_visited;
    report.poly += result.poly.scaled(3);
    ClassTerm term;
    term.s = dist[family.targets.front()];
    term.n_s = 3;
    term.k_s = family.size();
    term.representative = family.targets.front();
    term.path_lengths = family.lengths;
    term.poly = std::move(result.poly);
    term.subsets_visited = result.subsets_visited;
    report.per_class.push_back(std::move(term));
  }
  for (const auto& family : plan.pairs) {
    auto result = connection_polynomial(family, g.n_edges(), options);
    report.subsets_visited += result.subsets_visited;
    report.poly += result.poly;
    report.pair_terms.push_back(
        {family.targets[0], family.targets[1], family.size(), std::move(result.poly), result.subsets_visited});
  }
  report.wall_seconds = seconds_since(start);
  return report;
}

nlohmann::ordered_json to_json(const MomentReport& report, bool include_timing) {
  nlohmann::ordered_json per_class = nlohmann::ordered_json::array();
  for (const auto& t : report.per_class) {
    per_class.push_back({{"s", t.s},
                         {"N_s", t.n_s},
                         {"K_s", t.k_s},
                         {"representative", t.representative},
                         {"subsets_visited", t.subsets_visited},
                         {"coeffs", t.poly.coeff_vector()}});
  }
  nlohmann::ordered_json out{{"solid", report.solid},
                     {"moment", report.moment},
                     {"kind", std::string(to_string(report.kind))},
                     {"source", report.source},
                     {"degree_bound", report.poly.degree_bound()},
                     {"coeffs", report.poly.coeff_vector()},
                     {"per_class", per_class},
                     {"subsets_visited", report.subsets_visited},
                     {"verification_subsets_visited", report.verification_subsets_visited}};
  if (include_timing) out["wall_seconds"] = report.wall_seconds;
  out["cutoff"] = report.cutoff ? nlohmann::ordered_json(*report.cutoff) : nlohmann::ordered_json(nullptr);
  if (report.moment == 2) {
    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    for (const auto& t : report.pair_terms) {
      pairs.push_back({{"y", t.y}, {"z", t.z}, {"K", t.k}, {"coeffs", t.poly.coeff_vector()}});
    }
    out["pair_terms"] = pairs;
  }
  return out;
}

}  // namespace bondperc
