// bondperc: exact cluster-size moments for bond percolation on small regular graphs.
//
//   bondperc moments  --solid cube --moment 1
//   bondperc oracle   --solid octahedron --moment 2 --tally-out tally.csv
//   bondperc bounds   --solid cube --p 0.5
//   bondperc simulate --solid icosahedron --p 0.5 --samples 100000 --seed 7
//   bondperc paths    --solid octahedron --from-distance 2
//   bondperc verify
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input,
// 3 refused (work budget), 4 other error.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bondperc/acceptance.hpp"
#include "bondperc/bounds.hpp"
#include "bondperc/error.hpp"
#include "bondperc/graph.hpp"
#include "bondperc/inclusion_exclusion.hpp"
#include "bondperc/montecarlo.hpp"
#include "bondperc/oracle.hpp"
#include "bondperc/paths.hpp"

namespace {

using namespace bondperc;
using json = nlohmann::ordered_json;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitRefused = 3;
constexpr int kExitOther = 4;

// Largest edge count the oracle runs without --long.
constexpr std::size_t kShortOracleEdges = 20;

struct RunSpec {
  std::string solid;
  std::string graph_file;
  std::vector<double> p_values;
  std::vector<double> grid;  // start stop step
  int moment = 1;
  std::optional<std::size_t> cutoff;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  std::string source_policy = "fixed";
  VertexId source = 0;
  std::string format;
  std::string output;
  unsigned threads = 0;
  bool long_run = false;
  bool per_vertex = false;
  bool timing = false;
  std::string tally_out;
  std::optional<VertexId> from_distance;
  std::optional<VertexId> to;
  std::optional<VertexId> and_vertex;
  bool skip_long = false;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

Graph input_graph(const RunSpec& spec) {
  if (spec.solid.empty() == spec.graph_file.empty()) {
    throw InvalidInput("exactly one of --solid or --graph is required");
  }
  return spec.solid.empty() ? load_graph_file(spec.graph_file) : make_solid(spec.solid);
}

std::vector<double> p_grid(const RunSpec& spec, std::vector<double> fallback) {
  std::vector<double> ps = spec.p_values;
  if (!spec.grid.empty()) {
    const double start = spec.grid[0], stop = spec.grid[1], step = spec.grid[2];
    if (!(step > 0.0) || stop < start) throw InvalidInput("--grid needs start <= stop and step > 0");
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    // snap to 12 decimals so 0.05 steps print as 0.15, not 0.15000000000000002
    for (long i = 0; i <= n; ++i) ps.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
  }
  if (ps.empty()) ps = std::move(fallback);
  for (double p : ps) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("p values must lie in [0, 1], got " + fmt(p));
  }
  return ps;
}

std::vector<double> default_grid() {
  std::vector<double> ps;
  for (int i = 0; i <= 20; ++i) ps.push_back(i / 20.0);
  return ps;
}

// Writes to --output when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InvalidInput("cannot open output file '" + path + "'");
    }
  }
  std::ostream& out() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

IeOptions ie_options(const RunSpec& spec) {
  IeOptions o;
  o.threads = spec.threads;
  o.source = spec.source;
  return o;
}

int cmd_moments(const RunSpec& spec) {
  const Graph g = input_graph(spec);
  if (spec.moment != 1 && spec.moment != 2) throw InvalidInput("--moment must be 1 or 2");
  if (spec.moment == 2 && spec.cutoff) throw InvalidInput("--cutoff applies to the first moment only");
  MomentReport report;
  if (spec.moment == 1) {
    report = spec.per_vertex ? first_moment_at(g, spec.cutoff, ie_options(spec))
                             : first_moment(g, spec.cutoff, ie_options(spec));
  } else {
    report = second_moment(g, ie_options(spec));
  }
  const auto ps = p_grid(spec, default_grid());
  Sink sink(spec.output);
  if (spec.format == "csv") {
    sink.out() << "# " << report.solid << " moment " << report.moment << ' ' << to_string(report.kind) << ' '
               << report.poly.to_tuple_string() << "\np,value\n";
    for (double p : ps) sink.out() << fmt(p) << ',' << fmt(report.poly.eval(p)) << '\n';
    return 0;
  }
  json out = to_json(report, spec.timing);
  out["grid"] = json::array();
  for (double p : ps) out["grid"].push_back({{"p", p}, {"value", report.poly.eval(p)}});
  sink.out() << out.dump(2) << '\n';
  return 0;
}

ClusterSizeTally run_oracle(const Graph& g, const RunSpec& spec) {
  if (g.n_edges() > kShortOracleEdges && !spec.long_run) {
    throw BudgetExceeded(g.name() + " has " + std::to_string(g.n_edges()) + " edges (2^" +
                         std::to_string(g.n_edges()) + " configurations); pass --long to run it");
  }
  OracleOptions o;
  o.threads = spec.threads;
  return exhaustive_tally(g, spec.source, o);
}

int cmd_oracle(const RunSpec& spec) {
  const Graph g = input_graph(spec);
  if (spec.moment != 1 && spec.moment != 2) throw InvalidInput("--moment must be 1 or 2");
  const auto tally = run_oracle(g, spec);
  if (!spec.tally_out.empty()) {
    std::ofstream f(spec.tally_out);
    if (!f) throw InvalidInput("cannot open tally file '" + spec.tally_out + "'");
    write_tally_csv(f, tally);
  }
  const IntPolynomial poly = tally_to_moment_polynomial(tally, spec.moment);
  Sink sink(spec.output);
  if (spec.format == "csv") {
    write_tally_csv(sink.out(), tally);
    return 0;
  }
  json out{{"solid", g.name()},
           {"moment", spec.moment},
           {"kind", "exact"},
           {"source", spec.source},
           {"configurations", tally.total()},
           {"polynomial", json{{"degree_bound", poly.degree_bound()}, {"coeffs", poly.coeff_vector()}}},
           {"coeffs", poly.coeff_vector()}};
  sink.out() << out.dump(2) << '\n';
  return 0;
}

int cmd_bounds(const RunSpec& spec) {
  const Graph g = input_graph(spec);
  const std::size_t degree = validate_regular(g);
  const auto ps = p_grid(spec, default_grid());
  std::optional<std::pair<IntPolynomial, IntPolynomial>> exact;
  if (g.n_edges() <= 12 || spec.long_run) {
    const auto tally = run_oracle(g, spec);
    exact.emplace(tally_to_moment_polynomial(tally, 1), tally_to_moment_polynomial(tally, 2));
  }
  Sink sink(spec.output);
  if (spec.format == "json") {
    json rows = json::array();
    for (double p : ps) {
      const auto r = evaluate_bounds(degree, g.n_vertices(), p);
      json row{{"p", p},
               {"e_s_branching", r.e_s_branching},
               {"e_s2_branching", r.e_s2_branching},
               {"e_s_branching_raw", r.e_s_branching_raw},
               {"e_s2_branching_raw", r.e_s2_branching_raw},
               {"e_s_plarge", r.e_s_plarge},
               {"e_s2_plarge", r.e_s2_plarge}};
      row["e_s_exact"] = exact ? json(exact->first.eval(p)) : json(nullptr);
      row["e_s2_exact"] = exact ? json(exact->second.eval(p)) : json(nullptr);
      rows.push_back(row);
    }
    sink.out() << json{{"solid", g.name()}, {"D", degree}, {"N", g.n_vertices()}, {"rows", rows}}.dump(2) << '\n';
    return 0;
  }
  auto& os = sink.out();
  os << "p,e_s_branching,e_s2_branching,e_s_plarge,e_s2_plarge,e_s_exact,e_s2_exact,"
        "e_s_branching_raw,e_s2_branching_raw\n";
  for (double p : ps) {
    const auto r = evaluate_bounds(degree, g.n_vertices(), p);
    os << fmt(p) << ',' << fmt(r.e_s_branching) << ',' << fmt(r.e_s2_branching) << ',' << fmt(r.e_s_plarge) << ','
       << fmt(r.e_s2_plarge) << ',' << (exact ? fmt(exact->first.eval(p)) : "") << ','
       << (exact ? fmt(exact->second.eval(p)) : "") << ',' << fmt(r.e_s_branching_raw) << ','
       << fmt(r.e_s2_branching_raw) << '\n';
  }
  return 0;
}

int cmd_simulate(const RunSpec& spec) {
  const Graph g = input_graph(spec);
  const auto ps = p_grid(spec, default_grid());
  SimConfig cfg;
  cfg.samples = spec.samples;
  cfg.seed = spec.seed;
  cfg.source = spec.source;
  cfg.threads = spec.threads;
  if (spec.source_policy == "uniform") {
    cfg.policy = SourcePolicy::uniform;
  } else if (spec.source_policy != "fixed") {
    throw InvalidInput("--source-policy must be fixed or uniform");
  }
  Sink sink(spec.output);
  json rows = json::array();
  if (spec.format != "json") sink.out() << "p,samples,mean_S,se_S,mean_S2,se_S2,seed\n";
  for (double p : ps) {
    cfg.p = p;
    const auto r = sample_cluster_size(g, cfg);
    if (spec.format == "json") {
      rows.push_back({{"p", p},
                      {"samples", r.samples},
                      {"mean_S", r.mean_s},
                      {"se_S", r.se_s},
                      {"mean_S2", r.mean_s2},
                      {"se_S2", r.se_s2},
                      {"seed", r.seed}});
    } else {
      sink.out() << fmt(p) << ',' << r.samples << ',' << fmt(r.mean_s) << ',' << fmt(r.se_s) << ','
                 << fmt(r.mean_s2) << ',' << fmt(r.se_s2) << ',' << r.seed << '\n';
    }
  }
  if (spec.format == "json") sink.out() << json{{"solid", g.name()}, {"rows", rows}}.dump(2) << '\n';
  return 0;
}

int cmd_paths(const RunSpec& spec) {
  const Graph g = input_graph(spec);
  const VertexId x = spec.source;
  VertexId y = 0;
  if (spec.to) {
    y = *spec.to;
  } else if (spec.from_distance) {
    const auto dc = distance_classes(g, x);
    if (*spec.from_distance == 0 || *spec.from_distance >= dc.classes.size()) {
      throw InvalidInput("no vertex at distance " + std::to_string(*spec.from_distance) + " from " +
                         std::to_string(x));
    }
    y = dc.classes[*spec.from_distance].front();
  } else {
    throw InvalidInput("paths needs --to or --from-distance");
  }
  const PathFamily family = spec.and_vertex ? enumerate_pair_events(g, x, y, *spec.and_vertex, spec.cutoff)
                                            : enumerate_paths(g, x, y, spec.cutoff);
  Sink sink(spec.output);
  if (spec.format == "json") {
    json paths = json::array();
    for (std::size_t i = 0; i < family.size(); ++i) {
      paths.push_back({{"edges", family.paths[i].ids()}, {"length", family.lengths[i]}});
    }
    json out{{"x", x}, {"targets", family.targets}, {"count", family.size()}, {"truncated", family.truncated},
             {"paths", paths}};
    out["cutoff"] = spec.cutoff ? json(*spec.cutoff) : json(nullptr);
    sink.out() << out.dump(2) << '\n';
    return 0;
  }
  auto& os = sink.out();
  os << x << ' ';
  for (std::size_t i = 0; i < family.targets.size(); ++i) os << (i ? "," : "") << family.targets[i];
  os << ' ' << family.size() << ' ' << (spec.cutoff ? std::to_string(*spec.cutoff) : "none") << '\n';
  for (EdgeSet path : family.paths) os << path.to_string() << '\n';
  return 0;
}

int cmd_verify(const RunSpec& spec) {
  acceptance::Options o;
  o.include_long = !spec.skip_long;
  o.threads = spec.threads;
  Sink sink(spec.output);
  const auto results = acceptance::run_all(o, &sink.out());
  const bool ok = acceptance::all_passed(results);
  sink.out() << (ok ? "all criteria passed" : "some criteria FAILED") << '\n';
  return ok ? 0 : kExitVerifyFailed;
}

void add_input_options(CLI::App* cmd, RunSpec& spec) {
  auto* solid = cmd->add_option("--solid", spec.solid, "tetrahedron | cube | octahedron | dodecahedron | icosahedron");
  auto* graph = cmd->add_option("--graph", spec.graph_file, "graph file: 'N M' then M lines 'u v'");
  solid->excludes(graph);
  cmd->add_option("--source", spec.source, "source vertex (default 0)");
  cmd->add_option("--threads", spec.threads, "worker threads (default $BONDPERC_THREADS or all cores)");
  cmd->add_option("--output,-o", spec.output, "write to this file instead of stdout");
}

void add_grid_options(CLI::App* cmd, RunSpec& spec) {
  cmd->add_option("--p", spec.p_values, "explicit p values")->delimiter(',');
  cmd->add_option("--grid", spec.grid, "p grid: start stop step")->expected(3);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact cluster-size moments for bond percolation on regular graphs"};
  app.require_subcommand(1);
  RunSpec spec;

  auto* moments = app.add_subcommand("moments", "inclusion-exclusion moment polynomial");
  add_input_options(moments, spec);
  add_grid_options(moments, spec);
  moments->add_option("--moment", spec.moment, "1 or 2")->default_val(1);
  moments->add_option("--cutoff", spec.cutoff, "only paths of at most this length (lower bound)");
  moments->add_flag("--per-vertex", spec.per_vertex, "one path family per vertex, no homogeneity assumption");
  moments->add_option("--format", spec.format, "json | csv")->default_val("json");
  moments->add_flag("--timing", spec.timing, "include wall_seconds in the JSON report");

  auto* oracle = app.add_subcommand("oracle", "exhaustive enumeration of all edge configurations");
  add_input_options(oracle, spec);
  oracle->add_option("--moment", spec.moment, "1 or 2")->default_val(1);
  oracle->add_flag("--long", spec.long_run, "allow graphs with more than 20 edges");
  oracle->add_option("--tally-out", spec.tally_out, "also write the j,s,count tally CSV here");
  oracle->add_option("--format", spec.format, "json | csv (csv prints the tally)")->default_val("json");

  auto* bounds = app.add_subcommand("bounds", "branching and large-p upper bounds over a p grid");
  add_input_options(bounds, spec);
  add_grid_options(bounds, spec);
  bounds->add_flag("--long", spec.long_run, "compute exact columns even for more than 12 edges");
  bounds->add_option("--format", spec.format, "csv | json")->default_val("csv");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates of E(S) and E(S^2)");
  add_input_options(simulate, spec);
  add_grid_options(simulate, spec);
  simulate->add_option("--samples", spec.samples, "realizations per p")->default_val(100000);
  simulate->add_option("--seed", spec.seed, "64-bit seed")->default_val(1);
  simulate->add_option("--source-policy", spec.source_policy, "fixed | uniform")->default_val("fixed");
  simulate->add_option("--format", spec.format, "csv | json")->default_val("csv");

  auto* paths = app.add_subcommand("paths", "list self-avoiding paths (or pair events)");
  add_input_options(paths, spec);
  paths->add_option("--to", spec.to, "target vertex");
  paths->add_option("--from-distance", spec.from_distance, "target = smallest vertex at this distance");
  paths->add_option("--and", spec.and_vertex, "second target: list minimal pair events instead");
  paths->add_option("--cutoff", spec.cutoff, "maximum path length");
  paths->add_option("--format", spec.format, "text | json")->default_val("text");

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_flag("--skip-long", spec.skip_long, "skip the 2^30-configuration oracle runs");
  verify->add_option("--threads", spec.threads, "worker threads");
  verify->add_option("--output,-o", spec.output, "write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and friends exit 0; every other parse problem is bad input
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*moments) return cmd_moments(spec);
    if (*oracle) return cmd_oracle(spec);
    if (*bounds) return cmd_bounds(spec);
    if (*simulate) return cmd_simulate(spec);
    if (*paths) return cmd_paths(spec);
    if (*verify) return cmd_verify(spec);
  } catch (const BudgetExceeded& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kExitRefused;
  } catch (const IrregularGraph& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOther;
  }
  return kExitOther;
}
