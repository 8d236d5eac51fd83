#include "bondperc/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <ostream>

#include "bondperc/error.hpp"
#include "bondperc/parallel.hpp"

namespace bondperc {

ClusterSizeTally::ClusterSizeTally(std::size_t n_edges, std::size_t n_vertices)
    : n_edges_(n_edges), n_vertices_(n_vertices), counts_((n_edges + 1) * (n_vertices + 1), 0) {}

std::uint64_t ClusterSizeTally::total() const {
  std::uint64_t sum = 0;
  for (auto c : counts_) sum += c;
  return sum;
}

void ClusterSizeTally::merge(const ClusterSizeTally& other) {
  if (other.n_edges_ != n_edges_ || other.n_vertices_ != n_vertices_) {
    throw InvalidInput("tally shapes differ");
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
}

namespace {

void require_oracle_input(const Graph& g, VertexId source, std::size_t max_edges) {
  if (!g.has_vertex(source)) throw InvalidInput("source vertex out of range");
  if (g.n_edges() > max_edges) {
    throw BudgetExceeded("exhaustive oracle refuses " + std::to_string(g.n_edges()) + " edges (limit " +
                         std::to_string(max_edges) + ", i.e. 2^" + std::to_string(max_edges) +
                         " configurations)");
  }
  if (!g.is_connected()) throw InvalidInput("graph is disconnected");
}

// Union-find with union by size and no path compression, so every union can
// be undone by restoring one parent and one size.
class RollbackTally {
 public:
  RollbackTally(const Graph& g, VertexId source, std::size_t n_free)
      : source_(source), n_free_(n_free), tally_(g.n_edges(), g.n_vertices()) {
    for (EdgeId e = 0; e < g.n_edges(); ++e) {
      auto [u, v] = g.endpoints(e);
      ends_[e] = {static_cast<std::uint8_t>(u), static_cast<std::uint8_t>(v)};
    }
    reset();
  }

  void reset() {
    for (std::size_t v = 0; v < parent_.size(); ++v) {
      parent_[v] = static_cast<std::uint8_t>(v);
      size_[v] = 1;
    }
  }

  // Opens edge e permanently (used for the task prefix).
  void open(EdgeId e) {
    const auto a = find(ends_[e][0]);
    const auto b = find(ends_[e][1]);
    if (a != b) link(a, b);
  }

  void run(std::size_t open_so_far) { descend(0, open_so_far); }
  const ClusterSizeTally& tally() const { return tally_; }

 private:
  std::uint8_t find(std::uint8_t v) const {
    while (parent_[v] != v) v = parent_[v];
    return v;
  }

  // Returns the root that was attached, for undo.
  std::uint8_t link(std::uint8_t a, std::uint8_t b) {
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] = static_cast<std::uint8_t>(size_[a] + size_[b]);
    return b;
  }

  void unlink(std::uint8_t child) {
    const std::uint8_t root = parent_[child];
    size_[root] = static_cast<std::uint8_t>(size_[root] - size_[child]);
    parent_[child] = child;
  }

  void descend(std::size_t e, std::size_t open_count) {
    if (e == n_free_) {
      ++tally_.at(open_count, size_[find(source_)]);
      return;
    }
    descend(e + 1, open_count);
    const auto a = find(ends_[e][0]);
    const auto b = find(ends_[e][1]);
    if (a == b) {
      descend(e + 1, open_count + 1);
    } else {
      const auto child = link(a, b);
      descend(e + 1, open_count + 1);
      unlink(child);
    }
  }

  std::uint8_t source_;
  std::size_t n_free_;
  std::array<std::array<std::uint8_t, 2>, kMaxEdges> ends_{};
  std::array<std::uint8_t, kMaxEdges + 1> parent_{};
  std::array<std::uint8_t, kMaxEdges + 1> size_{};
  ClusterSizeTally tally_;
};

}  // namespace

ClusterSizeTally exhaustive_tally(const Graph& g, VertexId source, const OracleOptions& options) {
  require_oracle_input(g, source, options.max_edges);
  if (g.n_vertices() > kMaxEdges + 1) throw InvalidInput("too many vertices for the oracle");
  const std::size_t m = g.n_edges();
  const std::size_t split = std::min(m, options.split_edges);
  const std::size_t n_free = m - split;
  const std::size_t n_tasks = std::size_t{1} << split;
  const unsigned threads = resolve_threads(options.threads);

  std::vector<ClusterSizeTally> per_task(n_tasks, ClusterSizeTally(m, g.n_vertices()));
  // Task t fixes the states of the last `split` edges from the bits of t.
  parallel_tasks(n_tasks, threads, [&](std::size_t task, unsigned) {
    RollbackTally walker(g, source, n_free);
    std::size_t open_count = 0;
    for (std::size_t i = 0; i < split; ++i) {
      if ((task >> i) & 1U) {
        walker.open(static_cast<EdgeId>(n_free + i));
        ++open_count;
      }
    }
    walker.run(open_count);
    per_task[task] = walker.tally();
  });

  ClusterSizeTally total(m, g.n_vertices());
  for (const auto& t : per_task) total.merge(t);
  return total;
}

ClusterSizeTally exhaustive_tally_bfs(const Graph& g, VertexId source) {
  require_oracle_input(g, source, 30);
  const std::size_t m = g.n_edges();
  ClusterSizeTally tally(m, g.n_vertices());
  std::vector<VertexId> stack;
  std::vector<bool> seen(g.n_vertices());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::fill(seen.begin(), seen.end(), false);
    seen[source] = true;
    stack.assign(1, source);
    std::size_t size = 1;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (const auto& inc : g.neighbors(v)) {
        if (((mask >> inc.edge) & 1U) && !seen[inc.neighbor]) {
          seen[inc.neighbor] = true;
          ++size;
          stack.push_back(inc.neighbor);
        }
      }
    }
    ++tally.at(static_cast<std::size_t>(std::popcount(mask)), size);
  }
  return tally;
}

IntPolynomial tally_to_moment_polynomial(const ClusterSizeTally& tally, int order) {
  if (order != 1 && order != 2) throw InvalidInput("moment order must be 1 or 2");
  const std::size_t m = tally.n_edges();
  IntPolynomial poly(m);
  for (std::size_t j = 0; j <= m; ++j) {
    std::int64_t weight = 0;
    for (std::size_t s = 1; s <= tally.n_vertices(); ++s) {
      const auto count = tally.at(j, s);
      if (count == 0) continue;
      std::int64_t power = static_cast<std::int64_t>(s);
      if (order == 2) power = checked_mul(power, static_cast<std::int64_t>(s));
      weight = checked_add(weight, checked_mul(static_cast<std::int64_t>(count), power));
    }
    if (weight != 0) poly.add_bernstein(j, m, weight);
  }
  return poly;
}

void write_tally_csv(std::ostream& out, const ClusterSizeTally& tally) {
  out << "j,s,count\n";
  for (std::size_t j = 0; j <= tally.n_edges(); ++j)
    for (std::size_t s = 0; s <= tally.n_vertices(); ++s)
      if (tally.at(j, s) != 0) out << j << ',' << s << ',' << tally.at(j, s) << '\n';
}

}  // namespace bondperc
