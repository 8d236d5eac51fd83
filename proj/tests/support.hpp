#pragma once

// Brute-force helpers shared by the unit tests. Nothing here calls the
// inclusion-exclusion engine or the oracle, so they can serve as
// independent references for both.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "bondperc/graph.hpp"
#include "bondperc/paths.hpp"
#include "bondperc/polynomial.hpp"

namespace bondperc::testing {

// P(some member of `family` is fully open), by summing over every state of
// the edges the family touches.
inline IntPolynomial union_event_polynomial(std::span<const EdgeSet> family, std::size_t n_edges) {
  EdgeSet touched;
  for (EdgeSet s : family) touched |= s;
  const auto ids = touched.ids();
  const std::size_t m = ids.size();
  IntPolynomial poly(n_edges);
  std::vector<std::int64_t> hits(m + 1, 0);
  for (std::uint64_t local = 0; local < (std::uint64_t{1} << m); ++local) {
    EdgeSet open;
    for (std::size_t i = 0; i < m; ++i)
      if ((local >> i) & 1U) open.insert(ids[i]);
    bool any = false;
    for (EdgeSet s : family) any = any || s.subset_of(open);
    if (any) ++hits[open.size()];
  }
  for (std::size_t j = 0; j <= m; ++j)
    if (hits[j]) poly.add_bernstein(j, m, hits[j]);
  return poly;
}

// P(every vertex of `targets` is joined to x by open edges), from all 2^|E|
// configurations with a flood fill each time.
inline IntPolynomial joint_connection_bruteforce(const Graph& g, VertexId x, std::vector<VertexId> targets) {
  const std::size_t m = g.n_edges();
  std::vector<std::int64_t> hits(m + 1, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<bool> seen(g.n_vertices(), false);
    std::vector<VertexId> stack{x};
    seen[x] = true;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (const auto& inc : g.neighbors(v)) {
        if (((mask >> inc.edge) & 1U) && !seen[inc.neighbor]) {
          seen[inc.neighbor] = true;
          stack.push_back(inc.neighbor);
        }
      }
    }
    bool all = true;
    for (VertexId t : targets) all = all && seen[t];
    if (all) ++hits[static_cast<std::size_t>(__builtin_popcountll(mask))];
  }
  IntPolynomial poly(m);
  for (std::size_t j = 0; j <= m; ++j)
    if (hits[j]) poly.add_bernstein(j, m, hits[j]);
  return poly;
}

inline Graph path_graph(std::size_t n) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::from_edges(n, edges, "path");
}

inline Graph cycle_graph(std::size_t n) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId i = 0; i < n; ++i) edges.emplace_back(i, static_cast<VertexId>((i + 1) % n));
  return Graph::from_edges(n, edges, "cycle");
}

// Spanning tree plus random extra edges; connected, at most `m` edges.
inline Graph random_connected_graph(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId v = 1; v < n; ++v) {
    edges.emplace_back(static_cast<VertexId>(rng() % v), v);
  }
  for (std::size_t tries = 0; edges.size() < m && tries < 100; ++tries) {
    auto u = static_cast<VertexId>(rng() % n), v = static_cast<VertexId>(rng() % n);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    bool dup = false;
    for (auto [a, b] : edges) dup = dup || ((a == u && b == v) || (a == v && b == u));
    if (!dup) edges.emplace_back(u, v);
  }
  return Graph::from_edges(n, edges, "random");
}

}  // namespace bondperc::testing
