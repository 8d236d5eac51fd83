#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "bondperc/graph.hpp"
#include "bondperc/polynomial.hpp"

namespace bondperc {

// counts(j, s): number of edge configurations with exactly j open edges in
// which the open cluster of the source has s vertices.
class ClusterSizeTally {
 public:
  ClusterSizeTally(std::size_t n_edges, std::size_t n_vertices);

  std::size_t n_edges() const noexcept { return n_edges_; }
  std::size_t n_vertices() const noexcept { return n_vertices_; }
  std::uint64_t at(std::size_t j, std::size_t s) const { return counts_.at(j * (n_vertices_ + 1) + s); }
  std::uint64_t& at(std::size_t j, std::size_t s) { return counts_.at(j * (n_vertices_ + 1) + s); }
  std::uint64_t total() const;

  void merge(const ClusterSizeTally& other);
  friend bool operator==(const ClusterSizeTally&, const ClusterSizeTally&) = default;

 private:
  std::size_t n_edges_;
  std::size_t n_vertices_;
  std::vector<std::uint64_t> counts_;
};

struct OracleOptions {
  unsigned threads = 0;          // 0: default_thread_count()
  std::size_t max_edges = 30;    // 2^max_edges configurations at most
  std::size_t split_edges = 6;   // configurations fanned out as 2^split tasks
};

// Visits all 2^|E| configurations. Edges are decided one at a time by a
// depth-first search that keeps a union-find of the open edges decided so
// far and rolls it back on the way up; each leaf is one configuration.
// Throws BudgetExceeded when |E| > options.max_edges, InvalidInput when g is
// disconnected or the source is invalid.
ClusterSizeTally exhaustive_tally(const Graph& g, VertexId source, const OracleOptions& options = {});

// Reference tally: for every bitmask in natural order, a fresh BFS over the
// open edges. Quadratically slower; used to check exhaustive_tally.
ClusterSizeTally exhaustive_tally_bfs(const Graph& g, VertexId source);

// sum_{j,s} s^order counts(j,s) p^j (1-p)^(|E|-j) as an exact polynomial.
IntPolynomial tally_to_moment_polynomial(const ClusterSizeTally& tally, int order);

// CSV "j,s,count", nonzero rows only.
void write_tally_csv(std::ostream& out, const ClusterSizeTally& tally);

}  // namespace bondperc
