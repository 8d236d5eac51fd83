#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bondperc/graph.hpp"

namespace bondperc {

// Subset of edge ids as a 64-bit mask. Bit e set <=> edge e in the set.
class EdgeSet {
 public:
  constexpr EdgeSet() = default;
  constexpr explicit EdgeSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr EdgeSet single(EdgeId e) { return EdgeSet(std::uint64_t{1} << e); }
  // Edges 0..n-1.
  static constexpr EdgeSet all(std::size_t n) {
    return EdgeSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const noexcept { return bits_; }
  constexpr std::size_t size() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr bool contains(EdgeId e) const noexcept { return (bits_ >> e) & 1U; }
  constexpr bool subset_of(EdgeSet other) const noexcept { return (bits_ & ~other.bits_) == 0; }

  constexpr EdgeSet& insert(EdgeId e) noexcept {
    bits_ |= std::uint64_t{1} << e;
    return *this;
  }
  constexpr EdgeSet& operator|=(EdgeSet o) noexcept {
    bits_ |= o.bits_;
    return *this;
  }
  friend constexpr EdgeSet operator|(EdgeSet a, EdgeSet b) noexcept { return EdgeSet(a.bits_ | b.bits_); }
  friend constexpr EdgeSet operator&(EdgeSet a, EdgeSet b) noexcept { return EdgeSet(a.bits_ & b.bits_); }
  friend constexpr bool operator==(EdgeSet, EdgeSet) = default;
  friend constexpr auto operator<=>(EdgeSet, EdgeSet) = default;

  std::vector<EdgeId> ids() const;
  // "3,7,11"
  std::string to_string() const;

 private:
  std::uint64_t bits_ = 0;
};

// Either the self-avoiding paths from `source` to one target, or (for pair
// families) the minimal unions of a path to each of two targets.
struct PathFamily {
  VertexId source = 0;
  std::vector<VertexId> targets;
  std::vector<EdgeSet> paths;
  std::vector<std::size_t> lengths;  // edge counts, parallel to `paths`
  std::optional<std::size_t> cutoff;
  // True when the cutoff removed at least one path (the family then only
  // yields a lower bound on the connection probability).
  bool truncated = false;

  std::size_t size() const noexcept { return paths.size(); }
};

// All self-avoiding paths x -> y of length <= cutoff, in lexicographic order
// of their vertex sequences.
PathFamily enumerate_paths(const Graph& g, VertexId x, VertexId y,
                           std::optional<std::size_t> cutoff = std::nullopt);

// Vertex sequences matching enumerate_paths (same order).
std::vector<std::vector<VertexId>> enumerate_vertex_paths(const Graph& g, VertexId x, VertexId y,
                                                          std::optional<std::size_t> cutoff = std::nullopt);

// True when some self-avoiding path x -> y is longer than `length`.
bool has_path_longer_than(const Graph& g, VertexId x, VertexId y, std::size_t length);

// Drops duplicates and every set that strictly contains another member.
// Result is sorted by (size, bits).
std::vector<EdgeSet> minimalize(std::vector<EdgeSet> sets);

// Minimal events {pi_a U pi_b} with pi_a: x -> y and pi_b: x -> z.
PathFamily enumerate_pair_events(const Graph& g, VertexId x, VertexId y, VertexId z,
                                 std::optional<std::size_t> cutoff = std::nullopt);

// Walks the edge set: true iff it is exactly one self-avoiding path from x to y.
bool is_self_avoiding_path(const Graph& g, EdgeSet edges, VertexId x, VertexId y);

// True iff x, y and z are all in one connected component of the subgraph
// formed by `edges`.
bool connects_all(const Graph& g, EdgeSet edges, VertexId x, VertexId y, VertexId z);

}  // namespace bondperc
