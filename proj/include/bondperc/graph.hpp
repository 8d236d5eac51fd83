#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bondperc {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

// Edge sets are stored in a single machine word.
inline constexpr std::size_t kMaxEdges = 64;

struct Incidence {
  VertexId neighbor;
  EdgeId edge;
};

// Finite simple undirected graph with canonical edge ids 0..n_edges-1.
// Edge endpoints are stored lower id first; adjacency lists are sorted by
// neighbor id. Immutable once built.
class Graph {
 public:
  // Validates: endpoints in range, no self-loops, no repeated pair,
  // at most kMaxEdges edges. Edge id = position in `edges`.
  static Graph from_edges(std::size_t n_vertices,
                          std::vector<std::pair<VertexId, VertexId>> edges,
                          std::string name = {});

  std::size_t n_vertices() const noexcept { return adjacency_.size(); }
  std::size_t n_edges() const noexcept { return endpoints_.size(); }
  const std::string& name() const noexcept { return name_; }

  std::span<const Incidence> neighbors(VertexId v) const;
  std::size_t degree_of(VertexId v) const { return neighbors(v).size(); }
  std::pair<VertexId, VertexId> endpoints(EdgeId e) const;
  std::optional<EdgeId> edge_between(VertexId u, VertexId v) const;

  bool is_connected() const;
  bool has_vertex(VertexId v) const noexcept { return v < n_vertices(); }

 private:
  Graph() = default;

  std::string name_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::vector<std::pair<VertexId, VertexId>> endpoints_;
};

enum class Solid { tetrahedron, cube, octahedron, dodecahedron, icosahedron };

inline constexpr Solid kAllSolids[] = {Solid::tetrahedron, Solid::cube, Solid::octahedron,
                                       Solid::dodecahedron, Solid::icosahedron};

std::string_view solid_name(Solid s);
// Throws InvalidInput for anything but the five lowercase names.
Solid parse_solid(std::string_view name);

// Canonical labelings (edge ids are the lexicographic order of the sorted
// endpoint pairs):
//   tetrahedron   K4 on 0..3.
//   cube          vertices are 3-bit words, edges join words at Hamming distance 1.
//   octahedron    K6 minus the matching {i, i+3}.
//   dodecahedron  generalized Petersen graph GP(10,2): outer cycle 0..9,
//                 spokes i -- i+10, inner edges i+10 -- (i+2 mod 10)+10.
//   icosahedron   apex 0, upper ring 1..5, lower ring 6..10, apex 11; upper
//                 vertex i joins lower 5+i and 5+(i mod 5)+1.
Graph make_solid(Solid s);
Graph make_solid(std::string_view name);

// Common degree, or IrregularGraph naming the first vertex whose degree
// differs from the most frequent one.
std::size_t validate_regular(const Graph& g);

struct DistanceClasses {
  VertexId source = 0;
  std::vector<std::vector<VertexId>> classes;  // classes[s] sorted by id
  std::vector<std::size_t> sizes;
  std::size_t radius = 0;  // eccentricity of source
};

// BFS layers from `source`. Throws InvalidInput on a disconnected graph.
DistanceClasses distance_classes(const Graph& g, VertexId source);

// Graph file: first line "N M", then M lines "u v" with 0 <= u < v < N.
Graph read_graph(std::istream& in, std::string name = "graph");
Graph load_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);

}  // namespace bondperc
