#include "bondperc/graph.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <sstream>

#include "bondperc/error.hpp"

namespace bondperc {

Graph Graph::from_edges(std::size_t n_vertices, std::vector<std::pair<VertexId, VertexId>> edges,
                        std::string name) {
  if (n_vertices == 0) throw InvalidInput("graph must have at least one vertex");
  if (edges.size() > kMaxEdges) {
    throw InvalidInput("graph has " + std::to_string(edges.size()) + " edges; at most " +
                       std::to_string(kMaxEdges) + " are supported");
  }
  Graph g;
  g.name_ = std::move(name);
  g.adjacency_.resize(n_vertices);
  g.endpoints_.reserve(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [u, v] = edges[e];
    if (u >= n_vertices || v >= n_vertices) {
      throw InvalidInput("edge " + std::to_string(e) + " has an endpoint out of range");
    }
    if (u == v) throw InvalidInput("edge " + std::to_string(e) + " is a self-loop");
    if (u > v) std::swap(u, v);
    for (const auto& inc : g.adjacency_[u]) {
      if (inc.neighbor == v) {
        throw InvalidInput("edge " + std::to_string(e) + " repeats the pair (" +
                           std::to_string(u) + ", " + std::to_string(v) + ")");
      }
    }
    const auto id = static_cast<EdgeId>(e);
    g.endpoints_.emplace_back(u, v);
    g.adjacency_[u].push_back({v, id});
    g.adjacency_[v].push_back({u, id});
  }
  for (auto& list : g.adjacency_) {
    std::sort(list.begin(), list.end(),
              [](const Incidence& a, const Incidence& b) { return a.neighbor < b.neighbor; });
  }
  return g;
}

std::span<const Incidence> Graph::neighbors(VertexId v) const {
  if (!has_vertex(v)) throw InvalidInput("vertex " + std::to_string(v) + " out of range");
  return adjacency_[v];
}

std::pair<VertexId, VertexId> Graph::endpoints(EdgeId e) const {
  if (e >= n_edges()) throw InvalidInput("edge " + std::to_string(e) + " out of range");
  return endpoints_[e];
}

std::optional<EdgeId> Graph::edge_between(VertexId u, VertexId v) const {
  for (const auto& inc : neighbors(u)) {
    if (inc.neighbor == v) return inc.edge;
  }
  return std::nullopt;
}

bool Graph::is_connected() const {
  std::vector<bool> seen(n_vertices(), false);
  std::vector<VertexId> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (const auto& inc : adjacency_[v]) {
      if (!seen[inc.neighbor]) {
        seen[inc.neighbor] = true;
        ++reached;
        stack.push_back(inc.neighbor);
      }
    }
  }
  return reached == n_vertices();
}

namespace {

using EdgeList = std::vector<std::pair<VertexId, VertexId>>;

Graph canonical(std::size_t n, EdgeList edges, std::string_view name) {
  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  return Graph::from_edges(n, std::move(edges), std::string(name));
}

EdgeList tetrahedron_edges() {
  EdgeList e;
  for (VertexId u = 0; u < 4; ++u)
    for (VertexId v = u + 1; v < 4; ++v) e.emplace_back(u, v);
  return e;
}

EdgeList cube_edges() {
  EdgeList e;
  for (VertexId u = 0; u < 8; ++u)
    for (VertexId bit = 1; bit < 8; bit <<= 1)
      if ((u & bit) == 0) e.emplace_back(u, u | bit);
  return e;
}

EdgeList octahedron_edges() {
  EdgeList e;
  for (VertexId u = 0; u < 6; ++u)
    for (VertexId v = u + 1; v < 6; ++v)
      if (v != u + 3) e.emplace_back(u, v);
  return e;
}

EdgeList dodecahedron_edges() {
  EdgeList e;
  for (VertexId i = 0; i < 10; ++i) {
    e.emplace_back(i, (i + 1) % 10);
    e.emplace_back(i, i + 10);
    e.emplace_back(i + 10, (i + 2) % 10 + 10);
  }
  return e;
}

EdgeList icosahedron_edges() {
  EdgeList e;
  for (VertexId i = 1; i <= 5; ++i) {
    const VertexId next = i % 5 + 1;
    e.emplace_back(0, i);
    e.emplace_back(i, next);
    e.emplace_back(i, 5 + i);
    e.emplace_back(i, 5 + next);
    e.emplace_back(5 + i, 5 + next);
    e.emplace_back(5 + i, 11);
  }
  return e;
}

}  // namespace

std::string_view solid_name(Solid s) {
  switch (s) {
    case Solid::tetrahedron: return "tetrahedron";
    case Solid::cube: return "cube";
    case Solid::octahedron: return "octahedron";
    case Solid::dodecahedron: return "dodecahedron";
    case Solid::icosahedron: return "icosahedron";
  }
  return "unknown";
}

Solid parse_solid(std::string_view name) {
  for (Solid s : kAllSolids) {
    if (solid_name(s) == name) return s;
  }
  throw InvalidInput("unknown solid '" + std::string(name) +
                     "' (expected tetrahedron, cube, octahedron, dodecahedron or icosahedron)");
}

Graph make_solid(Solid s) {
  switch (s) {
    case Solid::tetrahedron: return canonical(4, tetrahedron_edges(), solid_name(s));
    case Solid::cube: return canonical(8, cube_edges(), solid_name(s));
    case Solid::octahedron: return canonical(6, octahedron_edges(), solid_name(s));
    case Solid::dodecahedron: return canonical(20, dodecahedron_edges(), solid_name(s));
    case Solid::icosahedron: return canonical(12, icosahedron_edges(), solid_name(s));
  }
  throw InvalidInput("unknown solid");
}

Graph make_solid(std::string_view name) { return make_solid(parse_solid(name)); }

std::size_t validate_regular(const Graph& g) {
  std::map<std::size_t, std::size_t> histogram;
  for (VertexId v = 0; v < g.n_vertices(); ++v) ++histogram[g.degree_of(v)];
  // Most frequent degree; ties go to the smaller degree.
  std::size_t modal = 0, best = 0;
  for (const auto& [deg, count] : histogram) {
    if (count > best) {
      best = count;
      modal = deg;
    }
  }
  for (VertexId v = 0; v < g.n_vertices(); ++v) {
    if (g.degree_of(v) != modal) throw IrregularGraph(v, g.degree_of(v), modal);
  }
  return modal;
}

DistanceClasses distance_classes(const Graph& g, VertexId source) {
  if (!g.has_vertex(source)) throw InvalidInput("source vertex out of range");
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(g.n_vertices(), kUnseen);
  std::queue<VertexId> queue;
  dist[source] = 0;
  queue.push(source);
  DistanceClasses out;
  out.source = source;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop();
    if (dist[v] >= out.classes.size()) out.classes.resize(dist[v] + 1);
    out.classes[dist[v]].push_back(v);
    for (const auto& inc : g.neighbors(v)) {
      if (dist[inc.neighbor] == kUnseen) {
        dist[inc.neighbor] = dist[v] + 1;
        queue.push(inc.neighbor);
      }
    }
  }
  if (std::find(dist.begin(), dist.end(), kUnseen) != dist.end()) {
    throw InvalidInput("graph is disconnected");
  }
  for (auto& layer : out.classes) {
    std::sort(layer.begin(), layer.end());
    out.sizes.push_back(layer.size());
  }
  out.radius = out.classes.size() - 1;
  return out;
}

Graph read_graph(std::istream& in, std::string name) {
  long long n = -1, m = -1;
  if (!(in >> n >> m) || n <= 0 || m < 0) {
    throw InvalidInput("graph file: expected header 'N M' with N > 0, M >= 0");
  }
  EdgeList edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long u = -1, v = -1;
    if (!(in >> u >> v)) {
      throw InvalidInput("graph file: expected " + std::to_string(m) + " edge lines, got " +
                         std::to_string(i));
    }
    if (u < 0 || v >= n || u >= v) {
      throw InvalidInput("graph file: edge line " + std::to_string(i + 1) +
                         " must satisfy 0 <= u < v < N");
    }
    edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
  }
  std::string trailing;
  if (in >> trailing) throw InvalidInput("graph file: unexpected trailing token '" + trailing + "'");
  return Graph::from_edges(static_cast<std::size_t>(n), std::move(edges), std::move(name));
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open graph file '" + path + "'");
  return read_graph(in, path);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.n_vertices() << ' ' << g.n_edges() << '\n';
  for (EdgeId e = 0; e < g.n_edges(); ++e) {
    auto [u, v] = g.endpoints(e);
    out << u << ' ' << v << '\n';
  }
}

}  // namespace bondperc
