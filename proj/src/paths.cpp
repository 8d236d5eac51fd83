#include "bondperc/paths.hpp"

#include <algorithm>

#include "bondperc/error.hpp"

namespace bondperc {

std::vector<EdgeId> EdgeSet::ids() const {
  std::vector<EdgeId> out;
  for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(static_cast<EdgeId>(std::countr_zero(b)));
  return out;
}

std::string EdgeSet::to_string() const {
  std::string out;
  for (EdgeId e : ids()) {
    if (!out.empty()) out += ',';
    out += std::to_string(e);
  }
  return out;
}

namespace {

void require_vertex(const Graph& g, VertexId v) {
  if (!g.has_vertex(v)) throw InvalidInput("vertex " + std::to_string(v) + " out of range");
}

// Depth-first search over vertex sequences. Neighbors are visited in
// ascending id order, so completed paths come out lexicographically sorted.
class PathSearch {
 public:
  PathSearch(const Graph& g, VertexId target, std::size_t max_len)
      : g_(g), target_(target), max_len_(max_len), visited_(g.n_vertices(), false) {}

  template <class OnPath>
  void run(VertexId from, OnPath&& on_path) {
    visited_[from] = true;
    walk_.push_back(from);
    descend(from, EdgeSet{}, on_path);
    walk_.pop_back();
    visited_[from] = false;
  }

  const std::vector<VertexId>& walk() const { return walk_; }

 private:
  template <class OnPath>
  bool descend(VertexId v, EdgeSet used, OnPath& on_path) {
    if (v == target_) return on_path(used);
    if (used.size() == max_len_) return true;
    for (const auto& inc : g_.neighbors(v)) {
      if (visited_[inc.neighbor]) continue;
      visited_[inc.neighbor] = true;
      walk_.push_back(inc.neighbor);
      const bool keep_going = descend(inc.neighbor, used | EdgeSet::single(inc.edge), on_path);
      walk_.pop_back();
      visited_[inc.neighbor] = false;
      if (!keep_going) return false;
    }
    return true;
  }

  const Graph& g_;
  VertexId target_;
  std::size_t max_len_;
  std::vector<bool> visited_;
  std::vector<VertexId> walk_;
};

std::size_t effective_cutoff(const Graph& g, std::optional<std::size_t> cutoff) {
  const std::size_t longest = g.n_vertices() - 1;
  return cutoff ? std::min(*cutoff, longest) : longest;
}

}  // namespace

PathFamily enumerate_paths(const Graph& g, VertexId x, VertexId y, std::optional<std::size_t> cutoff) {
  require_vertex(g, x);
  require_vertex(g, y);
  if (x == y) throw InvalidInput("enumerate_paths needs distinct endpoints");
  PathFamily family;
  family.source = x;
  family.targets = {y};
  family.cutoff = cutoff;
  PathSearch search(g, y, effective_cutoff(g, cutoff));
  search.run(x, [&](EdgeSet path) {
    family.paths.push_back(path);
    family.lengths.push_back(path.size());
    return true;
  });
  family.truncated = cutoff.has_value() && has_path_longer_than(g, x, y, *cutoff);
  return family;
}

std::vector<std::vector<VertexId>> enumerate_vertex_paths(const Graph& g, VertexId x, VertexId y,
                                                          std::optional<std::size_t> cutoff) {
  require_vertex(g, x);
  require_vertex(g, y);
  if (x == y) throw InvalidInput("enumerate_vertex_paths needs distinct endpoints");
  std::vector<std::vector<VertexId>> out;
  PathSearch search(g, y, effective_cutoff(g, cutoff));
  search.run(x, [&](EdgeSet) {
    out.push_back(search.walk());
    return true;
  });
  return out;
}

bool has_path_longer_than(const Graph& g, VertexId x, VertexId y, std::size_t length) {
  bool found = false;
  PathSearch search(g, y, g.n_vertices() - 1);
  search.run(x, [&](EdgeSet path) {
    found = path.size() > length;
    return !found;
  });
  return found;
}

std::vector<EdgeSet> minimalize(std::vector<EdgeSet> sets) {
  std::sort(sets.begin(), sets.end(), [](EdgeSet a, EdgeSet b) {
    return a.size() != b.size() ? a.size() < b.size() : a.bits() < b.bits();
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<EdgeSet> kept;
  // Any subset of a set comes earlier in size order, so one pass suffices.
  for (EdgeSet s : sets) {
    const bool absorbed =
        std::any_of(kept.begin(), kept.end(), [s](EdgeSet k) { return k.subset_of(s); });
    if (!absorbed) kept.push_back(s);
  }
  return kept;
}

PathFamily enumerate_pair_events(const Graph& g, VertexId x, VertexId y, VertexId z,
                                 std::optional<std::size_t> cutoff) {
  require_vertex(g, x);
  require_vertex(g, y);
  require_vertex(g, z);
  if (x == y || x == z || y == z) throw InvalidInput("enumerate_pair_events needs three distinct vertices");
  const PathFamily to_y = enumerate_paths(g, x, y, cutoff);
  const PathFamily to_z = enumerate_paths(g, x, z, cutoff);
  std::vector<EdgeSet> unions;
  unions.reserve(to_y.size() * to_z.size());
  for (EdgeSet a : to_y.paths)
    for (EdgeSet b : to_z.paths) unions.push_back(a | b);

  PathFamily family;
  family.source = x;
  family.targets = {y, z};
  family.cutoff = cutoff;
  family.truncated = to_y.truncated || to_z.truncated;
  family.paths = minimalize(std::move(unions));
  for (EdgeSet s : family.paths) family.lengths.push_back(s.size());
  return family;
}

bool is_self_avoiding_path(const Graph& g, EdgeSet edges, VertexId x, VertexId y) {
  if (x == y || !g.has_vertex(x) || !g.has_vertex(y)) return false;
  if ((edges.bits() & ~EdgeSet::all(g.n_edges()).bits()) != 0) return false;
  // Follow the unique unused edge out of each vertex; a path has no choices.
  EdgeSet remaining = edges;
  std::vector<bool> seen(g.n_vertices(), false);
  VertexId at = x;
  seen[x] = true;
  while (at != y) {
    std::optional<Incidence> step;
    for (const auto& inc : g.neighbors(at)) {
      if (!remaining.contains(inc.edge)) continue;
      if (step) return false;  // branching
      step = inc;
    }
    if (!step || seen[step->neighbor]) return false;
    remaining = EdgeSet(remaining.bits() & ~EdgeSet::single(step->edge).bits());
    at = step->neighbor;
    seen[at] = true;
  }
  return remaining.empty();
}

bool connects_all(const Graph& g, EdgeSet edges, VertexId x, VertexId y, VertexId z) {
  std::vector<bool> seen(g.n_vertices(), false);
  std::vector<VertexId> stack{x};
  seen[x] = true;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (const auto& inc : g.neighbors(v)) {
      if (edges.contains(inc.edge) && !seen[inc.neighbor]) {
        seen[inc.neighbor] = true;
        stack.push_back(inc.neighbor);
      }
    }
  }
  return seen[y] && seen[z];
}

}  // namespace bondperc
