#include "bondperc/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "bondperc/error.hpp"
#include "bondperc/parallel.hpp"

namespace bondperc {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kSamplesPerChunk = 4096;
}  // namespace

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SampleRng::SampleRng(std::uint64_t seed, std::uint64_t index)
    : key_(splitmix64_mix(seed ^ splitmix64_mix(index + kGolden))) {}

std::uint64_t SampleRng::next() noexcept {
  ++counter_;
  return splitmix64_mix(key_ + counter_ * kGolden);
}

std::uint64_t SampleRng::below(std::uint64_t n) noexcept {
  const auto k = static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
  return k < n ? k : n - 1;
}

EdgeSet sample_open_edges(const Graph& g, double p, SampleRng& rng) {
  EdgeSet open;
  for (EdgeId e = 0; e < g.n_edges(); ++e) {
    if (rng.bernoulli(p)) open.insert(e);
  }
  return open;
}

std::size_t cluster_size(const Graph& g, EdgeSet open_edges, VertexId source) {
  std::uint64_t seen = std::uint64_t{1} << source;
  VertexId stack[kMaxEdges + 1];
  std::size_t top = 0;
  stack[top++] = source;
  std::size_t size = 1;
  while (top > 0) {
    const VertexId v = stack[--top];
    for (const auto& inc : g.neighbors(v)) {
      const std::uint64_t bit = std::uint64_t{1} << inc.neighbor;
      if (open_edges.contains(inc.edge) && !(seen & bit)) {
        seen |= bit;
        ++size;
        stack[top++] = inc.neighbor;
      }
    }
  }
  return size;
}

SimResult sample_cluster_size(const Graph& g, const SimConfig& cfg) {
  if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw InvalidInput("p must lie in [0, 1]");
  if (cfg.samples < 1) throw InvalidInput("samples must be at least 1");
  if (!g.has_vertex(cfg.source)) throw InvalidInput("source vertex out of range");
  if (g.n_vertices() > 64) throw InvalidInput("simulation supports at most 64 vertices");

  struct Sums {
    std::uint64_t s = 0, s2 = 0;
    std::uint64_t s4 = 0;  // s <= 64, so s^4 < 2^25
  };
  const std::uint64_t n_chunks = (cfg.samples + kSamplesPerChunk - 1) / kSamplesPerChunk;
  std::vector<Sums> chunks(n_chunks);
  parallel_tasks(n_chunks, cfg.threads, [&](std::size_t chunk, unsigned) {
    Sums sums;
    const std::uint64_t begin = chunk * kSamplesPerChunk;
    const std::uint64_t end = std::min(cfg.samples, begin + kSamplesPerChunk);
    for (std::uint64_t i = begin; i < end; ++i) {
      SampleRng rng(cfg.seed, i);
      const VertexId x = cfg.policy == SourcePolicy::uniform ? static_cast<VertexId>(rng.below(g.n_vertices()))
                                                            : cfg.source;
      const EdgeSet open = sample_open_edges(g, cfg.p, rng);
      const std::uint64_t s = cluster_size(g, open, x);
      sums.s += s;
      sums.s2 += s * s;
      sums.s4 += (s * s) * (s * s);
    }
    chunks[chunk] = sums;
  });

  Sums total;
  for (const auto& c : chunks) {
    total.s += c.s;
    total.s2 += c.s2;
    total.s4 += c.s4;
  }
  const double n = static_cast<double>(cfg.samples);
  SimResult r;
  r.samples = cfg.samples;
  r.seed = cfg.seed;
  r.p = cfg.p;
  r.mean_s = static_cast<double>(total.s) / n;
  r.mean_s2 = static_cast<double>(total.s2) / n;
  if (cfg.samples > 1) {
    const double var_s = std::max(0.0, (static_cast<double>(total.s2) - n * r.mean_s * r.mean_s) / (n - 1.0));
    const double var_s2 =
        std::max(0.0, (static_cast<double>(total.s4) - n * r.mean_s2 * r.mean_s2) / (n - 1.0));
    r.se_s = std::sqrt(var_s / n);
    r.se_s2 = std::sqrt(var_s2 / n);
  }
  return r;
}

std::size_t GenerationTrace::total_particles() const {
  std::size_t total = 0;
  for (const auto& gen : newborn) total += gen.size();
  return total;
}

std::vector<VertexId> GenerationTrace::occupied(std::size_t n) const {
  std::vector<VertexId> out;
  for (std::size_t k = 0; k <= n && k < newborn.size(); ++k) out.insert(out.end(), newborn[k].begin(), newborn[k].end());
  std::sort(out.begin(), out.end());
  return out;
}

GenerationTrace birth_process(const Graph& g, EdgeSet open_edges, VertexId source) {
  if (!g.has_vertex(source)) throw InvalidInput("source vertex out of range");
  if (!open_edges.subset_of(EdgeSet::all(g.n_edges()))) throw InvalidInput("edge set uses an edge id >= n_edges");
  const std::size_t n = g.n_vertices();
  GenerationTrace trace;
  trace.source = source;
  trace.newborn.assign(n, {});
  trace.parent.assign(n, source);
  std::vector<bool> occupied(n, false);
  occupied[source] = true;
  trace.newborn[0] = {source};
  for (std::size_t gen = 0; gen + 1 < n; ++gen) {
    auto& children = trace.newborn[gen + 1];
    for (VertexId particle : trace.newborn[gen]) {
      for (const auto& inc : g.neighbors(particle)) {
        if (occupied[inc.neighbor] || !open_edges.contains(inc.edge)) continue;
        occupied[inc.neighbor] = true;
        trace.parent[inc.neighbor] = particle;
        children.push_back(inc.neighbor);
      }
    }
    std::sort(children.begin(), children.end());
    if (children.empty()) break;
  }
  return trace;
}

}  // namespace bondperc
