#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bondperc/graph.hpp"
#include "bondperc/paths.hpp"

namespace bondperc {

// Counter-based stream: output k of stream (seed, index) is
// splitmix64_mix(key + (k + 1) * golden) with key = splitmix64_mix(seed ^
// splitmix64_mix(index)). Every sample owns the stream for its own index,
// so results do not depend on thread count or scheduling.
class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next() noexcept;
  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) noexcept { return uniform() < p; }
  // Uniform on [0, n).
  std::uint64_t below(std::uint64_t n) noexcept;

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept;

enum class SourcePolicy { fixed, uniform };

struct SimConfig {
  double p = 0.5;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  SourcePolicy policy = SourcePolicy::fixed;
  VertexId source = 0;
  unsigned threads = 0;
};

struct SimResult {
  double mean_s = 0.0;
  double se_s = 0.0;
  double mean_s2 = 0.0;
  double se_s2 = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double p = 0.0;
};

// Each edge opens independently with probability p; draws come from the
// sample's stream in edge-id order.
EdgeSet sample_open_edges(const Graph& g, double p, SampleRng& rng);

// Size of the open cluster of `source` (BFS over open edges).
std::size_t cluster_size(const Graph& g, EdgeSet open_edges, VertexId source);

// Sample means of S and S^2 with standard errors sqrt(var / n) (unbiased
// variance; 0 when samples == 1). S and S^2 are summed as integers, so the
// output is bit-identical for any thread count.
SimResult sample_cluster_size(const Graph& g, const SimConfig& cfg);

// Generation-by-generation occupation of the open cluster: the particle on
// each newly occupied vertex, in ascending vertex order within a generation,
// sends a child across every open edge to a still-empty neighbor.
struct GenerationTrace {
  VertexId source = 0;
  // newborn[n] = locations of generation n (xi_n minus xi_{n-1}), ascending;
  // newborn[0] = {source}. Has n_vertices entries.
  std::vector<std::vector<VertexId>> newborn;
  // parent[v] of each occupied v (source is its own parent).
  std::vector<VertexId> parent;

  std::size_t generation_count(std::size_t n) const { return newborn.at(n).size(); }
  std::size_t total_particles() const;
  // xi_n, ascending.
  std::vector<VertexId> occupied(std::size_t n) const;
};

GenerationTrace birth_process(const Graph& g, EdgeSet open_edges, VertexId source);

}  // namespace bondperc
