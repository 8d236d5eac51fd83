#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "bondperc/graph.hpp"
#include "bondperc/paths.hpp"
#include "bondperc/polynomial.hpp"

namespace bondperc {

// Largest family the subset-lattice traversal accepts (2^K work).
inline constexpr std::size_t kMaxFamilySize = 40;

// Signed tallies a_0..a_m: a_j gains (-1)^(|B|+1) for every nonempty
// subfamily B whose edge union has exactly j edges.
class CoefficientAccumulator {
 public:
  explicit CoefficientAccumulator(std::size_t n_edges) : a_(n_edges + 1, 0) {}

  void bump(std::size_t j, std::int64_t sign) { a_[j] += sign; }
  void merge(const CoefficientAccumulator& other);

  std::span<const std::int64_t> values() const noexcept { return a_; }
  std::int64_t* data() noexcept { return a_.data(); }
  IntPolynomial to_polynomial() const;

 private:
  std::vector<std::int64_t> a_;
};

struct ConnectionResult {
  IntPolynomial poly;
  std::uint64_t subsets_visited = 0;  // always 2^K - 1
};

struct IeOptions {
  unsigned threads = 0;          // 0: default_thread_count()
  std::size_t split_depth = 8;   // leading path indices fanned out as tasks
  // Cap on sum over families of 2^K for second moments.
  std::uint64_t second_moment_budget = std::uint64_t{1} << 28;
  // Recompute the class polynomials from a second source and compare.
  bool verify_homogeneity = true;
  VertexId source = 0;
};

// P(at least one member fully open) as an exact polynomial, by depth-first
// traversal of all 2^K - 1 nonempty subfamilies carrying the running union.
// Throws InvalidInput for an empty family and BudgetExceeded for K > 40.
ConnectionResult connection_polynomial(std::span<const EdgeSet> family, std::size_t n_edges,
                                       const IeOptions& options = {});
ConnectionResult connection_polynomial(const PathFamily& family, std::size_t n_edges,
                                       const IeOptions& options = {});

enum class MomentKind { exact, lower_bound };
std::string_view to_string(MomentKind kind);

struct ClassTerm {
  std::size_t s = 0;             // distance from the source
  std::size_t n_s = 0;           // weight of this term
  std::size_t k_s = 0;           // family size
  VertexId representative = 0;
  IntPolynomial poly;            // P(x <-> representative)
  std::uint64_t subsets_visited = 0;
  std::vector<std::size_t> path_lengths;
};

struct PairTerm {
  VertexId y = 0;
  VertexId z = 0;
  std::size_t k = 0;
  IntPolynomial poly;            // P(x <-> y, x <-> z)
  std::uint64_t subsets_visited = 0;
};

struct MomentReport {
  std::string solid;
  int moment = 1;
  MomentKind kind = MomentKind::exact;
  IntPolynomial poly;
  VertexId source = 0;
  std::vector<ClassTerm> per_class;
  std::vector<PairTerm> pair_terms;  // second moment only
  std::optional<std::size_t> cutoff;
  std::uint64_t subsets_visited = 0;
  std::uint64_t verification_subsets_visited = 0;
  double wall_seconds = 0.0;
};

// E(S) = sum_s N_s P(x <-> y_s). Requires every source to see the same
// distance-class sizes, and checks that all members of a class have the
// same path-length profile (and, with verify_homogeneity, that a second
// source reproduces the class polynomials). kind = lower_bound iff the
// cutoff removed a path from some family.
MomentReport first_moment(const Graph& g, std::optional<std::size_t> cutoff = std::nullopt,
                          const IeOptions& options = {});

// E(S | x = options.source) = sum_y P(x <-> y), one family per vertex; no
// homogeneity assumption. per_class holds one entry per target vertex.
MomentReport first_moment_at(const Graph& g, std::optional<std::size_t> cutoff = std::nullopt,
                             const IeOptions& options = {});

// E(S^2 | x = options.source) = 1 + 3 sum_{y != x} P(x <-> y)
//                              + sum_{y != z, both != x} P(x <-> y, x <-> z).
// Refuses (BudgetExceeded) when the pair families exceed the work budget.
MomentReport second_moment(const Graph& g, const IeOptions& options = {});

// Subset count the second moment would traverse, or nullopt if some family
// exceeds kMaxFamilySize.
std::optional<std::uint64_t> second_moment_work(const Graph& g, VertexId source);

// Fields in documented order (solid, moment, kind, ..., coeffs, per_class,
// subsets_visited, cutoff). wall_seconds is only written when requested so
// that repeated runs produce identical bytes.
nlohmann::ordered_json to_json(const MomentReport& report, bool include_timing = false);

}  // namespace bondperc
