#pragma once

#include <cstddef>

namespace bondperc {

// Degree D, vertex count N and open-edge probability p of a D-regular graph.
// The branching quantities nu = (D-1)p and R = N-1 are derived on demand.
class BoundInputs {
 public:
  // Throws InvalidInput unless D >= 1, N >= 2 and 0 <= p <= 1.
  BoundInputs(std::size_t degree, std::size_t n_vertices, double p);

  std::size_t degree() const noexcept { return degree_; }
  std::size_t n_vertices() const noexcept { return n_vertices_; }
  double p() const noexcept { return p_; }
  double nu() const noexcept { return static_cast<double>(degree_ - 1) * p_; }
  std::size_t generations() const noexcept { return n_vertices_ - 1; }

 private:
  std::size_t degree_;
  std::size_t n_vertices_;
  double p_;
};

// sum_{k=0}^{n-1} nu^k; equals (1 - nu^n)/(1 - nu) away from nu = 1.
double geometric_sum(double nu, std::size_t n);

// Upper bounds from the branching process with Binomial(D, p) root offspring
// and Binomial(D-1, p) offspring afterwards, summed over generations 0..N-1.
double branching_first_moment_bound(const BoundInputs& in);
double branching_second_moment_bound(const BoundInputs& in);

// Textbook closed forms with the (1 - nu) denominators; undefined at nu = 1.
// Kept for cross-checking the sum forms above.
double branching_first_moment_closed_form(const BoundInputs& in);
double branching_second_moment_closed_form(const BoundInputs& in);

// Upper bounds from "a vertex with every incident edge closed is unreachable".
double plarge_first_moment_bound(const BoundInputs& in);
double plarge_second_moment_bound(const BoundInputs& in);

struct BoundRow {
  double p = 0.0;
  double e_s_branching_raw = 0.0;
  double e_s2_branching_raw = 0.0;
  double e_s_branching = 0.0;   // clamped to [1, N]
  double e_s2_branching = 0.0;  // clamped to [1, N^2]
  double e_s_plarge = 0.0;
  double e_s2_plarge = 0.0;
};

BoundRow evaluate_bounds(std::size_t degree, std::size_t n_vertices, double p);

}  // namespace bondperc
