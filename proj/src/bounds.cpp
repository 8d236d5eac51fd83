#include "bondperc/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "bondperc/error.hpp"

namespace bondperc {

BoundInputs::BoundInputs(std::size_t degree, std::size_t n_vertices, double p)
    : degree_(degree), n_vertices_(n_vertices), p_(p) {
  if (degree < 1) throw InvalidInput("degree must be at least 1");
  if (n_vertices < 2) throw InvalidInput("graph must have at least 2 vertices");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("p must lie in [0, 1]");
}

double geometric_sum(double nu, std::size_t n) {
  double sum = 0.0, term = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    sum += term;
    term *= nu;
  }
  return sum;
}

double branching_first_moment_bound(const BoundInputs& in) {
  const double dp = static_cast<double>(in.degree()) * in.p();
  return 1.0 + dp * geometric_sum(in.nu(), in.generations());
}

// Second moment of the total progeny, written without (1 - nu) denominators:
//   (1 + Dp G_R)^2 + Dp(1-p) G_R^2 + Dp nu (1-p) sum_{i=1}^{R-1} nu^(R-1-i) G_i^2
// with G_n = sum_{k<n} nu^k. The last sum is the (1 - nu)^-2 bracket with
// its terms paired symmetrically around nu^(R-1).
double branching_second_moment_bound(const BoundInputs& in) {
  const double p = in.p();
  const double nu = in.nu();
  const double dp = static_cast<double>(in.degree()) * p;
  const std::size_t r = in.generations();
  const double g_r = geometric_sum(nu, r);
  double tail = 0.0;
  for (std::size_t i = 1; i < r; ++i) {
    const double g_i = geometric_sum(nu, i);
    tail += std::pow(nu, static_cast<double>(r - 1 - i)) * g_i * g_i;
  }
  const double mean = 1.0 + dp * g_r;
  return mean * mean + dp * (1.0 - p) * g_r * g_r + dp * nu * (1.0 - p) * tail;
}

double branching_first_moment_closed_form(const BoundInputs& in) {
  const double nu = in.nu();
  const double r = static_cast<double>(in.generations());
  const double dp = static_cast<double>(in.degree()) * in.p();
  return 1.0 + dp * (1.0 - std::pow(nu, r)) / (1.0 - nu);
}

double branching_second_moment_closed_form(const BoundInputs& in) {
  const double p = in.p();
  const double nu = in.nu();
  const double r = static_cast<double>(in.generations());
  const double dp = static_cast<double>(in.degree()) * p;
  const double nu_r = std::pow(nu, r);
  const double first = 1.0 + dp * (1.0 - nu_r) / (1.0 - nu);
  const double bracket = (1.0 - nu_r) * (1.0 + nu_r * nu) / (1.0 - nu) - 2.0 * r * nu_r;
  return first * first + dp * (1.0 - p) / ((1.0 - nu) * (1.0 - nu)) * bracket;
}

double plarge_first_moment_bound(const BoundInputs& in) {
  const double n = static_cast<double>(in.n_vertices());
  return n - (n - 1.0) * std::pow(1.0 - in.p(), static_cast<double>(in.degree()));
}

double plarge_second_moment_bound(const BoundInputs& in) {
  const double n = static_cast<double>(in.n_vertices());
  const double d = static_cast<double>(in.degree());
  const double q = 1.0 - in.p();
  return n * n - (n - 1.0) * (2.0 * n - 1.0) * std::pow(q, d) +
         (n - 1.0) * (n - 2.0) * std::pow(q, 2.0 * d - 1.0);
}

BoundRow evaluate_bounds(std::size_t degree, std::size_t n_vertices, double p) {
  const BoundInputs in(degree, n_vertices, p);
  const double n = static_cast<double>(n_vertices);
  BoundRow row;
  row.p = p;
  row.e_s_branching_raw = branching_first_moment_bound(in);
  row.e_s2_branching_raw = branching_second_moment_bound(in);
  row.e_s_branching = std::clamp(row.e_s_branching_raw, 1.0, n);
  row.e_s2_branching = std::clamp(row.e_s2_branching_raw, 1.0, n * n);
  row.e_s_plarge = plarge_first_moment_bound(in);
  row.e_s2_plarge = plarge_second_moment_bound(in);
  return row;
}

}  // namespace bondperc
