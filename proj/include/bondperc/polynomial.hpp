#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace bondperc {

// Checked signed 64-bit helpers; both throw OverflowError instead of wrapping.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

// Exact binomial coefficient C(n, k); 0 when k > n.
std::int64_t binomial(std::size_t n, std::size_t k);

// Polynomial in p with exact integer coefficients. The coefficient vector
// always has degree_bound() + 1 entries, trailing zeros included, so that
// vectors compare positionally against fixed-length tuples.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::size_t degree_bound);
  // Shorter coefficient lists are zero padded; nonzero entries past the
  // bound are rejected.
  IntPolynomial(std::size_t degree_bound, std::vector<std::int64_t> coeffs);
  IntPolynomial(std::size_t degree_bound, std::initializer_list<std::int64_t> coeffs)
      : IntPolynomial(degree_bound, std::vector<std::int64_t>(coeffs)) {}

  static IntPolynomial constant(std::size_t degree_bound, std::int64_t c);
  static IntPolynomial monomial(std::size_t degree_bound, std::size_t power, std::int64_t c = 1);
  // Expansion of p^j (1-p)^(m-j).
  static IntPolynomial bernstein(std::size_t degree_bound, std::size_t j, std::size_t m);

  std::size_t degree_bound() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  std::span<const std::int64_t> coeffs() const noexcept { return coeffs_; }
  const std::vector<std::int64_t>& coeff_vector() const noexcept { return coeffs_; }
  std::int64_t operator[](std::size_t j) const { return coeffs_.at(j); }
  // Index of the highest nonzero coefficient, -1 for the zero polynomial.
  int degree() const noexcept;

  // Horner evaluation; p must lie in [0, 1].
  double eval(double p) const;

  IntPolynomial& operator+=(const IntPolynomial& other);
  IntPolynomial& operator-=(const IntPolynomial& other);
  IntPolynomial scaled(std::int64_t weight) const;
  // *this += weight * p^j (1-p)^(m-j)
  IntPolynomial& add_bernstein(std::size_t j, std::size_t m, std::int64_t weight);
  void add_to_coeff(std::size_t j, std::int64_t delta);

  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  // "(c0, c1, ..., ck)"
  std::string to_tuple_string() const;

 private:
  void require_same_bound(const IntPolynomial& other) const;

  std::vector<std::int64_t> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const IntPolynomial& poly);

// {"degree_bound": k, "coeffs": [c0, ..., ck]}
void to_json(nlohmann::json& j, const IntPolynomial& poly);
void from_json(const nlohmann::json& j, IntPolynomial& poly);

}  // namespace bondperc
