#include "bondperc/polynomial.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

#include "bondperc/error.hpp"

namespace bondperc {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) {
    throw OverflowError("integer overflow in polynomial coefficient addition");
  }
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError("integer overflow in polynomial coefficient multiplication");
  }
  return r;
}

std::int64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    // r * (n - k + i) is divisible by i; cancel the common factor first so the
    // product only overflows when the result would.
    const auto step = static_cast<std::int64_t>(i);
    const std::int64_t g = std::gcd(r, step);
    r = checked_mul(r / g, static_cast<std::int64_t>(n - k + i) / (step / g));
  }
  return r;
}

IntPolynomial::IntPolynomial(std::size_t degree_bound) : coeffs_(degree_bound + 1, 0) {}

IntPolynomial::IntPolynomial(std::size_t degree_bound, std::vector<std::int64_t> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() > degree_bound + 1) {
    for (std::size_t j = degree_bound + 1; j < coeffs_.size(); ++j) {
      if (coeffs_[j] != 0) {
        throw InvalidInput("coefficient of p^" + std::to_string(j) + " exceeds degree bound " +
                           std::to_string(degree_bound));
      }
    }
  }
  coeffs_.resize(degree_bound + 1, 0);
}

IntPolynomial IntPolynomial::constant(std::size_t degree_bound, std::int64_t c) {
  IntPolynomial poly(degree_bound);
  poly.coeffs_[0] = c;
  return poly;
}

IntPolynomial IntPolynomial::monomial(std::size_t degree_bound, std::size_t power, std::int64_t c) {
  if (power > degree_bound) throw InvalidInput("monomial power exceeds degree bound");
  IntPolynomial poly(degree_bound);
  poly.coeffs_[power] = c;
  return poly;
}

IntPolynomial IntPolynomial::bernstein(std::size_t degree_bound, std::size_t j, std::size_t m) {
  IntPolynomial poly(degree_bound);
  poly.add_bernstein(j, m, 1);
  return poly;
}

int IntPolynomial::degree() const noexcept {
  for (std::size_t j = coeffs_.size(); j-- > 0;) {
    if (coeffs_[j] != 0) return static_cast<int>(j);
  }
  return -1;
}

double IntPolynomial::eval(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("p must lie in [0, 1]");
  // Compensated Horner: the rounding error of every multiply and add is
  // recovered exactly (fma / two-sum) and carried in a second Horner pass.
  // Plain Horner loses ~1e-8 on the alternating coefficients of degree-30
  // Bernstein expansions.
  double acc = 0.0;
  double err = 0.0;
  for (std::size_t j = coeffs_.size(); j-- > 0;) {
    const double prod = acc * p;
    const double prod_err = std::fma(acc, p, -prod);
    const double c = static_cast<double>(coeffs_[j]);
    const double sum = prod + c;
    const double back = sum - prod;
    const double sum_err = (prod - (sum - back)) + (c - back);
    acc = sum;
    err = err * p + (prod_err + sum_err);
  }
  return acc + err;
}

void IntPolynomial::require_same_bound(const IntPolynomial& other) const {
  if (other.coeffs_.size() != coeffs_.size()) {
    throw InvalidInput("polynomial degree bounds differ (" + std::to_string(degree_bound()) +
                       " vs " + std::to_string(other.degree_bound()) + ")");
  }
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& other) {
  require_same_bound(other);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] = checked_add(coeffs_[j], other.coeffs_[j]);
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& other) {
  require_same_bound(other);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    std::int64_t r = 0;
    if (__builtin_sub_overflow(coeffs_[j], other.coeffs_[j], &r)) {
      throw OverflowError("integer overflow in polynomial coefficient subtraction");
    }
    coeffs_[j] = r;
  }
  return *this;
}

IntPolynomial IntPolynomial::scaled(std::int64_t weight) const {
  IntPolynomial out(*this);
  for (auto& c : out.coeffs_) c = checked_mul(c, weight);
  return out;
}

IntPolynomial& IntPolynomial::add_bernstein(std::size_t j, std::size_t m, std::int64_t weight) {
  if (j > m) throw InvalidInput("bernstein term needs j <= m");
  if (m > degree_bound()) throw InvalidInput("bernstein term degree exceeds degree bound");
  // p^j (1-p)^(m-j) = sum_i (-1)^i C(m-j, i) p^(j+i)
  for (std::size_t i = 0; i + j <= m; ++i) {
    const std::int64_t sign = (i % 2 == 1) ? -1 : 1;
    const std::int64_t term = checked_mul(checked_mul(weight, binomial(m - j, i)), sign);
    coeffs_[j + i] = checked_add(coeffs_[j + i], term);
  }
  return *this;
}

void IntPolynomial::add_to_coeff(std::size_t j, std::int64_t delta) {
  coeffs_.at(j) = checked_add(coeffs_.at(j), delta);
}

std::string IntPolynomial::to_tuple_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (j) os << ", ";
    os << coeffs_[j];
  }
  os << ')';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntPolynomial& poly) {
  return os << poly.to_tuple_string();
}

void to_json(nlohmann::json& j, const IntPolynomial& poly) {
  j = nlohmann::json{{"degree_bound", poly.degree_bound()}, {"coeffs", poly.coeff_vector()}};
}

void from_json(const nlohmann::json& j, IntPolynomial& poly) {
  const auto bound = j.at("degree_bound").get<std::size_t>();
  auto coeffs = j.at("coeffs").get<std::vector<std::int64_t>>();
  if (coeffs.size() != bound + 1) {
    throw InvalidInput("polynomial JSON: coeffs must have degree_bound + 1 entries");
  }
  poly = IntPolynomial(bound, std::move(coeffs));
}

}  // namespace bondperc
