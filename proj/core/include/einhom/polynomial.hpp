#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "einhom/rational.hpp"

namespace einhom {

/// Univariate polynomial over Q, coefficients in ascending degree order.
///
/// The representation is always trimmed: the leading coefficient is nonzero
/// unless the polynomial is zero, in which case the coefficient list is empty.
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> ascending);
  RationalPoly(std::initializer_list<Rational> ascending);

  /// Builds from descending coefficients, the order polynomials are usually written in.
  static RationalPoly from_descending(std::span<const Rational> descending);
  static RationalPoly from_descending(std::initializer_list<Rational> descending);
  static RationalPoly monomial(const Rational& c, int degree);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  /// Coefficient of z^i; zero past the degree.
  Rational coefficient(int i) const;
  const Rational& leading() const;

  RationalPoly derivative() const;
  RationalPoly monic() const;
  /// Divides by |leading coefficient|, keeping the sign pattern.
  RationalPoly normalized_abs() const;

  Rational operator()(const Rational& x) const;
  double operator()(double x) const;

  friend RationalPoly operator+(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator*(const Rational& c, const RationalPoly& p);
  RationalPoly operator-() const;
  friend bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(char var = 'z') const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Euclidean division: a = q*b + r with deg r < deg b.
std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b);
RationalPoly poly_gcd(RationalPoly a, RationalPoly b);

/// p / gcd(p, p'), made monic.
RationalPoly squarefree_part(const RationalPoly& p);

/// Yun's decomposition p = c * prod_i f_i^i with each f_i squarefree, pairwise
/// coprime and monic. Returns the nonconstant (f_i, i) pairs.
std::vector<std::pair<RationalPoly, int>> squarefree_decomposition(const RationalPoly& p);

}  // namespace einhom
