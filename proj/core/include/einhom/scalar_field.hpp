#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "einhom/rational.hpp"
#include "einhom/surd.hpp"

namespace einhom {

/// Sparse Laurent monomial: sorted (variable, exponent) pairs, exponents nonzero.
using Monomial = std::vector<std::pair<int, int>>;

/// Laurent polynomial in a fixed number of positive variables with rational
/// coefficients. Scalar curvature functionals and the polynomial Einstein
/// systems are all of this shape, so evaluation and partial differentiation
/// are exact.
class ScalarField {
 public:
  explicit ScalarField(int variables = 0) : vars_(variables) {}

  int variables() const { return vars_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  /// Adds coeff * prod x_v^e over the given factors (repeated variables merge).
  void add_term(const Rational& coeff, std::initializer_list<std::pair<int, int>> factors);
  void add_term(const Rational& coeff, Monomial factors);

  ScalarField partial(int variable) const;
  std::vector<ScalarField> gradient() const;

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(const Rational& c);
  friend ScalarField operator*(const ScalarField& a, const ScalarField& b);

  /// Exact (Rational, QuadraticSurd) or floating evaluation at a point.
  template <class T>
  T evaluate(std::span<const T> point) const;

  /// Largest |term| at the point, used to normalise residuals.
  template <class T>
  T max_term_magnitude(std::span<const T> point) const;

  std::string to_string() const;

 private:
  int vars_;
  std::map<Monomial, Rational> terms_;
};

namespace detail {

template <class T>
T from_rational(const Rational& q);
template <>
inline Rational from_rational<Rational>(const Rational& q) { return q; }
template <>
inline double from_rational<double>(const Rational& q) { return q.get_d(); }
template <>
inline QuadraticSurd from_rational<QuadraticSurd>(const Rational& q) { return QuadraticSurd(q); }

template <class T>
T power(const T& x, int e) {
  T base = e < 0 ? T(from_rational<T>(Rational(1)) / x) : x;
  int k = e < 0 ? -e : e;
  T acc = from_rational<T>(Rational(1));
  while (k > 0) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

template <class T>
T magnitude(const T& x) {
  using einhom::abs;
  using std::abs;
  return abs(x);
}

}  // namespace detail

template <class T>
T ScalarField::evaluate(std::span<const T> point) const {
  T acc = detail::from_rational<T>(Rational(0));
  for (const auto& [mono, c] : terms_) {
    T term = detail::from_rational<T>(c);
    for (const auto& [v, e] : mono) term = term * detail::power(point[static_cast<std::size_t>(v)], e);
    acc = acc + term;
  }
  return acc;
}

template <class T>
T ScalarField::max_term_magnitude(std::span<const T> point) const {
  T best = detail::from_rational<T>(Rational(0));
  for (const auto& [mono, c] : terms_) {
    T term = detail::from_rational<T>(c);
    for (const auto& [v, e] : mono) term = term * detail::power(point[static_cast<std::size_t>(v)], e);
    T m = detail::magnitude(term);
    if (best < m) best = m;
  }
  return best;
}

}  // namespace einhom
