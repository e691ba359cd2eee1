#pragma once

#include <string>

#include "einhom/rational.hpp"

namespace einhom {

/// Element a + b*sqrt(D) of the quadratic field Q(sqrt(D)).
///
/// D is kept squarefree; D == 1 (or b == 0) means the value is rational.
/// Binary operations require both operands to share D unless one is rational.
class QuadraticSurd {
 public:
  QuadraticSurd() = default;
  QuadraticSurd(Rational a) : a_(std::move(a)) {}  // NOLINT: implicit embedding of Q
  QuadraticSurd(long a) : a_(a) {}                 // NOLINT
  /// a + b*sqrt(radicand); the radicand's square factors are pulled into b.
  QuadraticSurd(Rational a, Rational b, const Integer& radicand);

  const Rational& rational_part() const { return a_; }
  const Rational& surd_coefficient() const { return b_; }
  const Integer& radicand() const { return d_; }
  bool is_rational() const { return b_ == 0; }

  int sign() const;
  double to_double() const;
  /// Rational approximation within eps.
  Rational approximate(const Rational& eps) const;
  std::string to_string() const;

  QuadraticSurd conjugate() const;

  friend QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y);
  friend QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y);
  friend QuadraticSurd operator*(const QuadraticSurd& x, const QuadraticSurd& y);
  friend QuadraticSurd operator/(const QuadraticSurd& x, const QuadraticSurd& y);
  QuadraticSurd operator-() const;
  QuadraticSurd& operator+=(const QuadraticSurd& y) { return *this = *this + y; }
  QuadraticSurd& operator-=(const QuadraticSurd& y) { return *this = *this - y; }
  QuadraticSurd& operator*=(const QuadraticSurd& y) { return *this = *this * y; }
  QuadraticSurd& operator/=(const QuadraticSurd& y) { return *this = *this / y; }

  friend bool operator==(const QuadraticSurd& x, const QuadraticSurd& y) { return (x - y).sign() == 0; }
  friend bool operator<(const QuadraticSurd& x, const QuadraticSurd& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QuadraticSurd& x, const QuadraticSurd& y) { return y < x; }

 private:
  static Integer common_radicand(const QuadraticSurd& x, const QuadraticSurd& y);
  // Assumes d is already squarefree.
  static QuadraticSurd reduced(Rational a, Rational b, const Integer& d);

  Rational a_{0};
  Rational b_{0};
  Integer d_{1};
};

QuadraticSurd abs(const QuadraticSurd& x);

}  // namespace einhom
