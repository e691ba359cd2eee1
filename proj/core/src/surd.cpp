#include "einhom/surd.hpp"

#include <cmath>
#include <sstream>

#include "einhom/errors.hpp"
#include "einhom/roots.hpp"

namespace einhom {

QuadraticSurd::QuadraticSurd(Rational a, Rational b, const Integer& radicand) : a_(std::move(a)) {
  if (radicand < 0) throw DomainError("QuadraticSurd: negative radicand");
  if (radicand == 0 || b == 0) return;
  // Pull square factors out of the radicand.
  Integer d = radicand;
  Integer outside = 1;
  for (Integer f = 2; f * f <= d; ++f) {
    while (mpz_divisible_p(d.get_mpz_t(), Integer(f * f).get_mpz_t())) {
      d /= f * f;
      outside *= f;
    }
  }
  if (d == 1) {
    a_ += b * Rational(outside);
    return;
  }
  b_ = b * Rational(outside);
  d_ = d;
}

Integer QuadraticSurd::common_radicand(const QuadraticSurd& x, const QuadraticSurd& y) {
  if (x.is_rational()) return y.d_;
  if (y.is_rational()) return x.d_;
  if (x.d_ != y.d_) throw DomainError("QuadraticSurd: mixing different quadratic fields");
  return x.d_;
}

int QuadraticSurd::sign() const {
  const int sa = einhom::sign(a_);
  const int sb = einhom::sign(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with b^2 D.
  const Rational lhs = a_ * a_;
  const Rational rhs = b_ * b_ * Rational(d_);
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}

double QuadraticSurd::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(Rational(d_).get_d());
}

Rational QuadraticSurd::approximate(const Rational& eps) const {
  if (is_rational()) return a_;
  // sqrt(D) to eps / |b|.
  const Rational root_eps = eps / einhom::abs(b_);
  const RationalPoly p{Rational(-d_), Rational(0), Rational(1)};
  const RootInterval iv{Rational(0), Rational(d_), 1};
  return a_ + b_ * refine_root(p, iv, root_eps);
}

std::string QuadraticSurd::to_string() const {
  std::ostringstream os;
  if (is_rational()) {
    os << to_fraction_string(a_);
    return os.str();
  }
  if (a_ != 0) os << to_fraction_string(a_) << (b_ < 0 ? " - " : " + ");
  else if (b_ < 0) os << "-";
  const Rational ab = einhom::abs(b_);
  if (ab != 1) os << to_fraction_string(ab) << "*";
  os << "sqrt(" << d_.get_str() << ")";
  return os.str();
}

QuadraticSurd QuadraticSurd::conjugate() const {
  QuadraticSurd r = *this;
  r.b_ = -r.b_;
  return r;
}

QuadraticSurd QuadraticSurd::operator-() const {
  QuadraticSurd r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

QuadraticSurd QuadraticSurd::reduced(Rational a, Rational b, const Integer& d) {
  QuadraticSurd r(std::move(a));
  if (b != 0 && d != 1) {
    r.b_ = std::move(b);
    r.d_ = d;
  }
  return r;
}

QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y) {
  const Integer d = QuadraticSurd::common_radicand(x, y);
  return QuadraticSurd::reduced(x.a_ + y.a_, x.b_ + y.b_, d);
}

QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y) { return x + (-y); }

QuadraticSurd operator*(const QuadraticSurd& x, const QuadraticSurd& y) {
  const Integer d = QuadraticSurd::common_radicand(x, y);
  return QuadraticSurd::reduced(x.a_ * y.a_ + x.b_ * y.b_ * Rational(d), x.a_ * y.b_ + x.b_ * y.a_, d);
}

QuadraticSurd operator/(const QuadraticSurd& x, const QuadraticSurd& y) {
  if (y.sign() == 0) throw DomainError("QuadraticSurd: division by zero");
  if (y.is_rational()) return QuadraticSurd::reduced(x.a_ / y.a_, x.b_ / y.a_, x.d_);
  const Rational norm = y.a_ * y.a_ - y.b_ * y.b_ * Rational(y.d_);
  const QuadraticSurd num = x * y.conjugate();
  return QuadraticSurd::reduced(num.a_ / norm, num.b_ / norm, num.d_ == 1 ? y.d_ : num.d_);
}

QuadraticSurd abs(const QuadraticSurd& x) { return x.sign() < 0 ? -x : x; }

}  // namespace einhom
