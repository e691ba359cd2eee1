#include "einhom/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "einhom/errors.hpp"

namespace einhom {

RationalPoly::RationalPoly(std::vector<Rational> ascending) : coeffs_(std::move(ascending)) { trim(); }

RationalPoly::RationalPoly(std::initializer_list<Rational> ascending) : coeffs_(ascending) { trim(); }

RationalPoly RationalPoly::from_descending(std::span<const Rational> descending) {
  std::vector<Rational> c(descending.rbegin(), descending.rend());
  return RationalPoly(std::move(c));
}

RationalPoly RationalPoly::from_descending(std::initializer_list<Rational> descending) {
  return from_descending(std::span<const Rational>(descending.begin(), descending.size()));
}

RationalPoly RationalPoly::monomial(const Rational& c, int degree) {
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return RationalPoly(std::move(v));
}

void RationalPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RationalPoly::coefficient(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

const Rational& RationalPoly::leading() const {
  if (is_zero()) throw DomainError("zero polynomial has no leading coefficient");
  return coeffs_.back();
}

RationalPoly RationalPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return RationalPoly(std::move(d));
}

RationalPoly RationalPoly::monic() const {
  if (is_zero()) return {};
  const Rational lc = leading();
  std::vector<Rational> c(coeffs_);
  for (auto& x : c) x /= lc;
  return RationalPoly(std::move(c));
}

RationalPoly RationalPoly::normalized_abs() const {
  if (is_zero()) return {};
  const Rational lc = abs(leading());
  std::vector<Rational> c(coeffs_);
  for (auto& x : c) x /= lc;
  return RationalPoly(std::move(c));
}

Rational RationalPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double RationalPoly::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return RationalPoly(std::move(c));
}

RationalPoly RationalPoly::operator-() const {
  std::vector<Rational> c(coeffs_);
  for (auto& x : c) x = -x;
  return RationalPoly(std::move(c));
}

RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) { return a + (-b); }

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return RationalPoly(std::move(c));
}

RationalPoly operator*(const Rational& s, const RationalPoly& p) {
  std::vector<Rational> c(p.coeffs_);
  for (auto& x : c) x *= s;
  return RationalPoly(std::move(c));
}

std::string RationalPoly::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const Rational a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (a != 1 || i == 0) os << to_fraction_string(a);
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> rem(a.coefficients());
  const int db = b.degree();
  const int da = a.degree();
  if (da < db) return {RationalPoly{}, a};
  std::vector<Rational> quot(static_cast<std::size_t>(da - db) + 1);
  const Rational& lb = b.leading();
  for (int i = da; i >= db; --i) {
    const Rational f = rem[static_cast<std::size_t>(i)] / lb;
    quot[static_cast<std::size_t>(i - db)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= f * b.coefficient(j);
  }
  rem.resize(static_cast<std::size_t>(db));
  return {RationalPoly(std::move(quot)), RationalPoly(std::move(rem))};
}

RationalPoly poly_gcd(RationalPoly a, RationalPoly b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

RationalPoly squarefree_part(const RationalPoly& p) {
  if (p.is_zero()) throw DomainError("squarefree part of the zero polynomial");
  if (p.degree() <= 0) return RationalPoly{Rational(1)};
  const RationalPoly g = poly_gcd(p, p.derivative());
  return divmod(p, g).first.monic();
}

std::vector<std::pair<RationalPoly, int>> squarefree_decomposition(const RationalPoly& p) {
  if (p.is_zero()) throw DomainError("squarefree decomposition of the zero polynomial");
  std::vector<std::pair<RationalPoly, int>> out;
  if (p.degree() <= 0) return out;
  const RationalPoly f = p.monic();
  const RationalPoly fp = f.derivative();
  RationalPoly a = poly_gcd(f, fp);
  RationalPoly b = divmod(f, a).first;
  RationalPoly c = divmod(fp, a).first;
  RationalPoly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    RationalPoly g = poly_gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g, i);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

}  // namespace einhom
