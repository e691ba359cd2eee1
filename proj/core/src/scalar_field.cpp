#include "einhom/scalar_field.hpp"

#include <algorithm>
#include <sstream>

#include "einhom/errors.hpp"

namespace einhom {

namespace {

Monomial canonical(Monomial m) {
  std::sort(m.begin(), m.end());
  Monomial out;
  for (const auto& [v, e] : m) {
    if (!out.empty() && out.back().first == v)
      out.back().second += e;
    else
      out.emplace_back(v, e);
  }
  std::erase_if(out, [](const auto& f) { return f.second == 0; });
  return out;
}

}  // namespace

void ScalarField::add_term(const Rational& coeff, std::initializer_list<std::pair<int, int>> factors) {
  add_term(coeff, Monomial(factors));
}

void ScalarField::add_term(const Rational& coeff, Monomial factors) {
  if (coeff == 0) return;
  for (const auto& f : factors)
    if (f.first < 0 || f.first >= vars_) throw DomainError("ScalarField: variable index out of range");
  auto key = canonical(std::move(factors));
  auto& slot = terms_[key];
  slot += coeff;
  if (slot == 0) terms_.erase(key);
}

ScalarField ScalarField::partial(int variable) const {
  if (variable < 0 || variable >= vars_) throw DomainError("ScalarField: variable index out of range");
  ScalarField out(vars_);
  for (const auto& [mono, c] : terms_) {
    auto it = std::find_if(mono.begin(), mono.end(), [&](const auto& f) { return f.first == variable; });
    if (it == mono.end()) continue;
    Monomial m = mono;
    auto& e = m[static_cast<std::size_t>(it - mono.begin())].second;
    const int old = e;
    e -= 1;
    out.add_term(c * old, std::move(m));
  }
  return out;
}

std::vector<ScalarField> ScalarField::gradient() const {
  std::vector<ScalarField> g;
  g.reserve(static_cast<std::size_t>(vars_));
  for (int v = 0; v < vars_; ++v) g.push_back(partial(v));
  return g;
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  if (other.vars_ != vars_) throw DomainError("ScalarField: variable count mismatch");
  for (const auto& [m, c] : other.terms_) add_term(c, m);
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  if (other.vars_ != vars_) throw DomainError("ScalarField: variable count mismatch");
  for (const auto& [m, c] : other.terms_) add_term(-c, m);
  return *this;
}

ScalarField& ScalarField::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  if (a.vars_ != b.vars_) throw DomainError("ScalarField: variable count mismatch");
  ScalarField out(a.vars_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      out.add_term(ca * cb, std::move(m));
    }
  }
  return out;
}

std::string ScalarField::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    os << to_fraction_string(abs(c));
    for (const auto& [v, e] : m) {
      os << "*x" << v;
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

}  // namespace einhom
