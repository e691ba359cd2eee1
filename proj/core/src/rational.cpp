#include "einhom/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "einhom/errors.hpp"

namespace einhom {

namespace {

Integer pow10(long exponent) {
  Integer result;
  mpz_ui_pow_ui(result.get_mpz_t(), 10, static_cast<unsigned long>(exponent));
  return result;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw DomainError("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    const Rational num = parse_rational(s.substr(0, slash));
    const Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + s + "'");
    return Rational(num / den);
  }

  bool negative = false;
  std::size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = s[pos] == '-';
    ++pos;
  }
  std::string mantissa;
  long exponent = 0;
  const auto epos = s.find_first_of("eE", pos);
  std::string body = s.substr(pos, epos == std::string::npos ? std::string::npos : epos - pos);
  if (epos != std::string::npos) {
    std::string_view exp_text(s.c_str() + epos + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text[0] == '+' || exp_text[0] == '-')) {
      exp_negative = exp_text[0] == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) throw DomainError("bad exponent in '" + s + "'");
    exponent = std::strtol(std::string(exp_text).c_str(), nullptr, 10);
    if (exp_negative) exponent = -exponent;
  }
  const auto dot = body.find('.');
  if (dot != std::string::npos) {
    const std::string frac = body.substr(dot + 1);
    mantissa = body.substr(0, dot) + frac;
    exponent -= static_cast<long>(frac.size());
  } else {
    mantissa = body;
  }
  if (!all_digits(mantissa)) throw DomainError("not a rational literal: '" + std::string(text) + "'");

  Rational value(Integer(mantissa, 10));
  if (exponent > 0) value *= Rational(pow10(exponent));
  if (exponent < 0) value /= Rational(pow10(-exponent));
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string to_decimal_string(const Rational& q, int significant_digits) {
  if (q == 0) return "0";
  const bool negative = q < 0;
  const Rational a = negative ? Rational(-q) : q;

  // Find e with 10^e <= a < 10^(e+1).
  long e = static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 10));
  auto ten_pow = [](long k) {
    return k >= 0 ? Rational(pow10(k)) : Rational(Rational(1) / Rational(pow10(-k)));
  };
  while (a >= ten_pow(e + 1)) ++e;
  while (a < ten_pow(e)) --e;

  // Round a * 10^(digits-1-e) to an integer.
  const long shift = significant_digits - 1 - e;
  Rational scaled = a * ten_pow(shift);
  Integer digits = scaled.get_num() / scaled.get_den();
  const Rational rem = scaled - Rational(digits);
  if (rem * 2 >= 1) digits += 1;
  std::string ds = digits.get_str();
  long point = static_cast<long>(ds.size()) - shift;  // digits before the decimal point

  std::string out;
  if (point <= 0) {
    out = "0." + std::string(static_cast<std::size_t>(-point), '0') + ds;
  } else if (point >= static_cast<long>(ds.size())) {
    out = ds + std::string(static_cast<std::size_t>(point - static_cast<long>(ds.size())), '0');
  } else {
    out = ds.substr(0, static_cast<std::size_t>(point)) + "." + ds.substr(static_cast<std::size_t>(point));
  }
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return negative ? "-" + out : out;
}

std::string to_fraction_string(const Rational& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("make_rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational pow10_inverse(unsigned exponent) { return Rational(Rational(1) / Rational(pow10(exponent))); }

int sign(const Rational& q) { return sgn(q); }

}  // namespace einhom
