#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "einhom/errors.hpp"
#include "einhom/polynomial.hpp"
#include "einhom/rational.hpp"
#include "einhom/roots.hpp"
#include "einhom/surd.hpp"

using namespace einhom;

namespace {

RationalPoly product_of_roots(const std::vector<Rational>& roots) {
  RationalPoly p{Rational(1)};
  for (const auto& r : roots) p = p * RationalPoly{Rational(-r), Rational(1)};
  return p;
}

int dense_sign_changes(const RationalPoly& p, double lo, double hi, int samples) {
  int changes = 0;
  double prev = p(lo);
  for (int i = 1; i <= samples; ++i) {
    double x = lo + (hi - lo) * i / samples;
    double v = p(x);
    if ((prev < 0 && v > 0) || (prev > 0 && v < 0)) ++changes;
    if (v != 0) prev = v;
  }
  return changes;
}

}  // namespace

TEST_CASE("rationals parse exactly") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-2/7") == make_rational(-2, 7));
  CHECK(parse_rational("0.125") == make_rational(1, 8));
  CHECK(parse_rational("1e-3") == make_rational(1, 1000));
  CHECK(parse_rational("2.5E+4") == 25000);
  CHECK(parse_rational("4/6") == make_rational(2, 3));
  CHECK_THROWS_AS(parse_rational("abc"), DomainError);
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational(""), DomainError);
}

TEST_CASE("make_rational is canonical") {
  Rational q = make_rational(4, 2);
  CHECK(q == 2);
  CHECK(q.get_den() == 1);
  CHECK(make_rational(3, -6) == make_rational(-1, 2));
  CHECK(make_rational(3, -6).get_den() == 2);
  CHECK_THROWS_AS(make_rational(1, 0), DomainError);
}

TEST_CASE("rational rendering") {
  CHECK(to_fraction_string(make_rational(-3, 9)) == "-1/3");
  CHECK(to_fraction_string(Rational(5)) == "5");
  CHECK(to_decimal_string(make_rational(2, 3)).rfind("0.6666666", 0) == 0);
  CHECK(parse_rational(to_decimal_string(make_rational(1, 8))) == make_rational(1, 8));
  CHECK(pow10_inverse(3) == make_rational(1, 1000));
  CHECK(sign(Rational(-2)) == -1);
  CHECK(sign(Rational(0)) == 0);
  CHECK(abs(Rational(-2)) == 2);
}

TEST_CASE("polynomial representation is trimmed") {
  RationalPoly p{Rational(1), Rational(2), Rational(0)};
  CHECK(p.degree() == 1);
  CHECK(RationalPoly{}.degree() == -1);
  CHECK(RationalPoly{Rational(0)}.is_zero());
  CHECK(p.coefficient(7) == 0);
  RationalPoly q = RationalPoly::from_descending({Rational(1), Rational(-3), Rational(2)});
  CHECK(q.coefficient(0) == 2);
  CHECK(q.leading() == 1);
  CHECK(q.derivative() == RationalPoly{Rational(-3), Rational(2)});
  CHECK((q - q).is_zero());
  CHECK(q(Rational(1)) == 0);
  CHECK(q(2.0) == doctest::Approx(0.0));
  CHECK(RationalPoly::monomial(3, 2).degree() == 2);
  CHECK((Rational(2) * q).monic() == q);
  CHECK((Rational(-4) * q).normalized_abs() == -q);
}

TEST_CASE("division and gcd") {
  RationalPoly a = product_of_roots({1, 2, 3});
  RationalPoly b = product_of_roots({2, 5});
  auto [quot, rem] = divmod(a, b);
  CHECK(quot * b + rem == a);
  CHECK(rem.degree() < b.degree());
  CHECK(poly_gcd(a, b).monic() == product_of_roots({2}));
  CHECK_THROWS_AS(divmod(a, RationalPoly{}), DomainError);
}

TEST_CASE("squarefree part and decomposition") {
  RationalPoly p = Rational(3) * product_of_roots({1, 1, 2, 4, 4, 4});
  CHECK(squarefree_part(p) == product_of_roots({1, 2, 4}));
  auto parts = squarefree_decomposition(p);
  std::map<int, RationalPoly> by_mult;
  for (auto& [f, m] : parts) by_mult[m] = f;
  CHECK(by_mult.size() == 3);
  CHECK(by_mult[1] == product_of_roots({2}));
  CHECK(by_mult[2] == product_of_roots({1}));
  CHECK(by_mult[3] == product_of_roots({4}));
}

TEST_CASE("sturm counts on known polynomials") {
  CHECK(sturm_count_positive(product_of_roots({1, 2})) == 2);
  CHECK(sturm_count_positive(RationalPoly{Rational(1), Rational(0), Rational(1)}) == 0);
  CHECK(sturm_count_positive(product_of_roots({-1, -3, 2})) == 1);
  CHECK(sturm_count_positive(product_of_roots({0, 2})) == 1);
  CHECK(sturm_count_positive(product_of_roots({3, 3, 3})) == 1);
  CHECK(sturm_count_positive(RationalPoly{Rational(5)}) == 0);
  CHECK_THROWS_AS(sturm_count_positive(RationalPoly{}), DomainError);

  RationalPoly f = RationalPoly::from_descending({52, -98, 68, -42, 18});
  CHECK(sturm_count_positive(f) == 2);
  SturmSequence seq(squarefree_part(f));
  CHECK(seq.count(0, 1) == 1);
  CHECK(seq.count(1, 100) == 1);
}

TEST_CASE("sturm counts agree with dense sign scanning") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> num(-40, 40);
  std::uniform_int_distribution<int> den(1, 7);
  std::uniform_int_distribution<int> count(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::set<Rational> distinct;
    int n = count(rng);
    while (static_cast<int>(distinct.size()) < n) distinct.insert(make_rational(num(rng), den(rng)));
    std::vector<Rational> roots(distinct.begin(), distinct.end());
    RationalPoly p = product_of_roots(roots);
    if (trial % 3 == 0) p = p * RationalPoly{Rational(2), Rational(0), Rational(1)};
    int expected = static_cast<int>(std::count_if(roots.begin(), roots.end(), [](const Rational& r) { return r > 0; }));
    CHECK(sturm_count_positive(p) == expected);
    CHECK(dense_sign_changes(p, 1e-9, 45.0, 60000) == expected);
  }
}

TEST_CASE("isolation brackets each positive root once") {
  std::vector<Rational> roots = {make_rational(1, 3), make_rational(1, 2), 2, 7};
  RationalPoly p = product_of_roots({make_rational(-5, 2), roots[0], roots[1], roots[2], roots[3]});
  auto ivs = isolate_positive_roots(p);
  REQUIRE(ivs.size() == 4);
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    CHECK(ivs[i].contains(roots[i]));
    if (i > 0) CHECK(ivs[i - 1].hi <= ivs[i].lo);
  }

  auto doubled = isolate_positive_roots(product_of_roots({1, 1, 3}));
  REQUIRE(doubled.size() == 2);
  CHECK(doubled[0].multiplicity_hint == 2);
  CHECK(doubled[1].multiplicity_hint == 1);
  CHECK(isolate_positive_roots(product_of_roots({-1, -2})).empty());
  CHECK(cauchy_root_bound(product_of_roots({7, -9})) > 9);
}

TEST_CASE("refinement meets the target with a small backward error") {
  RationalPoly p{Rational(-2), Rational(0), Rational(1)};
  auto ivs = isolate_positive_roots(p);
  REQUIRE(ivs.size() == 1);
  Rational eps = pow10_inverse(12);
  Rational r = refine_root(p, ivs[0], eps);
  CHECK((r - eps) * (r - eps) < 2);
  CHECK((r + eps) * (r + eps) > 2);

  RootInterval narrow = refine_interval(p, ivs[0], eps);
  CHECK(narrow.width() < eps);
  CHECK(eval_poly(p, narrow.lo) < 0);
  CHECK(eval_poly(p, narrow.hi) > 0);

  RationalPoly lin{make_rational(-1, 3), Rational(1)};
  CHECK(refine_root(lin, RootInterval{0, 1}) == make_rational(1, 3));

  RationalPoly f = RationalPoly::from_descending({52, -98, 68, -42, 18});
  for (const auto& iv : isolate_positive_roots(f)) {
    Rational z = refine_root(f, iv, eps);
    double slope = std::abs(f.derivative()(z.get_d()));
    CHECK(std::abs(eval_poly(f, z).get_d()) <= 2.0 * slope * eps.get_d());
  }
  CHECK_THROWS_AS(refine_root(p, RootInterval{2, 3}), InconsistencyError);
}

TEST_CASE("quadratic surds") {
  QuadraticSurd a(3, 1, 5);
  QuadraticSurd b(3, -1, 5);
  CHECK((a * b) == QuadraticSurd(4));
  CHECK((a + b).is_rational());
  CHECK(b.sign() > 0);
  CHECK((a - b).sign() > 0);
  CHECK(QuadraticSurd(1, 1, 2) * QuadraticSurd(1, -1, 2) == QuadraticSurd(-1));

  QuadraticSurd root8(0, 1, 8);
  CHECK(root8.radicand() == 2);
  CHECK(root8.surd_coefficient() == 2);
  CHECK(QuadraticSurd(0, 3, 9).is_rational());
  CHECK(QuadraticSurd(0, 3, 9) == QuadraticSurd(9));

  CHECK((a / a) == QuadraticSurd(1));
  CHECK(a.conjugate() == b);
  CHECK(a.to_double() == doctest::Approx(3 + std::sqrt(5.0)));
  Rational approx = a.approximate(pow10_inverse(15));
  CHECK(std::abs(approx.get_d() - (3 + std::sqrt(5.0))) < 1e-14);
  CHECK_THROWS_AS(QuadraticSurd(0, 1, 2) + QuadraticSurd(0, 1, 3), DomainError);
  CHECK_THROWS_AS(QuadraticSurd(0) / QuadraticSurd(0), DomainError);
  CHECK(abs(QuadraticSurd(1, -1, 5)) == QuadraticSurd(-1, 1, 5));
}
