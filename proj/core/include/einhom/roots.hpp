#pragma once

#include <vector>

#include "einhom/polynomial.hpp"
#include "einhom/rational.hpp"

namespace einhom {

/// Half-open interval (lo, hi] holding exactly one distinct real root.
struct RootInterval {
  Rational lo;
  Rational hi;
  int multiplicity_hint = 1;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo < x && x <= hi; }
};

/// Default refinement target, 1e-12.
Rational default_root_eps();

/// Sturm chain p0 = p, p1 = p', p_{i+1} = -rem(p_{i-1}, p_i), each scaled by
/// a positive constant.
class SturmSequence {
 public:
  explicit SturmSequence(const RationalPoly& p);

  /// Sign variations at x, zeros skipped.
  int variations_at(const Rational& x) const;
  int variations_at_infinity(int direction) const;
  /// Distinct real roots in (lo, hi]. Valid for any lo < hi when the chain's
  /// base polynomial is squarefree.
  int count(const Rational& lo, const Rational& hi) const;
  int count_positive() const;

  const std::vector<RationalPoly>& chain() const { return chain_; }

 private:
  std::vector<RationalPoly> chain_;
};

Rational eval_poly(const RationalPoly& p, const Rational& x);

/// Number of distinct real roots in (0, +inf). Throws DomainError on the zero polynomial.
int sturm_count_positive(const RationalPoly& p);

/// Cauchy bound: every real root r satisfies |r| < bound.
Rational cauchy_root_bound(const RationalPoly& p);

/// One interval per distinct positive real root, ascending and pairwise disjoint.
/// multiplicity_hint carries the root's multiplicity in p.
std::vector<RootInterval> isolate_positive_roots(const RationalPoly& p);

/// Rational r with |root - r| < eps. Bisection, accelerated by Newton steps that
/// are accepted only when they stay inside the bracket. Returns the root exactly
/// when a probe lands on it.
Rational refine_root(const RationalPoly& p, const RootInterval& iv, const Rational& eps = default_root_eps());

/// Refine the interval itself to width < eps (keeps the half-open bracket).
RootInterval refine_interval(const RationalPoly& p, const RootInterval& iv, const Rational& eps);

}  // namespace einhom
