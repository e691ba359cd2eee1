#include "einhom/roots.hpp"

#include <algorithm>
#include <optional>

#include "einhom/errors.hpp"

namespace einhom {

namespace {

int variations(const std::vector<int>& signs) {
  int v = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

// p with any root at zero divided out.
RationalPoly strip_zero_roots(RationalPoly p) {
  while (!p.is_zero() && p.coefficient(0) == 0) {
    std::vector<Rational> c(p.coefficients().begin() + 1, p.coefficients().end());
    p = RationalPoly(std::move(c));
  }
  return p;
}

// Largest power of two not above x (x > 0), as an exponent.
long floor_log2(const Rational& x) {
  long e = static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2));
  auto two_pow = [](long k) {
    Rational r(1);
    if (k >= 0)
      mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
    else
      mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-k));
    return r;
  };
  while (two_pow(e) > x) --e;
  while (two_pow(e + 1) <= x) ++e;
  return e;
}

// Rounds x down onto the grid 2^-bits.
Rational snap_down(const Rational& x, long bits) {
  Rational scaled = x;
  if (bits >= 0)
    mpq_mul_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), static_cast<mp_bitcnt_t>(bits));
  else
    mpq_div_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), static_cast<mp_bitcnt_t>(-bits));
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rational out(fl);
  if (bits >= 0)
    mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(bits));
  else
    mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(-bits));
  return out;
}

}  // namespace

Rational default_root_eps() { return pow10_inverse(12); }

SturmSequence::SturmSequence(const RationalPoly& p) {
  if (p.is_zero()) throw DomainError("Sturm sequence of the zero polynomial");
  chain_.push_back(p.normalized_abs());
  RationalPoly d = p.derivative();
  if (d.is_zero()) return;
  chain_.push_back(d.normalized_abs());
  while (true) {
    const RationalPoly r = divmod(chain_[chain_.size() - 2], chain_.back()).second;
    if (r.is_zero()) break;
    chain_.push_back((-r).normalized_abs());
  }
}

int SturmSequence::variations_at(const Rational& x) const {
  std::vector<int> s;
  s.reserve(chain_.size());
  for (const auto& q : chain_) s.push_back(sign(q(x)));
  return variations(s);
}

int SturmSequence::variations_at_infinity(int direction) const {
  std::vector<int> s;
  s.reserve(chain_.size());
  for (const auto& q : chain_) {
    int sg = sign(q.leading());
    if (direction < 0 && q.degree() % 2 == 1) sg = -sg;
    s.push_back(sg);
  }
  return variations(s);
}

int SturmSequence::count(const Rational& lo, const Rational& hi) const {
  return variations_at(lo) - variations_at(hi);
}

int SturmSequence::count_positive() const { return variations_at(Rational(0)) - variations_at_infinity(+1); }

Rational eval_poly(const RationalPoly& p, const Rational& x) { return p(x); }

int sturm_count_positive(const RationalPoly& p) {
  if (p.is_zero()) throw DomainError("sturm_count_positive: zero polynomial");
  if (p.degree() == 0) return 0;
  const RationalPoly sq = strip_zero_roots(squarefree_part(p));
  if (sq.degree() <= 0) return 0;
  return SturmSequence(sq).count_positive();
}

Rational cauchy_root_bound(const RationalPoly& p) {
  if (p.is_zero()) throw DomainError("root bound of the zero polynomial");
  Rational m = 0;
  const Rational& lc = p.leading();
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, abs(Rational(p.coefficient(i) / lc)));
  return m + 1;
}

std::vector<RootInterval> isolate_positive_roots(const RationalPoly& p) {
  if (p.is_zero()) throw DomainError("isolate_positive_roots: zero polynomial");
  std::vector<RootInterval> out;
  if (p.degree() <= 0) return out;

  const RationalPoly sq = strip_zero_roots(squarefree_part(p));
  if (sq.degree() <= 0) return out;
  const SturmSequence sturm(sq);

  struct Pending {
    Rational lo, hi;
    int n;
  };
  const Rational bound = cauchy_root_bound(sq);
  std::vector<Pending> stack;
  const int total = sturm.count(Rational(0), bound);
  if (total > 0) stack.push_back({Rational(0), bound, total});
  while (!stack.empty()) {
    Pending cur = stack.back();
    stack.pop_back();
    if (cur.n == 1) {
      out.push_back({cur.lo, cur.hi, 1});
      continue;
    }
    const Rational mid = (cur.lo + cur.hi) / 2;
    const int left = sturm.count(cur.lo, mid);
    const int right = cur.n - left;
    if (right > 0) stack.push_back({mid, cur.hi, right});
    if (left > 0) stack.push_back({cur.lo, mid, left});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });

  const auto factors = squarefree_decomposition(p);
  if (factors.size() > 1) {
    std::vector<SturmSequence> chains;
    chains.reserve(factors.size());
    for (const auto& f : factors) chains.emplace_back(f.first);
    for (auto& iv : out) {
      for (std::size_t i = 0; i < factors.size(); ++i) {
        if (chains[i].count(iv.lo, iv.hi) == 1) {
          iv.multiplicity_hint = factors[i].second;
          break;
        }
      }
    }
  } else if (factors.size() == 1) {
    for (auto& iv : out) iv.multiplicity_hint = factors[0].second;
  }
  return out;
}

RootInterval refine_interval(const RationalPoly& p, const RootInterval& iv, const Rational& eps) {
  if (eps <= 0) throw DomainError("refine_root: eps must be positive");
  if (!(iv.lo < iv.hi)) throw DomainError("refine_root: empty interval");
  if (p.is_zero()) throw DomainError("refine_root: zero polynomial");

  const int s_lo_p = sign(p(iv.lo));
  const int s_hi_p = sign(p(iv.hi));
  if (iv.multiplicity_hint % 2 == 1 && s_lo_p != 0 && s_hi_p != 0 && s_lo_p == s_hi_p)
    throw InconsistencyError("refine_root: interval (" + to_fraction_string(iv.lo) + ", " +
                             to_fraction_string(iv.hi) + "] does not bracket a sign change");

  // Work on the squarefree part: every root is simple there, so the bracket
  // always shows a sign change regardless of multiplicity.
  RationalPoly sq = squarefree_part(p);
  Rational lo = iv.lo;
  Rational hi = iv.hi;
  if (sq(hi) == 0) return {hi - eps / 2, hi, iv.multiplicity_hint};
  // A root sitting on the open endpoint belongs to a neighbouring interval.
  if (sq(lo) == 0) sq = divmod(sq, RationalPoly{Rational(-lo), Rational(1)}).first;
  const RationalPoly dsq = sq.derivative();
  const int s_lo = sign(sq(lo));
  const int s_hi = sign(sq(hi));
  if (s_lo == s_hi) throw InconsistencyError("refine_root: squarefree part has no sign change on interval");

  // Keeps (lo, hi] bracketing with sign(sq(lo)) = s_lo, sign(sq(hi)) = -s_lo.
  auto split = [&](const Rational& x) -> std::optional<Rational> {
    const int sx = sign(sq(x));
    if (sx == 0) return x;
    if (sx == s_lo)
      lo = x;
    else
      hi = x;
    return std::nullopt;
  };

  while (hi - lo >= eps) {
    const Rational width = hi - lo;
    const Rational mid = (lo + hi) / 2;
    // Newton probe from the midpoint, snapped to a dyadic grid of spacing
    // about width^2 so the rationals stay short.
    const Rational dm = dsq(mid);
    if (dm != 0) {
      const Rational newton = mid - sq(mid) / dm;
      if (lo < newton && newton < hi) {
        if (sq(newton) == 0) return {newton - eps / 2, newton, iv.multiplicity_hint};
        const long bits = std::max<long>(2 * (-floor_log2(width)) + 4, 8);
        const Rational a = snap_down(newton, bits);
        Rational step(1);
        mpq_div_2exp(step.get_mpq_t(), step.get_mpq_t(), static_cast<mp_bitcnt_t>(bits));
        const Rational b = a + step;
        if (lo < a && a < hi) {
          if (auto r = split(a)) return {*r - eps / 2, *r, iv.multiplicity_hint};
        }
        if (lo < b && b < hi) {
          if (auto r = split(b)) return {*r - eps / 2, *r, iv.multiplicity_hint};
        }
        if (hi - lo < width / 2) continue;
      }
    }
    if (auto r = split(mid)) return {*r - eps / 2, *r, iv.multiplicity_hint};
  }
  return {lo, hi, iv.multiplicity_hint};
}

Rational refine_root(const RationalPoly& p, const RootInterval& iv, const Rational& eps) {
  const RootInterval r = refine_interval(p, iv, eps);
  if (sign(p(r.hi)) == 0) return r.hi;
  return (r.lo + r.hi) / 2;
}

}  // namespace einhom
