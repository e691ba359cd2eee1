#include <algorithm>
#include <cmath>

#include "einhom/errors.hpp"
#include "einhom/solvers.hpp"
#include "solver_detail.hpp"

namespace einhom {

GeneralReduction general_reduce(const ThreeBlockCoeffs& c) {
  for (const Rational* v : {&c.a, &c.b, &c.c, &c.d, &c.e, &c.f, &c.p, &c.q, &c.r})
    if (*v <= 0) throw DomainError("general_reduce: coefficients must be positive");
  if (!coefficient_relations_hold(c))
    throw InconsistencyError("general_reduce: coefficients violate d(q+2p) = pb - qa or fp = qe");

  GeneralReduction red;
  red.coeffs = c;
  red.x_eq_y_quadratic = RationalPoly::from_descending({c.r * (c.a + c.d), -c.p * c.c, c.e * (2 * c.p + 2 * c.q + c.r)});
  const Rational q2p = c.q + 2 * c.p;
  red.P = RationalPoly::from_descending({(2 * c.d * q2p + c.b * c.q) * c.d * c.r,
                                         -q2p * c.c * c.d * c.q,
                                         (2 * c.d * (c.r + c.q) * q2p + (c.r + 2 * c.p) * c.a * c.q) * c.f,
                                         -c.c * c.f * c.p * c.q,
                                         (c.r + 2 * c.q) * c.f * c.f * c.p});
  red.forces_y_exceeds_x = c.d * q2p > c.a * c.q;
  return red;
}

Rational general_recover_x(const ThreeBlockCoeffs& c, const Rational& y, const Rational& z) {
  return c.a * c.q * y * z * z / (c.p * c.f * y * y + c.d * (c.q + 2 * c.p) * z * z);
}

namespace {

void certify_three_block(EinsteinSolution& sol, const ScalarField& field, std::span<const Rational> weights,
                         std::span<const Rational> xyz, const SolverOptions& opts, bool generic) {
  if (generic) {
    detail::certify(sol, opts);
  } else {
    sol.certificate = lagrange_certificate(field, weights, xyz);
    if (!sol.certificate.accepted(opts.tolerance)) {
      sol.flagged = true;
      detail::add_note(sol, "Lagrange residual above tolerance");
    }
    detail::add_note(sol, "certified on the three-parameter functional");
  }
  if (sol.spec.s() == 2) {
    sol.full_system_residual = detail::full_residual_of(sol.metric);
    if (!(*sol.full_system_residual < opts.tolerance)) {
      sol.flagged = true;
      detail::add_note(sol, "polynomial system residual above tolerance");
    }
  }
}

}  // namespace

std::vector<EinsteinSolution> general_solve(GroupFamily family, int s, int k, int l, const SolverOptions& opts) {
  const ThreeBlockCoeffs coeffs = three_block_form(family, s, k, l);
  const GeneralReduction red = general_reduce(coeffs);
  const SpaceSpec spec = SpaceSpec::three_block(family, s, k, l);
  const ScalarField field = three_block_field(coeffs);
  const std::vector<Rational> weights{coeffs.p, coeffs.q, coeffs.r};
  const bool generic = spec.modules().size() <= opts.max_generic_modules;
  std::vector<EinsteinSolution> out;

  auto is_duplicate = [&](const MetricParams& m) {
    return std::any_of(out.begin(), out.end(), [&](const EinsteinSolution& s2) { return projectively_equal(s2.metric, m); });
  };

  // x = y: roots w = z / x of the quadratic; z = 1.
  const auto& qc = red.x_eq_y_quadratic.coefficients();
  for (const auto& w : quadratic_roots(qc[2], qc[1], qc[0])) {
    if (w.sign() <= 0) continue;
    const QuadraticSurd xs = QuadraticSurd(Rational(1)) / w;
    const Rational x = xs.is_rational() ? xs.rational_part() : xs.approximate(opts.root_eps);
    const MetricParams metric = MetricParams::three_block(spec, x, x, Rational(1));
    if (is_duplicate(metric)) continue;
    EinsteinSolution sol(metric, SolutionFamily::GeneralXeqY);
    sol.exactness = Exactness::ClosedForm;
    for (const auto& id : spec.modules())
      sol.closed_form.push_back(id.is_diagonal() || id.second() != spec.block_count() ? xs : QuadraticSurd(Rational(1)));
    const std::vector<Rational> xyz{x, x, Rational(1)};
    certify_three_block(sol, field, weights, xyz, opts, generic);
    const std::vector<QuadraticSurd> exact_xyz{xs, xs, QuadraticSurd(Rational(1))};
    const bool exact = generic ? verify_einstein_exact(spec, sol.closed_form) : lagrange_exact(field, weights, exact_xyz);
    if (exact) {
      sol.certificate.exact_zero = true;
    } else {
      sol.flagged = true;
      detail::add_note(sol, "exact Lagrange check failed");
    }
    out.push_back(std::move(sol));
  }

  // x != y: roots u = z / y of P; z = 1, y = 1 / u.
  for (const auto& iv : isolate_positive_roots(red.P)) {
    const Rational u = refine_root(red.P, iv, opts.root_eps);
    const Rational y = Rational(1) / u;
    const Rational x = general_recover_x(coeffs, y, Rational(1));
    const MetricParams metric = MetricParams::three_block(spec, x, y, Rational(1));
    if (is_duplicate(metric)) continue;
    EinsteinSolution sol(metric, SolutionFamily::GeneralXneY);
    sol.exactness = Exactness::IsolatedRoot;
    sol.root = iv;
    const std::vector<Rational> xyz{x, y, Rational(1)};
    certify_three_block(sol, field, weights, xyz, opts, generic);
    sol.y_exceeds_x = y > x;
    if (red.forces_y_exceeds_x && !*sol.y_exceeds_x) {
      sol.flagged = true;
      detail::add_note(sol, "expected y > x");
    }
    if (iv.multiplicity_hint > 1) detail::add_note(sol, "root of multiplicity " + std::to_string(iv.multiplicity_hint));
    out.push_back(std::move(sol));
  }
  return out;
}

}  // namespace einhom
