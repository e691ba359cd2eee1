#include <algorithm>
#include <cmath>

#include "einhom/errors.hpp"
#include "einhom/solvers.hpp"
#include "solver_detail.hpp"

namespace einhom {

std::string_view family_label(SolutionFamily f) {
  switch (f) {
    case SolutionFamily::Jensen: return "Jensen";
    case SolutionFamily::QuarticSO: return "QuarticSO";
    case SolutionFamily::QuarticSp: return "QuarticSp";
    case SolutionFamily::GeneralXeqY: return "GeneralXeqY";
    case SolutionFamily::GeneralXneY: return "GeneralXneY";
  }
  return "?";
}

namespace detail {

void add_note(EinsteinSolution& sol, const std::string& text) {
  if (!sol.note.empty()) sol.note += "; ";
  sol.note += text;
}

void certify(EinsteinSolution& sol, const SolverOptions& opts) {
  sol.certificate = verify_einstein(sol.spec, sol.metric);
  if (!sol.certificate.accepted(opts.tolerance)) {
    sol.flagged = true;
    add_note(sol, "Lagrange residual above tolerance");
  }
}

double full_residual_of(const MetricParams& metric) {
  const SpaceSpec& spec = metric.spec();
  if (spec.s() != 2 || spec.t() != 1) throw DomainError("full system needs s = 2, t = 1");
  const std::array<int, 3> blocks{spec.block(1), spec.block(2), spec.block(3)};
  return full_system_residual(spec.family(), blocks, metric.values());
}

}  // namespace detail

void sort_solutions(std::vector<EinsteinSolution>& solutions) {
  std::stable_sort(solutions.begin(), solutions.end(), [](const EinsteinSolution& a, const EinsteinSolution& b) {
    const auto na = a.metric.normalized();
    const auto nb = b.metric.normalized();
    if (na.back() != nb.back()) return na.back() < nb.back();
    return na < nb;
  });
}

double projective_distance(const MetricParams& a, const MetricParams& b) {
  const auto na = a.normalized();
  const auto nb = b.normalized();
  if (na.size() != nb.size()) return 1.0;
  double d = 0.0;
  for (std::size_t i = 0; i < na.size(); ++i) d = std::max(d, std::abs(na[i] - nb[i]));
  return d;
}

bool projectively_equal(const MetricParams& a, const MetricParams& b, double tol) {
  return a.spec() == b.spec() && projective_distance(a, b) < tol;
}

std::vector<QuadraticSurd> quadratic_roots(const Rational& A, const Rational& B, const Rational& C) {
  if (A == 0) {
    if (B == 0) return {};
    return {QuadraticSurd(Rational(-C / B))};
  }
  const Rational disc = B * B - 4 * A * C;
  if (disc < 0) return {};
  // sqrt(p/q) = sqrt(p q) / q
  const Integer num = disc.get_num() * disc.get_den();
  const Rational scale = Rational(1) / Rational(disc.get_den());
  const QuadraticSurd root(Rational(0), scale, num);
  const QuadraticSurd two_a(Rational(2 * A));
  std::vector<QuadraticSurd> out{(QuadraticSurd(Rational(-B)) - root) / two_a, (QuadraticSurd(Rational(-B)) + root) / two_a};
  std::sort(out.begin(), out.end());
  if (disc == 0) out.pop_back();
  return out;
}

std::vector<EinsteinSolution> jensen_solve(GroupFamily family, int k1, int k2, const SolverOptions& opts) {
  const bool so = family == GroupFamily::Orthogonal;
  if (so && k1 < 2) throw DomainError("jensen_solve: orthogonal family needs k1 >= 2");
  if (!so && k1 < 1) throw DomainError("jensen_solve: symplectic family needs k1 >= 1");
  if (k2 < 1) throw DomainError("jensen_solve: need k2 >= 1");
  const SpaceSpec spec(family, {k1, k2}, 1, 1);

  // Quadratic in w = x12 / x1.
  const Rational A = so ? Rational(k1 - 2) : Rational(2 * (k1 + 1));
  const Rational B = so ? Rational(-2 * (k1 + k2 - 2)) : Rational(-4 * (k1 + k2 + 1));
  const Rational C = so ? Rational(k1 + k2 - 1) : Rational(2 * k1 + 2 * k2 + 1);

  std::vector<EinsteinSolution> out;
  for (const auto& w : quadratic_roots(A, B, C)) {
    if (w.sign() <= 0) continue;
    const Rational wq = w.is_rational() ? w.rational_part() : w.approximate(opts.root_eps);
    EinsteinSolution sol(MetricParams(spec, std::vector<Rational>{Rational(1), wq}), SolutionFamily::Jensen);
    sol.exactness = Exactness::ClosedForm;
    sol.closed_form = {QuadraticSurd(Rational(1)), w};
    detail::certify(sol, opts);
    if (verify_einstein_exact(spec, sol.closed_form)) {
      sol.certificate.exact_zero = true;
      sol.flagged = false;
      sol.note.clear();
    } else {
      sol.flagged = true;
      detail::add_note(sol, "exact Lagrange check failed");
    }
    out.push_back(std::move(sol));
  }
  return out;
}

}  // namespace einhom
