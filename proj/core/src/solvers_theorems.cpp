#include <algorithm>
#include <cmath>
#include <limits>

#include "einhom/errors.hpp"
#include "einhom/solvers.hpp"
#include "solver_detail.hpp"

namespace einhom {

bool sign_hypothesis(GroupFamily family, int k, int l) {
  if (family == GroupFamily::Orthogonal) return k >= 3 && k < l;
  return k >= 1 && k <= l;
}

Integer quartic_at_one_closed(GroupFamily family, int k_, int l_) {
  const Integer k = k_, l = l_;
  if (family == GroupFamily::Orthogonal) return 2 * k * k - 2 * k * l + k - 2 - l * l + 2 * l;
  return 4 * k * k - 4 * k * l - k - 2 * l - 1 - 2 * l * l;
}

Integer p_at_one_closed(GroupFamily family, int s_, int k_, int l_) {
  const Integer s = s_, k = k_, l = l_;
  const Integer common = s * s * k * k * k * k * l * (s - 1) * (s - 1);
  if (family == GroupFamily::Orthogonal)
    return Integer(common * (k - 1) * (s * k * k - s * k * l + k - 2 - l * l + 2 * l) / 2);
  return Integer(8 * common * (2 * k + 1) * (2 * s * k * k - 2 * s * k * l - k - 2 * l - 1 - 2 * l * l));
}

SignCheckReport theorem_sign_checks(GroupFamily family, const SignCheckRanges& ranges) {
  SignCheckReport rep;
  const int k_lo = std::max(ranges.k_min, family == GroupFamily::Orthogonal ? 3 : 1);
  auto cell = [](const char* what, int s, int k, int l) {
    std::string out = std::string(what) + " at";
    if (s > 0) out += " s=" + std::to_string(s);
    return out + " k=" + std::to_string(k) + " l=" + std::to_string(l);
  };
  auto tally = [&](bool hyp, const Rational& value, const std::string& where) {
    ++rep.cells;
    if (hyp) {
      ++rep.hypothesis_cells;
      if (!(value < 0)) rep.violations.push_back(where + " is " + value.get_str());
    } else if (value < 0) {
      ++rep.outside_negative;
    }
  };

  for (int k = k_lo; k <= ranges.k_max; ++k) {
    for (int l = std::max(1, ranges.l_min); l <= ranges.l_max; ++l) {
      const bool hyp = sign_hypothesis(family, k, l);
      const Rational f1 = quartic_build(family, k, l)(Rational(1));
      if (f1 != Rational(quartic_at_one_closed(family, k, l))) rep.mismatches.push_back(cell("F(1)", 0, k, l));
      tally(hyp, f1, cell("F(1)", 0, k, l));
      for (int s = std::max(2, ranges.s_min); s <= ranges.s_max; ++s) {
        const Rational p1 = general_reduce(three_block_form(family, s, k, l)).P(Rational(1));
        if (p1 != Rational(p_at_one_closed(family, s, k, l))) rep.mismatches.push_back(cell("P(1)", s, k, l));
        tally(hyp, p1, cell("P(1)", s, k, l));
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------- planner

std::vector<double> entry_profile(const MetricParams& metric) {
  const SpaceSpec& spec = metric.spec();
  std::vector<int> owner;
  for (int a = 1; a <= spec.block_count(); ++a)
    for (int r = 0; r < spec.block(a); ++r) owner.push_back(a);
  const bool so = spec.family() == GroupFamily::Orthogonal;
  std::vector<double> out;
  const int n = spec.n();
  for (int i = 0; i < n; ++i) {
    for (int j = so ? i + 1 : i; j < n; ++j) {
      const int a = owner[static_cast<std::size_t>(i)], b = owner[static_cast<std::size_t>(j)];
      if (a > spec.s() && b > spec.s() && a == b) continue;
      const ModuleId id = a == b ? ModuleId::diagonal(a) : ModuleId::off_diagonal(std::min(a, b), std::max(a, b));
      out.push_back(metric[id].get_d());
    }
  }
  const double mx = *std::max_element(out.begin(), out.end());
  for (auto& v : out) v /= mx;
  return out;
}

namespace {

std::vector<int> first_primes(int count, int at_least) {
  std::vector<int> out;
  for (int c = std::max(2, at_least); static_cast<int>(out.size()) < count; ++c) {
    bool prime = true;
    for (int d = 2; d * d <= c; ++d)
      if (c % d == 0) {
        prime = false;
        break;
      }
    if (prime) out.push_back(c);
  }
  return out;
}

}  // namespace

ManyMetricsPlan plan_many_metrics(GroupFamily family, int p, const SolverOptions& opts) {
  if (p < 1) throw DomainError("plan_many_metrics: need p >= 1");
  if (p > 6) throw CapacityError("plan_many_metrics: p > 6 is beyond desk scale");
  const bool so = family == GroupFamily::Orthogonal;
  ManyMetricsPlan plan;
  plan.family = family;
  plan.p = p;
  plan.primes = first_primes(p, so ? 3 : 2);
  long m = 1;
  for (int a : plan.primes) m *= a;
  if (p == 1) m *= 2;
  plan.l = plan.primes.back() + (so ? 1 : 0);
  plan.n = static_cast<int>(m) + plan.l;

  plan.all_certified = true;
  for (int k : plan.primes) {
    const int s = static_cast<int>(m / k);
    PlanInstance inst{k, s, SpaceSpec::three_block(family, s, k, plan.l), general_solve(family, s, k, plan.l, opts)};
    for (const auto& sol : inst.solutions) {
      if (sol.flagged) plan.all_certified = false;
      if (sol.family == SolutionFamily::GeneralXneY) plan.metrics.push_back(sol);
    }
    plan.instances.push_back(std::move(inst));
  }
  if (plan.metrics.size() < static_cast<std::size_t>(2 * p)) plan.all_certified = false;

  plan.min_distance = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> profiles;
  for (const auto& sol : plan.metrics) profiles.push_back(entry_profile(sol.metric));
  for (std::size_t i = 0; i < profiles.size(); ++i)
    for (std::size_t j = i + 1; j < profiles.size(); ++j) {
      double d = 0.0;
      for (std::size_t e = 0; e < profiles[i].size(); ++e) d = std::max(d, std::abs(profiles[i][e] - profiles[j][e]));
      plan.min_distance = std::min(plan.min_distance, d);
    }
  if (profiles.size() < 2) plan.min_distance = 0.0;
  return plan;
}

}  // namespace einhom
