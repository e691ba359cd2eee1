#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "einhom/curvature.hpp"
#include "einhom/lie_oracle.hpp"
#include "einhom/solvers.hpp"

using namespace einhom;

namespace {

constexpr auto SO = GroupFamily::Orthogonal;
constexpr auto SP = GroupFamily::Symplectic;

struct Outcome {
  bool pass = false;
  std::string detail;
};

Rational random_positive(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(1, 60);
  std::uniform_int_distribution<int> den(1, 17);
  return make_rational(num(rng), den(rng));
}

std::vector<Rational> random_point(std::mt19937& rng, std::size_t n) {
  std::vector<Rational> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_positive(rng));
  return v;
}

void compositions(int n, int max_parts, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    if (!prefix.empty()) out.push_back(prefix);
    return;
  }
  if (static_cast<int>(prefix.size()) == max_parts) return;
  for (int first = 1; first <= n; ++first) {
    prefix.push_back(first);
    compositions(n - first, max_parts, prefix, out);
    prefix.pop_back();
  }
}

Outcome table_criterion(GroupFamily family) {
  std::string tag(family_tag(family));
  const char* argv[] = {"einhom", "tables", "--family", tag.c_str(), "--format", "csv"};
  std::ostringstream out, err;
  int code = cli::main_entry(6, argv, out, err);
  if (code != cli::kOk) return {false, "exit code " + std::to_string(code)};
  CountGrid grid = grid_from_csv(out.str());
  const CountGrid& ref = reference_table(family);
  if (grid.ks != int_range(3, 20) || grid.ls != int_range(1, 20)) return {false, "unexpected grid shape"};
  int cells = 0, wrong = 0;
  for (std::size_t r = 0; r < grid.ls.size(); ++r)
    for (std::size_t c = 0; c < grid.ks.size(); ++c, ++cells) wrong += grid.counts[r][c] != ref.counts[r][c];
  return {wrong == 0 && cells == 360, std::to_string(cells - wrong) + "/" + std::to_string(cells) + " cells equal"};
}

Outcome oracle_criterion() {
  std::vector<SpaceSpec> specs;
  for (int n = 3; n <= 8; ++n) {
    std::vector<int> prefix;
    std::vector<std::vector<int>> parts;
    compositions(n, 3, prefix, parts);
    for (auto& blocks : parts) {
      const int len = static_cast<int>(blocks.size());
      specs.emplace_back(SO, blocks, len == 1 ? 1 : len - 1, len == 1 ? 0 : 1);
    }
  }
  for (int n = 2; n <= 4; ++n) {
    std::vector<int> prefix;
    std::vector<std::vector<int>> parts;
    compositions(n, n, prefix, parts);
    for (auto& blocks : parts) {
      const int len = static_cast<int>(blocks.size());
      specs.emplace_back(SP, blocks, len == 1 ? 1 : len - 1, len == 1 ? 0 : 1);
    }
  }
  double sym = 0, ratio = 0;
  std::size_t failures = 0, symbols = 0, ratios = 0;
  for (const auto& spec : specs) {
    auto report = oracle_report(spec);
    sym = std::max(sym, report.max_symbol_deviation);
    ratio = std::max(ratio, report.max_ratio_deviation);
    for (const auto& row : report.ratios) ratio = std::max(ratio, row.ratio_sum_deviation);
    symbols += report.symbols.size();
    ratios += report.ratios.size();
    if (!report.passed(1e-9)) ++failures;
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu patterns, %zu symbols, %zu ratios, max deviations %.1e / %.1e", specs.size(),
                symbols, ratios, sym, ratio);
  return {failures == 0 && sym < 1e-9 && ratio < 1e-9, buf};
}

Outcome identity_criterion() {
  std::mt19937 rng(20240101);
  long checks = 0, failures = 0;
  for (auto family : {SO, SP}) {
    for (int s = 1; s <= 4; ++s)
      for (int k = 1; k <= 5; ++k)
        for (int l = 1; l <= 6; ++l) {
          SpaceSpec spec = SpaceSpec::three_block(family, s, k, l);
          if (!check_generic(spec)) continue;
          for (int i = 0; i < 20; ++i) {
            MetricParams m(spec, random_point(rng, spec.modules().size()));
            ++checks;
            failures += scalar_curvature_generic(spec, m) != scalar_curvature_closed(spec, m);
          }
          if (s < 2) continue;
          auto c = three_block_form(family, s, k, l);
          Rational scale = three_block_scale(family, s, k, l);
          for (int i = 0; i < 20; ++i) {
            auto p = random_point(rng, 3);
            auto m = MetricParams::three_block(spec, p[0], p[1], p[2]);
            Rational generic = scalar_curvature_generic(spec, m);
            ++checks;
            bool bad = generic != scalar_curvature_closed(spec, m) || generic != scale * three_block_value(c, p[0], p[1], p[2]);
            if (bad && std::getenv("EINHOM_ACCEPTANCE_VERBOSE"))
              std::printf("  identity mismatch %s s=%d k=%d l=%d\n", std::string(family_tag(family)).c_str(), s, k, l);
            failures += bad;
          }
        }
    for (int s = 2; s <= 6; ++s)
      for (int k = 1; k <= 8; ++k)
        for (int l = 1; l <= 12; ++l) {
          auto c = three_block_coefficients(family, s, k, l);
          ++checks;
          bool d_ok = c.d * (c.q + 2 * c.p) == c.p * c.b - c.q * c.a;
          bool f_ok = c.f * c.p == c.q * c.e;
          if (c.q + 2 * c.p != 0) d_ok = d_ok && c.d == (c.p * c.b - c.q * c.a) / (c.q + 2 * c.p);
          if (c.p != 0) f_ok = f_ok && c.f == c.q * c.e / c.p;
          failures += !(d_ok && f_ok && coefficient_relations_hold(c));
        }
  }
  return {failures == 0 && checks > 0, std::to_string(checks - failures) + "/" + std::to_string(checks) + " exact identities"};
}

Outcome certification_criterion() {
  long solutions = 0, bad = 0, system_checked = 0;
  double worst = 0, worst_system = 0;
  auto record = [&](const EinsteinSolution& s, bool need_system) {
    ++solutions;
    worst = std::max(worst, s.certificate.residual_inf);
    if (!(s.certificate.residual_inf < 1e-8) || s.flagged) ++bad;
    if (need_system) {
      ++system_checked;
      if (!s.full_system_residual || !(*s.full_system_residual < 1e-8)) {
        ++bad;
      } else {
        worst_system = std::max(worst_system, *s.full_system_residual);
      }
    }
  };
  bool exact_jensen = true;
  for (int k2 = 1; k2 <= 20; ++k2) {
    auto sols = jensen_solve(SO, 2, k2);
    exact_jensen = exact_jensen && sols.size() == 1 && sols[0].certificate.exact_zero &&
                   sols[0].certificate.residual_inf == 0.0;
    SpaceSpec spec(SO, {2, k2}, 1, 1);
    MetricParams m(spec, std::vector<Rational>{1, make_rational(k2 + 1, 2 * k2)});
    exact_jensen = exact_jensen && verify_einstein(spec, m).exact_zero;
  }
  for (auto family : {SO, SP}) {
    for (int k1 = family == SO ? 2 : 1; k1 <= 12; ++k1)
      for (int k2 = 1; k2 <= 12; ++k2)
        for (const auto& s : jensen_solve(family, k1, k2)) record(s, false);
    for (int k = family == SO ? 3 : 1; k <= 20; ++k)
      for (int l = 1; l <= 20; ++l)
        for (const auto& s : quartic_solve(family, k, l)) record(s, true);
    for (int s = 2; s <= 6; ++s)
      for (int k = family == SO ? 3 : 1; k <= 6; ++k)
        for (int l = 1; l <= 8; ++l)
          for (const auto& sol : general_solve(family, s, k, l)) record(sol, s == 2);
  }
  char buf[240];
  std::snprintf(buf, sizeof buf, "%ld solutions, worst residual %.1e, %ld full-system checks (worst %.1e), exact k1=2: %s",
                solutions, worst, system_checked, worst_system, exact_jensen ? "yes" : "no");
  return {bad == 0 && exact_jensen && solutions > 0, buf};
}

Outcome sign_criterion() {
  long cells = 0, hyp = 0;
  bool ok = true;
  for (auto family : {SO, SP}) {
    auto report = theorem_sign_checks(family, SignCheckRanges{2, 6, 1, 40, 1, 40});
    cells += report.cells;
    hyp += report.hypothesis_cells;
    ok = ok && report.ok() && report.hypothesis_cells > 0;
  }
  long direct = 0;
  for (int k = 3; k <= 40; ++k)
    for (int l = k + 1; l <= 40; ++l, ++direct) ok = ok && eval_poly(quartic_build(SO, k, l), 1) < 0;
  for (int k = 1; k <= 40; ++k)
    for (int l = k; l <= 40; ++l, ++direct) ok = ok && eval_poly(quartic_build(SP, k, l), 1) < 0;
  return {ok, std::to_string(cells) + " cells, " + std::to_string(hyp) + " under the hypotheses, " +
                  std::to_string(direct) + " quartic values checked directly"};
}

Outcome cross_branch_criterion() {
  struct Case {
    GroupFamily family;
    int k, l;
  };
  std::vector<Case> cases = {{SO, 3, 4}, {SO, 3, 5}, {SO, 4, 5}, {SO, 5, 6}, {SP, 1, 1}, {SP, 1, 2}, {SP, 2, 3}};
  int matched = 0, expected = 0;
  double worst = 0;
  bool ok = true;
  for (const auto& c : cases) {
    auto general = general_solve(c.family, 2, c.k, c.l);
    auto quartic = quartic_solve(c.family, c.k, c.l);
    auto jensen = jensen_solve(c.family, 2 * c.k, c.l);
    SpaceSpec spec = SpaceSpec::three_block(c.family, 2, c.k, c.l);
    std::vector<const EinsteinSolution*> second, first;
    for (const auto& g : general) (g.family == SolutionFamily::GeneralXneY ? second : first).push_back(&g);
    ok = ok && second.size() == quartic.size() && first.size() == jensen.size();
    for (const auto& q : quartic) {
      ++expected;
      double best = 1e300;
      for (const auto* g : second) best = std::min(best, projective_distance(q.metric, g->metric));
      worst = std::max(worst, best);
      matched += best < 1e-9;
    }
    for (const auto& j : jensen) {
      ++expected;
      auto embedded = MetricParams::three_block(spec, 1, 1, j.metric.values()[1]);
      double best = 1e300;
      for (const auto* g : first) best = std::min(best, projective_distance(embedded, g->metric));
      worst = std::max(worst, best);
      matched += best < 1e-9;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/%d solutions matched, worst distance %.1e", matched, expected, worst);
  return {ok && matched == expected && expected > 0, buf};
}

SpaceSpec random_generic_spec(std::mt19937& rng) {
  std::uniform_int_distribution<int> coin(0, 1), parts(2, 4);
  for (;;) {
    GroupFamily family = coin(rng) ? SO : SP;
    int len = parts(rng);
    std::uniform_int_distribution<int> size(family == SO ? 2 : 1, family == SO ? 5 : 3);
    std::vector<int> blocks;
    for (int i = 0; i < len; ++i) blocks.push_back(size(rng));
    int s = std::uniform_int_distribution<int>(1, len)(rng);
    SpaceSpec spec(family, blocks, s, len - s);
    if (check_generic(spec)) return spec;
  }
}

Outcome gradient_criterion() {
  std::mt19937 rng(99);
  const Rational h = pow10_inverse(6);
  double worst = 0;
  long comparisons = 0;
  for (int spec_i = 0; spec_i < 10; ++spec_i) {
    SpaceSpec spec = random_generic_spec(rng);
    ScalarField field = scalar_curvature_field(spec);
    for (int point = 0; point < 100; ++point) {
      auto x = random_point(rng, spec.modules().size());
      auto g = gradient(field, x);
      for (std::size_t i = 0; i < x.size(); ++i) {
        auto up = x, down = x;
        up[i] += h;
        down[i] -= h;
        Rational fd = (field.evaluate<Rational>(std::span<const Rational>(up)) -
                       field.evaluate<Rational>(std::span<const Rational>(down))) / (2 * h);
        double rel = std::abs(Rational(fd - g[i]).get_d()) / std::abs(g[i].get_d());
        worst = std::max(worst, rel);
        ++comparisons;
      }
    }
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "%ld partials, worst relative error %.1e", comparisons, worst);
  return {worst < 1e-6, buf};
}

Outcome plan_criterion() {
  std::string detail;
  bool ok = true;
  for (auto family : {SO, SP}) {
    auto plan = plan_many_metrics(family, 2);
    bool certified = true;
    for (const auto& m : plan.metrics) certified = certified && m.certificate.accepted(1e-8) && !m.flagged;
    ok = ok && plan.metrics.size() >= 4 && certified && plan.all_certified && plan.min_distance > 1e-6;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s(%d)/%s(%d): %zu metrics, margin %.2f", detail.empty() ? "" : "; ",
                  family == SO ? "SO" : "Sp", plan.n, family == SO ? "SO" : "Sp", plan.l, plan.metrics.size(),
                  plan.min_distance);
    detail += buf;
  }
  return {ok, detail};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria = {
      {1, "orthogonal root-count table", 10, [] { return table_criterion(SO); }},
      {2, "symplectic root-count table", 10, [] { return table_criterion(SP); }},
      {3, "brute-force oracle agreement", 60, oracle_criterion},
      {4, "exact formula identities", 0, identity_criterion},
      {5, "certification of emitted solutions", 0, certification_criterion},
      {6, "sign conditions at 1", 0, sign_criterion},
      {7, "cross-branch consistency", 0, cross_branch_criterion},
      {8, "gradient against finite differences", 0, gradient_criterion},
      {9, "many metrics on one space", 5, plan_criterion},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && secs >= c.budget_seconds) {
      o.pass = false;
      o.detail += " (over the time budget)";
    }
    failed += !o.pass;
    std::printf("[%s] %d %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
