#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "einhom/curvature.hpp"
#include "einhom/polynomial.hpp"
#include "einhom/roots.hpp"
#include "einhom/space.hpp"
#include "einhom/surd.hpp"

namespace einhom {

enum class SolutionFamily { Jensen, QuarticSO, QuarticSp, GeneralXeqY, GeneralXneY };
std::string_view family_label(SolutionFamily f);

enum class Exactness { ClosedForm, IsolatedRoot };

struct SolverOptions {
  Rational root_eps = default_root_eps();
  double tolerance = default_residual_tolerance();
  /// general_solve certifies on the full summand decomposition up to this many summands.
  std::size_t max_generic_modules = 60;
};

struct EinsteinSolution {
  EinsteinSolution(MetricParams m, SolutionFamily f) : spec(m.spec()), metric(std::move(m)), family(f) {}

  SpaceSpec spec;
  MetricParams metric;
  SolutionFamily family = SolutionFamily::Jensen;
  EinsteinCertificate certificate;
  Exactness exactness = Exactness::ClosedForm;
  /// Exact parameters in modules() order when exactness is ClosedForm.
  std::vector<QuadraticSurd> closed_form;
  /// Isolating interval of the defining root when exactness is IsolatedRoot.
  std::optional<RootInterval> root;
  /// Residual of the polynomial system for (k, k, l) block triples, when evaluated.
  std::optional<double> full_system_residual;
  /// For the x != y branch: whether y > x holds at this solution.
  std::optional<bool> y_exceeds_x;
  bool flagged = false;
  std::string note;
};

/// Ascending normalized z (last parameter over the largest), ties by the whole vector.
void sort_solutions(std::vector<EinsteinSolution>& solutions);
/// Max-coordinate-normalized vectors agree within tol.
bool projectively_equal(const MetricParams& a, const MetricParams& b, double tol = 1e-9);
double projective_distance(const MetricParams& a, const MetricParams& b);

/// Roots of A w^2 + B w + C in Q(sqrt(B^2 - 4AC)), ascending; empty when the discriminant is negative.
std::vector<QuadraticSurd> quadratic_roots(const Rational& A, const Rational& B, const Rational& C);

// ------------------------------------------------------------------ Jensen

/// G(k1 + k2) / G(k2) with x1 = 1. Throws DomainError for so k1 < 2, sp k1 < 1, k2 < 1.
std::vector<EinsteinSolution> jensen_solve(GroupFamily family, int k1, int k2, const SolverOptions& opts = {});

// --------------------------------------------------------------- quartics

/// F_SO (k >= 3) or F_Sp (k >= 1), l >= 1.
RationalPoly quartic_build(GroupFamily family, int k, int l);
/// x as a function of the quartic root z.
Rational quartic_x(GroupFamily family, int k, int l, const Rational& z);
/// Non-Jensen metrics (x, x, 1, z, z) on blocks (k, k, l).
std::vector<EinsteinSolution> quartic_solve(GroupFamily family, int k, int l, const SolverOptions& opts = {});

struct CountGrid {
  std::vector<int> ks;
  std::vector<int> ls;
  /// counts[row of l][column of k]
  std::vector<std::vector<int>> counts;
  friend bool operator==(const CountGrid&, const CountGrid&) = default;
};

/// Exact numbers of distinct positive quartic roots.
CountGrid table_sweep(GroupFamily family, std::span<const int> ks, std::span<const int> ls);
std::vector<int> int_range(int lo, int hi);

/// Expected grid for k = 3..20, l = 1..20.
const CountGrid& reference_table(GroupFamily family);
/// CSV with header "l\k,k1,k2,..." and one row per l.
std::string grid_to_csv(const CountGrid& grid);
CountGrid grid_from_csv(std::string_view csv);
std::string grid_to_text(const CountGrid& grid);
/// Cells of `grid` that fall inside the reference range and disagree with it.
std::vector<std::string> compare_with_reference(GroupFamily family, const CountGrid& grid);

// --------------------------------------------------------- general family

struct GeneralReduction {
  ThreeBlockCoeffs coeffs;
  /// r(a+d) w^2 - p c w + e(2p+2q+r) in w = z/x, for solutions with x = y.
  RationalPoly x_eq_y_quadratic;
  /// Quartic in u = z/y for solutions with x != y.
  RationalPoly P;
  /// d(q+2p) > aq, which forces y > x on the second branch.
  bool forces_y_exceeds_x = false;
};

/// Throws InconsistencyError when the coefficient relations fail.
GeneralReduction general_reduce(const ThreeBlockCoeffs& coeffs);
/// x = a q y z^2 / (p f y^2 + d (q+2p) z^2).
Rational general_recover_x(const ThreeBlockCoeffs& c, const Rational& y, const Rational& z);

/// Three-block space G(sk + l)/G(l) with s blocks of size k. Solutions use z = 1.
std::vector<EinsteinSolution> general_solve(GroupFamily family, int s, int k, int l, const SolverOptions& opts = {});

// ------------------------------------------------------- sign conditions

struct SignCheckRanges {
  int s_min = 2, s_max = 6;
  int k_min = 1, k_max = 40;
  int l_min = 1, l_max = 40;
};

struct SignCheckReport {
  long cells = 0;
  long hypothesis_cells = 0;
  /// Hypothesis holds but the value is not negative.
  std::vector<std::string> violations;
  /// Closed bracket expression disagrees with direct polynomial evaluation.
  std::vector<std::string> mismatches;
  /// Cells outside the hypothesis that are negative anyway.
  long outside_negative = 0;
  bool ok() const { return violations.empty() && mismatches.empty(); }
};

/// so: 3 <= k < l; sp: 1 <= k <= l.
bool sign_hypothesis(GroupFamily family, int k, int l);
/// Closed expressions for F(1) and P(1).
Integer quartic_at_one_closed(GroupFamily family, int k, int l);
Integer p_at_one_closed(GroupFamily family, int s, int k, int l);
SignCheckReport theorem_sign_checks(GroupFamily family, const SignCheckRanges& ranges = {});

// --------------------------------------------------------------- planner

struct PlanInstance {
  int k = 0;
  int s = 0;
  SpaceSpec spec;
  std::vector<EinsteinSolution> solutions;
};

struct ManyMetricsPlan {
  GroupFamily family = GroupFamily::Orthogonal;
  int p = 1;
  int n = 0;
  int l = 0;
  std::vector<int> primes;
  std::vector<PlanInstance> instances;
  /// Non-Jensen metrics of all instances, in instance order.
  std::vector<EinsteinSolution> metrics;
  /// Smallest pairwise distance between entry profiles of the metrics.
  double min_distance = 0.0;
  bool all_certified = false;
};

/// Scale of each entry pair (i <= j) of the defining n x n matrices outside
/// the isotropy block, normalized so the largest is 1. Makes metrics on
/// different block structures of the same G/H comparable.
std::vector<double> entry_profile(const MetricParams& metric);

ManyMetricsPlan plan_many_metrics(GroupFamily family, int p, const SolverOptions& opts = {});

}  // namespace einhom
