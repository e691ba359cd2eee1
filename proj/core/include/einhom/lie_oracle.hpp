#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "einhom/space.hpp"

namespace einhom {

struct OracleCaps {
  int max_orthogonal_n = 10;
  int max_symplectic_n = 5;
};

/// Real basis of a matrix Lie algebra. so(n) is realized by real skew matrices,
/// sp(n) by 2n x 2n complex matrices [[A, -conj B], [B, conj A]] with A
/// anti-Hermitian and B symmetric. Labels are optional; when present,
/// Diagonal(a) marks the block subalgebra g(k_a) for every block a
/// (isotropy blocks included) and OffDiagonal(a,b) marks p_(a,b).
struct MatrixBasis {
  std::vector<Eigen::MatrixXcd> elements;
  std::vector<ModuleId> labels;

  std::size_t size() const { return elements.size(); }
  /// Indices of elements carrying the given label.
  std::vector<std::size_t> indices_of(const ModuleId& label) const;
  /// Sub-basis made of the listed elements (labels kept).
  MatrixBasis subset(std::span<const std::size_t> indices) const;
};

struct BilinearForm {
  Eigen::MatrixXd gram;
};

/// Structure constants of the real span of a basis: ad(i)(c, b) is the c-th
/// coordinate of [b_i, b_b].
class LieAlgebra {
 public:
  /// Throws DomainError when the elements are dependent or the span is not
  /// closed under the commutator (relative projection residual > 1e-9).
  explicit LieAlgebra(MatrixBasis basis);

  const MatrixBasis& basis() const { return basis_; }
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<Eigen::MatrixXd>& ad() const { return ad_; }
  /// Largest relative residual seen while expressing brackets in the basis.
  double closure_residual() const { return closure_residual_; }

  /// Least-squares coordinates of a matrix in the basis, with the relative residual.
  Eigen::VectorXd coordinates(const Eigen::MatrixXcd& m, double* residual = nullptr) const;
  /// trace(ad X ad Y) over the basis.
  Eigen::MatrixXd killing_gram() const;

 private:
  MatrixBasis basis_;
  Eigen::MatrixXd flat_;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_;
  std::vector<Eigen::MatrixXd> ad_;
  double closure_residual_ = 0.0;
};

Eigen::MatrixXcd commutator(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y);

/// Labeled basis of g = so(n) or sp(n) for the block structure of spec.
/// Throws CapacityError above the caps.
MatrixBasis build_algebra(const SpaceSpec& spec, const OracleCaps& caps = {});
/// Whether every element satisfies the defining conditions of its family.
bool elements_in_family(const MatrixBasis& basis, GroupFamily family, double tol = 1e-12);

/// Killing form via the adjoint representation of the span of the basis.
BilinearForm killing_form(const MatrixBasis& basis);

struct BruteTripleSymbols {
  std::map<TripleSymbolTable::Key, double> entries;
  /// A-priori floating error bound on every entry.
  double error_bound = 0.0;
  /// Condition number of the -B Gram blocks used for orthonormalization.
  double gram_condition = 1.0;
  double get(const ModuleId& a, const ModuleId& b, const ModuleId& c) const;
};

/// [abc] = sum |<[e_i, e_j], e_k>|^2 over -B-orthonormal bases of the labeled
/// summands, for every unordered triple of labels (zeros included).
BruteTripleSymbols brute_triple_symbols(const SpaceSpec& spec, const OracleCaps& caps = {});

struct KillingRatioReport {
  std::vector<double> per_index;
  double total = 0.0;
  /// B_q(f,f) / B_r(f,f) measured from the Killing form of q itself.
  double measured_ratio = 0.0;
  /// max over i of |per_index[i] - measured_ratio|, and the summed identity.
  double max_deviation = 0.0;
};

/// Checks sum_{j,k} (B_r([f_i,f_j], f_k))^2 against the measured ratio for the
/// subalgebra spanned by the listed elements of r.
KillingRatioReport verify_killing_ratio_sums(const LieAlgebra& r, std::span<const std::size_t> q_elements);

struct AlgebraChecks {
  double ad_invariance = 0.0;
  double min_gram_eigenvalue = 0.0;
  double bracket_consistency = 0.0;
  double closure_residual = 0.0;
};

/// Ad-invariance of B, positive definiteness of -B, and label consistency of
/// brackets ([p_a, p_b] = 0, [p_a, p_(a,b)] in p_(a,b)).
AlgebraChecks check_algebra(const LieAlgebra& algebra);

struct OracleSymbolRow {
  TripleSymbolTable::Key key;
  double closed = 0.0;
  double brute = 0.0;
};

struct OracleRatioRow {
  std::vector<int> blocks;
  int size = 0;
  double closed = 0.0;
  double measured = 0.0;
  double ratio_sum_deviation = 0.0;
};

struct OracleReport {
  std::vector<OracleSymbolRow> symbols;
  std::vector<OracleRatioRow> ratios;
  AlgebraChecks checks;
  double error_bound = 0.0;
  double max_symbol_deviation = 0.0;
  double max_ratio_deviation = 0.0;
  bool passed(double tol = 1e-9) const;
};

/// Brute-force values next to the closed forms for every symbol and for the
/// Killing ratios of single blocks and adjacent block pairs.
OracleReport oracle_report(const SpaceSpec& spec, const OracleCaps& caps = {});

}  // namespace einhom
