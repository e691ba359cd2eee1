#include "einhom/lie_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include <Eigen/Eigenvalues>

#include "einhom/errors.hpp"

namespace einhom {

namespace {

using cd = std::complex<double>;
constexpr double kClosureTol = 1e-9;

Eigen::VectorXd flatten(const Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.size();
  Eigen::VectorXd v(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = m.data()[i].real();
    v(n + i) = m.data()[i].imag();
  }
  return v;
}

// Block index (1-based) of every row of the n x n matrix.
std::vector<int> block_of_row(const SpaceSpec& spec) {
  std::vector<int> owner;
  for (int a = 1; a <= spec.block_count(); ++a)
    for (int r = 0; r < spec.block(a); ++r) owner.push_back(a);
  return owner;
}

ModuleId label_for(int a, int b) { return a == b ? ModuleId::diagonal(a) : ModuleId::off_diagonal(std::min(a, b), std::max(a, b)); }

// Symmetric inverse square root of a positive definite matrix.
Eigen::MatrixXd inverse_sqrt(const Eigen::MatrixXd& g, double& min_eig, double& max_eig) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  const auto& lam = es.eigenvalues();
  min_eig = lam.minCoeff();
  max_eig = lam.maxCoeff();
  if (!(min_eig > 0.0)) throw DomainError("oracle: -B Gram block is not positive definite");
  return es.eigenvectors() * lam.cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

// ---------------------------------------------------------------- MatrixBasis

std::vector<std::size_t> MatrixBasis::indices_of(const ModuleId& label) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) out.push_back(i);
  return out;
}

MatrixBasis MatrixBasis::subset(std::span<const std::size_t> indices) const {
  MatrixBasis out;
  for (auto i : indices) {
    out.elements.push_back(elements.at(i));
    if (!labels.empty()) out.labels.push_back(labels.at(i));
  }
  return out;
}

Eigen::MatrixXcd commutator(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) { return x * y - y * x; }

// ----------------------------------------------------------------- LieAlgebra

LieAlgebra::LieAlgebra(MatrixBasis basis) : basis_(std::move(basis)) {
  const std::size_t dim = basis_.size();
  if (dim == 0) return;
  const Eigen::Index rows = 2 * basis_.elements.front().size();
  flat_.resize(rows, static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    if (basis_.elements[i].size() * 2 != rows) throw DomainError("LieAlgebra: elements differ in shape");
    flat_.col(static_cast<Eigen::Index>(i)) = flatten(basis_.elements[i]);
  }
  qr_.compute(flat_);
  if (qr_.rank() != static_cast<Eigen::Index>(dim)) throw DomainError("LieAlgebra: basis elements are linearly dependent");

  ad_.assign(dim, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      double res = 0.0;
      const Eigen::VectorXd c = coordinates(commutator(basis_.elements[i], basis_.elements[j]), &res);
      closure_residual_ = std::max(closure_residual_, res);
      ad_[i].col(static_cast<Eigen::Index>(j)) = c;
      ad_[j].col(static_cast<Eigen::Index>(i)) = -c;
    }
  }
  if (closure_residual_ > kClosureTol)
    throw DomainError("LieAlgebra: span is not closed under the bracket (residual " +
                      std::to_string(closure_residual_) + ")");
}

Eigen::VectorXd LieAlgebra::coordinates(const Eigen::MatrixXcd& m, double* residual) const {
  const Eigen::VectorXd v = flatten(m);
  Eigen::VectorXd c = qr_.solve(v);
  if (residual) {
    const double nv = v.norm();
    *residual = nv == 0.0 ? 0.0 : (flat_ * c - v).norm() / nv;
  }
  return c;
}

Eigen::MatrixXd LieAlgebra::killing_gram() const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  Eigen::MatrixXd b(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = i; j < dim; ++j) {
      const double v = (ad_[static_cast<std::size_t>(i)] * ad_[static_cast<std::size_t>(j)]).trace();
      b(i, j) = v;
      b(j, i) = v;
    }
  return b;
}

BilinearForm killing_form(const MatrixBasis& basis) { return {LieAlgebra(basis).killing_gram()}; }

// ---------------------------------------------------------------- build_algebra

MatrixBasis build_algebra(const SpaceSpec& spec, const OracleCaps& caps) {
  const int n = spec.n();
  const auto owner = block_of_row(spec);
  MatrixBasis basis;
  if (spec.family() == GroupFamily::Orthogonal) {
    if (n > caps.max_orthogonal_n)
      throw CapacityError("oracle: so(" + std::to_string(n) + ") exceeds the cap n <= " +
                          std::to_string(caps.max_orthogonal_n));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, n);
        x(i, j) = 1.0;
        x(j, i) = -1.0;
        basis.elements.push_back(std::move(x));
        basis.labels.push_back(label_for(owner[static_cast<std::size_t>(i)], owner[static_cast<std::size_t>(j)]));
      }
    return basis;
  }

  if (n > caps.max_symplectic_n)
    throw CapacityError("oracle: sp(" + std::to_string(n) + ") exceeds the cap n <= " +
                        std::to_string(caps.max_symplectic_n));
  const cd I(0.0, 1.0);
  // Quaternionic entry q = A + B j placed at (i,j) and, for i != j, -conj(q) at (j,i).
  auto embed = [&](const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    Eigen::MatrixXcd x(2 * n, 2 * n);
    x.topLeftCorner(n, n) = A;
    x.topRightCorner(n, n) = -B.conjugate();
    x.bottomLeftCorner(n, n) = B;
    x.bottomRightCorner(n, n) = A.conjugate();
    return x;
  };
  auto push = [&](int i, int j, const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    basis.elements.push_back(embed(A, B));
    basis.labels.push_back(label_for(owner[static_cast<std::size_t>(i)], owner[static_cast<std::size_t>(j)]));
  };
  const Eigen::MatrixXcd Z = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(n, n);
      S(i, j) = 1.0;
      S(j, i) = 1.0;
      if (i == j) S(i, i) = 1.0;
      if (i != j) {
        Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(n, n);
        K(i, j) = 1.0;
        K(j, i) = -1.0;
        push(i, j, K, Z);
      }
      push(i, j, I * S, Z);
      push(i, j, Z, S);
      push(i, j, Z, I * S);
    }
  }
  return basis;
}

bool elements_in_family(const MatrixBasis& basis, GroupFamily family, double tol) {
  for (const auto& x : basis.elements) {
    if ((x + x.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    if (family == GroupFamily::Orthogonal) {
      if (x.imag().cwiseAbs().maxCoeff() > tol) return false;
    } else {
      const Eigen::Index n = x.rows() / 2;
      Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
      J.topRightCorner(n, n) = Eigen::MatrixXcd::Identity(n, n);
      J.bottomLeftCorner(n, n) = -Eigen::MatrixXcd::Identity(n, n);
      if ((x.transpose() * J + J * x).cwiseAbs().maxCoeff() > tol) return false;
    }
  }
  return true;
}

// ----------------------------------------------------------- triple symbols

double BruteTripleSymbols::get(const ModuleId& a, const ModuleId& b, const ModuleId& c) const {
  auto it = entries.find(TripleSymbolTable::sorted_key(a, b, c));
  return it == entries.end() ? 0.0 : it->second;
}

namespace {

struct Orthonormalized {
  // Row i holds the coefficients of e_i in the original basis.
  Eigen::MatrixXd coeffs;
  std::vector<ModuleId> labels;
  double condition = 1.0;
};

Orthonormalized orthonormalize(const LieAlgebra& g, const Eigen::MatrixXd& minus_b) {
  const auto& labels = g.basis().labels;
  std::vector<ModuleId> distinct(labels);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  Orthonormalized out;
  const auto dim = static_cast<Eigen::Index>(g.dimension());
  out.coeffs = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::Index row = 0;
  for (const auto& id : distinct) {
    const auto idx = g.basis().indices_of(id);
    const auto m = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd block(m, m);
    for (Eigen::Index r = 0; r < m; ++r)
      for (Eigen::Index c = 0; c < m; ++c)
        block(r, c) = minus_b(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(r)]),
                              static_cast<Eigen::Index>(idx[static_cast<std::size_t>(c)]));
    double lo = 0.0, hi = 0.0;
    const Eigen::MatrixXd t = inverse_sqrt(block, lo, hi);
    out.condition = std::max(out.condition, hi / lo);
    for (Eigen::Index r = 0; r < m; ++r) {
      for (Eigen::Index c = 0; c < m; ++c) out.coeffs(row, static_cast<Eigen::Index>(idx[static_cast<std::size_t>(c)])) = t(r, c);
      out.labels.push_back(id);
      ++row;
    }
  }
  return out;
}

// ad of a general element sum_a w_a b_a.
Eigen::MatrixXd ad_of(const LieAlgebra& g, const Eigen::RowVectorXd& w) {
  const auto dim = static_cast<Eigen::Index>(g.dimension());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a)
    if (w(a) != 0.0) out += w(a) * g.ad()[static_cast<std::size_t>(a)];
  return out;
}

}  // namespace

BruteTripleSymbols brute_triple_symbols(const SpaceSpec& spec, const OracleCaps& caps) {
  const LieAlgebra g(build_algebra(spec, caps));
  const Eigen::MatrixXd minus_b = -g.killing_gram();
  const Orthonormalized on = orthonormalize(g, minus_b);
  const Eigen::MatrixXd& E = on.coeffs;
  const Eigen::MatrixXd Q = E * minus_b;  // <v, e_k> = (Q v)_k

  std::vector<ModuleId> distinct(on.labels);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  BruteTripleSymbols out;
  for (std::size_t a = 0; a < distinct.size(); ++a)
    for (std::size_t b = a; b < distinct.size(); ++b)
      for (std::size_t c = b; c < distinct.size(); ++c) out.entries[{distinct[a], distinct[b], distinct[c]}] = 0.0;

  const auto dim = E.rows();
  double largest = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    // W(k, j) = <[e_i, e_j], e_k>
    const Eigen::MatrixXd W = Q * ad_of(g, E.row(i)) * E.transpose();
    for (Eigen::Index j = 0; j < dim; ++j)
      for (Eigen::Index k = 0; k < dim; ++k) {
        const auto &li = on.labels[static_cast<std::size_t>(i)], &lj = on.labels[static_cast<std::size_t>(j)],
                   &lk = on.labels[static_cast<std::size_t>(k)];
        if (!(li <= lj && lj <= lk)) continue;
        const double w = W(k, j);
        largest = std::max(largest, std::abs(w));
        out.entries[{li, lj, lk}] += w * w;
      }
  }
  out.gram_condition = on.condition;
  double max_entry = 0.0;
  for (const auto& [key, v] : out.entries) max_entry = std::max(max_entry, v);
  out.error_bound = 16.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(dim * dim) * on.condition *
                    std::max(1.0, max_entry);
  return out;
}

// ------------------------------------------------------ Killing ratio sums

KillingRatioReport verify_killing_ratio_sums(const LieAlgebra& r, std::span<const std::size_t> q_elements) {
  KillingRatioReport rep;
  const auto m = static_cast<Eigen::Index>(q_elements.size());
  if (m == 0) return rep;
  const Eigen::MatrixXd minus_b = -r.killing_gram();
  Eigen::MatrixXd block(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      block(i, j) = minus_b(static_cast<Eigen::Index>(q_elements[static_cast<std::size_t>(i)]),
                            static_cast<Eigen::Index>(q_elements[static_cast<std::size_t>(j)]));
  double lo = 0.0, hi = 0.0;
  const Eigen::MatrixXd t = inverse_sqrt(block, lo, hi);
  const auto dim = static_cast<Eigen::Index>(r.dimension());
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(m, dim);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index c = 0; c < m; ++c) F(i, static_cast<Eigen::Index>(q_elements[static_cast<std::size_t>(c)])) = t(i, c);
  const Eigen::MatrixXd Q = F * minus_b;

  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::MatrixXd W = Q * ad_of(r, F.row(i)) * F.transpose();
    rep.per_index.push_back(W.squaredNorm());
    rep.total += W.squaredNorm();
  }

  // Independent ratio from the Killing form of q alone, read along f_0.
  const LieAlgebra q(r.basis().subset(q_elements));
  const Eigen::MatrixXd bq = q.killing_gram();
  const Eigen::VectorXd f0 = t.row(0).transpose();
  const double num = f0.dot(bq * f0);
  const double den = -f0.dot(block * f0);
  rep.measured_ratio = num / den;

  for (double v : rep.per_index) rep.max_deviation = std::max(rep.max_deviation, std::abs(v - rep.measured_ratio));
  rep.max_deviation =
      std::max(rep.max_deviation, std::abs(rep.total - rep.measured_ratio * static_cast<double>(m)) / static_cast<double>(m));
  return rep;
}

// ------------------------------------------------------------ algebra checks

AlgebraChecks check_algebra(const LieAlgebra& algebra) {
  AlgebraChecks out;
  out.closure_residual = algebra.closure_residual();
  const Eigen::MatrixXd B = algebra.killing_gram();
  const double scale = std::max(1.0, B.cwiseAbs().maxCoeff());
  for (const auto& ad : algebra.ad())
    out.ad_invariance = std::max(out.ad_invariance, (ad.transpose() * B + B * ad).cwiseAbs().maxCoeff() / scale);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(-B, Eigen::EigenvaluesOnly);
  out.min_gram_eigenvalue = algebra.dimension() == 0 ? 0.0 : es.eigenvalues().minCoeff();

  const auto& labels = algebra.basis().labels;
  if (labels.empty()) return out;
  const auto dim = algebra.dimension();
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const ModuleId &a = labels[i], &b = labels[j];
      if (!a.is_diagonal()) continue;
      const Eigen::VectorXd c = algebra.ad()[i].col(static_cast<Eigen::Index>(j));
      const double norm = std::max(1.0, c.cwiseAbs().maxCoeff());
      double stray = 0.0;
      if (b.is_diagonal() && b != a) {
        stray = c.cwiseAbs().maxCoeff();
      } else if (b == a || (!b.is_diagonal() && (b.first() == a.first() || b.second() == a.first()))) {
        for (std::size_t k = 0; k < dim; ++k)
          if (labels[k] != b) stray = std::max(stray, std::abs(c(static_cast<Eigen::Index>(k))));
      }
      out.bracket_consistency = std::max(out.bracket_consistency, stray / norm);
    }
  }
  return out;
}

// ------------------------------------------------------------- oracle report

bool OracleReport::passed(double tol) const {
  return max_symbol_deviation < tol && max_ratio_deviation < tol && checks.ad_invariance < 1e-10 &&
         checks.bracket_consistency < 1e-10 && checks.min_gram_eigenvalue > 0.0;
}

OracleReport oracle_report(const SpaceSpec& spec, const OracleCaps& caps) {
  OracleReport rep;
  const auto closed = triple_symbols(spec);
  const auto brute = brute_triple_symbols(spec, caps);
  rep.error_bound = brute.error_bound;

  std::map<TripleSymbolTable::Key, OracleSymbolRow> rows;
  for (const auto& [key, v] : brute.entries) rows[key] = {key, 0.0, v};
  for (const auto& [key, v] : closed.entries()) {
    auto& row = rows[key];
    row.key = key;
    row.closed = v.get_d();
  }
  for (auto& [key, row] : rows) {
    rep.max_symbol_deviation = std::max(rep.max_symbol_deviation, std::abs(row.closed - row.brute));
    rep.symbols.push_back(row);
  }

  const LieAlgebra g(build_algebra(spec, caps));
  rep.checks = check_algebra(g);
  const int m = spec.block_count();
  auto add_ratio = [&](std::vector<int> blocks) {
    std::vector<std::size_t> idx;
    int size = 0;
    for (int a : blocks) size += spec.block(a);
    for (std::size_t i = 0; i < blocks.size(); ++i)
      for (std::size_t j = i; j < blocks.size(); ++j) {
        const auto part = g.basis().indices_of(label_for(blocks[i], blocks[j]));
        idx.insert(idx.end(), part.begin(), part.end());
      }
    if (idx.empty()) return;
    std::sort(idx.begin(), idx.end());
    const KillingRatioReport sums = verify_killing_ratio_sums(g, idx);
    OracleRatioRow row{std::move(blocks), size, killing_ratio(spec.family(), spec.n(), size).get_d(), sums.measured_ratio, 0.0};
    for (double v : sums.per_index) row.ratio_sum_deviation = std::max(row.ratio_sum_deviation, std::abs(v - row.closed));
    rep.max_ratio_deviation =
        std::max({rep.max_ratio_deviation, row.ratio_sum_deviation, std::abs(row.measured - row.closed)});
    rep.ratios.push_back(std::move(row));
  };
  for (int a = 1; a <= m; ++a) add_ratio({a});
  for (int a = 1; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b) add_ratio({a, b});
  return rep;
}

}  // namespace einhom
