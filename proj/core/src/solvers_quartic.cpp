#include <algorithm>
#include <sstream>

#include "einhom/errors.hpp"
#include "einhom/solvers.hpp"
#include "solver_detail.hpp"

namespace einhom {

RationalPoly quartic_build(GroupFamily family, int k_, int l_) {
  const bool so = family == GroupFamily::Orthogonal;
  if (so && k_ < 3) throw DomainError("quartic_build: orthogonal family needs k >= 3");
  if (!so && k_ < 1) throw DomainError("quartic_build: symplectic family needs k >= 1");
  if (l_ < 1) throw DomainError("quartic_build: need l >= 1");
  const long k = k_, l = l_;
  if (so) {
    return RationalPoly::from_descending({Rational(2 * (5 * k * k - 7 * k + 2)),
                                          Rational(-2 * (6 * k * k + 3 * k * l - 10 * k - 2 * l + 4)),
                                          Rational(4 * k * k + 7 * k * l - 5 * k - 6 * l + 2),
                                          Rational(-2 * l * (2 * k + l - 2)), Rational(l * (k + l))});
  }
  return RationalPoly::from_descending({Rational(2 * (10 * k * k + 7 * k + 1)),
                                        Rational(-4 * (6 * k * k + 3 * k * l + 5 * k + l + 1)),
                                        Rational(8 * k * k + 14 * k * l + 5 * k + 6 * l + 1),
                                        Rational(-4 * l * (2 * k + l + 1)), Rational(2 * l * (k + l))});
}

Rational quartic_x(GroupFamily family, int k, int l, const Rational& z) {
  const Rational z2 = z * z;
  if (family == GroupFamily::Orthogonal) return Rational(k - 2) * z2 / (Rational(3 * k - 2) * z2 + l);
  return Rational(k + 1) * z2 / (Rational(3 * k + 1) * z2 + l);
}

std::vector<EinsteinSolution> quartic_solve(GroupFamily family, int k, int l, const SolverOptions& opts) {
  const RationalPoly F = quartic_build(family, k, l);
  const SpaceSpec spec(family, {k, k, l}, 2, 1);
  std::vector<EinsteinSolution> out;
  for (const auto& iv : isolate_positive_roots(F)) {
    const Rational z = refine_root(F, iv, opts.root_eps);
    const Rational x = quartic_x(family, k, l, z);
    EinsteinSolution sol(MetricParams(spec, std::vector<Rational>{x, x, Rational(1), z, z}),
                         family == GroupFamily::Orthogonal ? SolutionFamily::QuarticSO : SolutionFamily::QuarticSp);
    sol.exactness = Exactness::IsolatedRoot;
    sol.root = iv;
    detail::certify(sol, opts);
    sol.full_system_residual = detail::full_residual_of(sol.metric);
    if (!(*sol.full_system_residual < opts.tolerance)) {
      sol.flagged = true;
      detail::add_note(sol, "polynomial system residual above tolerance");
    }
    if (!(x > 0 && x < 1)) {
      sol.flagged = true;
      detail::add_note(sol, "x outside (0, 1)");
    }
    if (iv.multiplicity_hint > 1) detail::add_note(sol, "root of multiplicity " + std::to_string(iv.multiplicity_hint));
    out.push_back(std::move(sol));
  }
  return out;
}

std::vector<int> int_range(int lo, int hi) {
  std::vector<int> out;
  for (int i = lo; i <= hi; ++i) out.push_back(i);
  return out;
}

CountGrid table_sweep(GroupFamily family, std::span<const int> ks, std::span<const int> ls) {
  if (ks.empty() || ls.empty()) throw DomainError("table_sweep: empty range");
  CountGrid grid{{ks.begin(), ks.end()}, {ls.begin(), ls.end()}, {}};
  for (int l : ls) {
    std::vector<int> row;
    row.reserve(ks.size());
    for (int k : ks) row.push_back(sturm_count_positive(quartic_build(family, k, l)));
    grid.counts.push_back(std::move(row));
  }
  return grid;
}

std::string grid_to_csv(const CountGrid& grid) {
  std::ostringstream os;
  os << "l\\k";
  for (int k : grid.ks) os << ',' << k;
  os << '\n';
  for (std::size_t r = 0; r < grid.ls.size(); ++r) {
    os << grid.ls[r];
    for (int c : grid.counts[r]) os << ',' << c;
    os << '\n';
  }
  return os.str();
}

CountGrid grid_from_csv(std::string_view csv) {
  CountGrid grid;
  std::istringstream is{std::string(csv)};
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  bool header = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line);
    if (header) {
      for (std::size_t i = 1; i < cells.size(); ++i) grid.ks.push_back(std::stoi(cells[i]));
      header = false;
      continue;
    }
    if (cells.size() != grid.ks.size() + 1) throw DomainError("grid_from_csv: ragged row");
    grid.ls.push_back(std::stoi(cells[0]));
    std::vector<int> row;
    for (std::size_t i = 1; i < cells.size(); ++i) row.push_back(std::stoi(cells[i]));
    grid.counts.push_back(std::move(row));
  }
  return grid;
}

std::string grid_to_text(const CountGrid& grid) {
  std::ostringstream os;
  os << " l\\k |";
  for (int k : grid.ks) os << (k < 10 ? "  " : " ") << k;
  os << '\n' << "-----+" << std::string(3 * grid.ks.size(), '-') << '\n';
  for (std::size_t r = 0; r < grid.ls.size(); ++r) {
    os << (grid.ls[r] < 10 ? "   " : "  ") << grid.ls[r] << " |";
    for (int c : grid.counts[r]) os << "  " << c;
    os << '\n';
  }
  return os.str();
}

std::vector<std::string> compare_with_reference(GroupFamily family, const CountGrid& grid) {
  const CountGrid& ref = reference_table(family);
  std::vector<std::string> out;
  for (std::size_t r = 0; r < grid.ls.size(); ++r) {
    for (std::size_t c = 0; c < grid.ks.size(); ++c) {
      const int l = grid.ls[r], k = grid.ks[c];
      const auto rl = std::find(ref.ls.begin(), ref.ls.end(), l);
      const auto rk = std::find(ref.ks.begin(), ref.ks.end(), k);
      if (rl == ref.ls.end() || rk == ref.ks.end()) continue;
      const int expected = ref.counts[static_cast<std::size_t>(rl - ref.ls.begin())][static_cast<std::size_t>(rk - ref.ks.begin())];
      if (expected != grid.counts[r][c])
        out.push_back("k=" + std::to_string(k) + " l=" + std::to_string(l) + ": got " +
                      std::to_string(grid.counts[r][c]) + ", expected " + std::to_string(expected));
    }
  }
  return out;
}

}  // namespace einhom
