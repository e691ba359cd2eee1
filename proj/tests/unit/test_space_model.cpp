#include <doctest.h>

#include <vector>

#include "einhom/errors.hpp"
#include "einhom/space.hpp"

using namespace einhom;

namespace {

std::vector<ModuleId> all_labels(const SpaceSpec& spec) {
  std::vector<ModuleId> labels;
  for (int a = 1; a <= spec.block_count(); ++a) labels.push_back(ModuleId::diagonal(a));
  for (int a = 1; a <= spec.block_count(); ++a)
    for (int b = a + 1; b <= spec.block_count(); ++b) labels.push_back(ModuleId::off_diagonal(a, b));
  return labels;
}

long label_dimension(const SpaceSpec& spec, const ModuleId& id) {
  const long ki = spec.block(id.first());
  const bool so = spec.family() == GroupFamily::Orthogonal;
  if (id.is_diagonal()) return so ? ki * (ki - 1) / 2 : ki * (2 * ki + 1);
  const long kj = spec.block(id.second());
  return so ? ki * kj : 4 * ki * kj;
}

std::vector<SpaceSpec> sample_specs() {
  std::vector<SpaceSpec> specs;
  for (auto family : {GroupFamily::Orthogonal, GroupFamily::Symplectic}) {
    specs.emplace_back(family, std::vector<int>{2, 3}, 1, 1);
    specs.emplace_back(family, std::vector<int>{3, 3, 2}, 2, 1);
    specs.emplace_back(family, std::vector<int>{4, 2, 5, 3}, 3, 1);
    specs.emplace_back(family, std::vector<int>{1, 2, 3, 4, 5}, 2, 3);
    specs.emplace_back(family, std::vector<int>{6, 7}, 2, 0);
  }
  return specs;
}

}  // namespace

TEST_CASE("family tags") {
  CHECK(family_tag(GroupFamily::Orthogonal) == "so");
  CHECK(parse_family("sp") == GroupFamily::Symplectic);
  CHECK_THROWS_AS(parse_family("su"), DomainError);
}

TEST_CASE("module ids") {
  CHECK(ModuleId::diagonal(2).to_string() == "x2");
  CHECK(ModuleId::off_diagonal(1, 3).to_string() == "x(1,3)");
  CHECK(ModuleId::parse("x(2,4)") == ModuleId::off_diagonal(2, 4));
  CHECK(ModuleId::parse("x7") == ModuleId::diagonal(7));
  CHECK(ModuleId() == ModuleId::diagonal(1));
  CHECK(ModuleId::off_diagonal(1, 2).second() == 2);
  CHECK(ModuleId::diagonal(3).second() == 3);
  CHECK_THROWS_AS(ModuleId::off_diagonal(2, 2), DomainError);
  CHECK_THROWS_AS(ModuleId::diagonal(0), DomainError);
  CHECK_THROWS_AS(ModuleId::parse("y(1,2)"), DomainError);
  CHECK_THROWS_AS(ModuleId::parse("x(1,"), DomainError);
}

TEST_CASE("space spec validation and module order") {
  SpaceSpec spec(GroupFamily::Orthogonal, {3, 3, 4}, 2, 1);
  CHECK(spec.n() == 10);
  CHECK(spec.isotropy_size() == 4);
  auto mods = spec.modules();
  std::vector<ModuleId> expected = {ModuleId::diagonal(1), ModuleId::diagonal(2), ModuleId::off_diagonal(1, 2),
                                    ModuleId::off_diagonal(1, 3), ModuleId::off_diagonal(2, 3)};
  CHECK(mods == expected);
  CHECK(spec.module_index(ModuleId::off_diagonal(1, 3)) == 3);
  CHECK_FALSE(spec.is_module(ModuleId::diagonal(3)));
  CHECK_THROWS_AS(spec.module_index(ModuleId::diagonal(3)), DomainError);
  CHECK(SpaceSpec::three_block(GroupFamily::Symplectic, 3, 2, 1) == SpaceSpec(GroupFamily::Symplectic, {2, 2, 2, 1}, 3, 1));

  CHECK_THROWS_AS(SpaceSpec(GroupFamily::Orthogonal, {3, 0}, 1, 1), DomainError);
  CHECK_THROWS_AS(SpaceSpec(GroupFamily::Orthogonal, {3, 3}, 1, 2), DomainError);
  CHECK_THROWS_AS(SpaceSpec(GroupFamily::Orthogonal, {}, 0, 0), DomainError);
  CHECK_THROWS_AS(SpaceSpec(GroupFamily::Orthogonal, {1}, 1, 0), DomainError);
  CHECK_THROWS_AS(SpaceSpec(GroupFamily::Orthogonal, {3, 3}, -1, 3), DomainError);
  CHECK_THROWS_AS(spec.block(4), DomainError);
}

TEST_CASE("module dimensions") {
  SpaceSpec so(GroupFamily::Orthogonal, {3, 2}, 1, 1);
  CHECK(module_dimension(so, ModuleId::diagonal(1)) == 3);
  CHECK(module_dimension(so, ModuleId::off_diagonal(1, 2)) == 6);
  SpaceSpec sp(GroupFamily::Symplectic, {1, 2, 3}, 2, 1);
  CHECK(module_dimension(sp, ModuleId::diagonal(1)) == 3);
  CHECK(module_dimension(sp, ModuleId::diagonal(2)) == 10);
  CHECK(module_dimension(sp, ModuleId::off_diagonal(2, 3)) == 24);
  CHECK_THROWS_AS(module_dimension(sp, ModuleId::diagonal(3)), DomainError);
}

TEST_CASE("summand dimensions add up to dim G - dim H") {
  for (const auto& spec : sample_specs()) {
    long total = 0;
    for (const auto& id : spec.modules()) total += module_dimension(spec, id);
    CHECK(total == isotropy_complement_dimension(spec));
  }
  for (int n = 2; n <= 12; ++n)
    for (int k = 1; k < n; ++k) {
      SpaceSpec spec(GroupFamily::Orthogonal, {n - k, k}, 1, 1);
      long total = 0;
      for (const auto& id : spec.modules()) total += module_dimension(spec, id);
      CHECK(total == n * (n - 1) / 2 - k * (k - 1) / 2);
    }
}

TEST_CASE("killing ratios") {
  CHECK(killing_ratio(GroupFamily::Orthogonal, 5, 3) == make_rational(1, 3));
  CHECK(killing_ratio(GroupFamily::Orthogonal, 7, 7) == 1);
  CHECK(killing_ratio(GroupFamily::Orthogonal, 7, 2) == 0);
  CHECK(killing_ratio(GroupFamily::Symplectic, 2, 1) == make_rational(2, 3));
  CHECK(killing_ratio(GroupFamily::Symplectic, 4, 4) == 1);
  CHECK(killing_ratio(SpaceSpec(GroupFamily::Symplectic, {1, 3}, 1, 1), 3) == make_rational(4, 5));
  CHECK_THROWS_AS(killing_ratio(GroupFamily::Orthogonal, 5, 6), DomainError);
  CHECK_THROWS_AS(killing_ratio(GroupFamily::Orthogonal, 5, 1), DomainError);
  CHECK_THROWS_AS(killing_ratio(GroupFamily::Orthogonal, 2, 2), DomainError);
  CHECK_THROWS_AS(killing_ratio(GroupFamily::Symplectic, 3, 0), DomainError);
}

TEST_CASE("triple symbol values") {
  SpaceSpec so(GroupFamily::Orthogonal, {2, 3}, 1, 1);
  auto t = triple_symbols(so);
  CHECK(t.get(ModuleId::diagonal(1), ModuleId::diagonal(1), ModuleId::diagonal(1)) == 0);
  CHECK(t.get(ModuleId::diagonal(2), ModuleId::diagonal(2), ModuleId::diagonal(2)) == 1);
  CHECK(t.get(ModuleId::diagonal(1), ModuleId::off_diagonal(1, 2), ModuleId::off_diagonal(1, 2)) == 1);
  CHECK(t.get(ModuleId::off_diagonal(1, 2), ModuleId::diagonal(1), ModuleId::off_diagonal(1, 2)) == 1);

  SpaceSpec so3(GroupFamily::Orthogonal, {3, 3, 4}, 2, 1);
  auto t3 = triple_symbols(so3);
  auto v = t3.get(ModuleId::off_diagonal(2, 3), ModuleId::off_diagonal(1, 2), ModuleId::off_diagonal(1, 3));
  CHECK(v == make_rational(36, 16));

  SpaceSpec sp(GroupFamily::Symplectic, {1, 1}, 1, 1);
  auto ts = triple_symbols(sp);
  CHECK(ts.get(ModuleId::diagonal(1), ModuleId::diagonal(1), ModuleId::diagonal(1)) == 2);
  CHECK(ts.get(ModuleId::diagonal(1), ModuleId::off_diagonal(1, 2), ModuleId::off_diagonal(1, 2)) == 1);
  CHECK(TripleSymbolTable::sorted_key(ModuleId::diagonal(2), ModuleId::diagonal(1), ModuleId::diagonal(3))[0] ==
        ModuleId::diagonal(1));
}

TEST_CASE("triple symbols satisfy the sum rules") {
  for (const auto& spec : sample_specs()) {
    if (spec.family() == GroupFamily::Orthogonal && spec.n() < 3) continue;
    auto table = triple_symbols(spec);
    auto labels = all_labels(spec);
    for (const auto& alpha : labels) {
      Rational sum = 0;
      for (const auto& beta : labels)
        for (const auto& gamma : labels) sum += table.get(alpha, beta, gamma);
      CHECK(sum == label_dimension(spec, alpha));
    }
    for (int a = 1; a <= spec.block_count(); ++a) {
      const int k = spec.block(a);
      if (spec.family() == GroupFamily::Orthogonal && k < 2) continue;
      auto d = ModuleId::diagonal(a);
      CHECK(table.get(d, d, d) == label_dimension(spec, d) * killing_ratio(spec, k));
    }
  }
}

TEST_CASE("genericity") {
  CHECK(check_generic(SpaceSpec(GroupFamily::Orthogonal, {3, 4}, 1, 1)));
  CHECK(check_generic(SpaceSpec(GroupFamily::Orthogonal, {2, 3}, 1, 1)));
  CHECK_FALSE(check_generic(SpaceSpec(GroupFamily::Orthogonal, {2, 2, 3}, 2, 1)));
  CHECK_FALSE(check_generic(SpaceSpec(GroupFamily::Orthogonal, {1, 3}, 1, 1)));
  CHECK_FALSE(check_generic(SpaceSpec(GroupFamily::Orthogonal, {2}, 1, 0)));
  CHECK(check_generic(SpaceSpec(GroupFamily::Symplectic, {1, 1, 1}, 2, 1)));
  auto report = check_generic(SpaceSpec(GroupFamily::Orthogonal, {3, 1}, 1, 1));
  CHECK_FALSE(report.reason.empty());
}
