#include "einhom/space.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <numeric>

#include "einhom/errors.hpp"

namespace einhom {

std::string_view family_tag(GroupFamily f) { return f == GroupFamily::Orthogonal ? "so" : "sp"; }

GroupFamily parse_family(std::string_view tag) {
  if (tag == "so" || tag == "SO" || tag == "orthogonal") return GroupFamily::Orthogonal;
  if (tag == "sp" || tag == "Sp" || tag == "symplectic") return GroupFamily::Symplectic;
  throw DomainError("unknown group family '" + std::string(tag) + "' (expected so or sp)");
}

ModuleId ModuleId::diagonal(int i) {
  if (i < 1) throw DomainError("ModuleId: block index must be >= 1");
  return ModuleId(i, 0);
}

ModuleId ModuleId::off_diagonal(int i, int j) {
  if (i < 1 || j <= i) throw DomainError("ModuleId: off-diagonal indices need 1 <= i < j");
  return ModuleId(i, j);
}

std::string ModuleId::to_string() const {
  if (is_diagonal()) return "x" + std::to_string(i_);
  return "x(" + std::to_string(i_) + "," + std::to_string(j_) + ")";
}

ModuleId ModuleId::parse(std::string_view text) {
  auto fail = [&]() -> ModuleId { throw DomainError("bad module id '" + std::string(text) + "'"); };
  if (text.size() < 2 || text[0] != 'x') return fail();
  text.remove_prefix(1);
  auto to_int = [&](std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail();
    return v;
  };
  if (text.front() == '(') {
    if (text.back() != ')') return fail();
    text = text.substr(1, text.size() - 2);
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) return fail();
    return off_diagonal(to_int(text.substr(0, comma)), to_int(text.substr(comma + 1)));
  }
  return diagonal(to_int(text));
}

SpaceSpec::SpaceSpec(GroupFamily family, std::vector<int> blocks, int s, int t)
    : family_(family), blocks_(std::move(blocks)), s_(s), t_(t), n_(0) {
  if (s < 0 || t < 0) throw DomainError("SpaceSpec: s and t must be nonnegative");
  if (static_cast<int>(blocks_.size()) != s + t || s + t < 1)
    throw DomainError("SpaceSpec: need len(blocks) = s + t >= 1");
  for (int k : blocks_)
    if (k < 1) throw DomainError("SpaceSpec: block sizes must be positive");
  n_ = std::accumulate(blocks_.begin(), blocks_.end(), 0);
  if (n_ < 2) throw DomainError("SpaceSpec: n must be at least 2");
}

SpaceSpec SpaceSpec::three_block(GroupFamily family, int s, int k, int l) {
  std::vector<int> b(static_cast<std::size_t>(s), k);
  b.push_back(l);
  return SpaceSpec(family, std::move(b), s, 1);
}

int SpaceSpec::block(int i) const {
  if (i < 1 || i > block_count()) throw DomainError("SpaceSpec: block index out of range");
  return blocks_[static_cast<std::size_t>(i - 1)];
}

int SpaceSpec::isotropy_size() const {
  return std::accumulate(blocks_.begin() + s_, blocks_.end(), 0);
}

std::vector<ModuleId> SpaceSpec::modules() const {
  std::vector<ModuleId> out;
  for (int i = 1; i <= s_; ++i) out.push_back(ModuleId::diagonal(i));
  for (int i = 1; i <= block_count(); ++i)
    for (int j = i + 1; j <= block_count(); ++j) out.push_back(ModuleId::off_diagonal(i, j));
  return out;
}

bool SpaceSpec::is_module(const ModuleId& id) const {
  if (id.is_diagonal()) return id.first() <= s_;
  return id.second() <= block_count();
}

std::size_t SpaceSpec::module_index(const ModuleId& id) const {
  if (!is_module(id)) throw DomainError("module " + id.to_string() + " is not a summand of p");
  if (id.is_diagonal()) return static_cast<std::size_t>(id.first() - 1);
  // Pairs (i, j) before (a, b) in lexicographic order.
  const int m = block_count();
  const int a = id.first();
  const int b = id.second();
  const int before_rows = (a - 1) * m - (a - 1) * a / 2;
  return static_cast<std::size_t>(s_ + before_rows + (b - a - 1));
}

TripleSymbolTable::Key TripleSymbolTable::sorted_key(ModuleId a, ModuleId b, ModuleId c) {
  Key k{a, b, c};
  std::sort(k.begin(), k.end());
  return k;
}

void TripleSymbolTable::set(ModuleId a, ModuleId b, ModuleId c, Rational value) {
  entries_[sorted_key(a, b, c)] = std::move(value);
}

Rational TripleSymbolTable::get(ModuleId a, ModuleId b, ModuleId c) const {
  const auto it = entries_.find(sorted_key(a, b, c));
  return it == entries_.end() ? Rational(0) : it->second;
}

long module_dimension(const SpaceSpec& spec, const ModuleId& id) {
  if (!spec.is_module(id)) throw DomainError("module_dimension: " + id.to_string() + " is not a summand");
  const long ki = spec.block(id.first());
  if (id.is_diagonal())
    return spec.family() == GroupFamily::Orthogonal ? ki * (ki - 1) / 2 : 2 * ki * ki + ki;
  const long kj = spec.block(id.second());
  return spec.family() == GroupFamily::Orthogonal ? ki * kj : 4 * ki * kj;
}

Rational killing_ratio(GroupFamily family, int n, int k) {
  if (family == GroupFamily::Orthogonal) {
    if (n < 3) throw DomainError("killing_ratio: so(n) needs n >= 3");
    if (k < 2 || k > n) throw DomainError("killing_ratio: need 2 <= k <= n for so");
    return make_rational(k - 2, n - 2);
  }
  if (k < 1 || k > n) throw DomainError("killing_ratio: need 1 <= k <= n for sp");
  return make_rational(k + 1, n + 1);
}

Rational killing_ratio(const SpaceSpec& spec, int sub_block_size) {
  return killing_ratio(spec.family(), spec.n(), sub_block_size);
}

TripleSymbolTable triple_symbols(const SpaceSpec& spec) {
  TripleSymbolTable table;
  const int m = spec.block_count();
  const bool so = spec.family() == GroupFamily::Orthogonal;
  const long n = spec.n();
  if (so && n < 3) throw DomainError("triple_symbols: so(n) needs n >= 3");
  const Rational den = so ? Rational(2 * (n - 2)) : Rational(n + 1);
  auto k = [&](int i) -> long { return spec.block(i); };

  for (int a = 1; a <= m; ++a) {
    const long ka = k(a);
    const Rational v = so ? Rational(ka * (ka - 1) * (ka - 2)) / den : Rational(ka * (ka + 1) * (2 * ka + 1)) / den;
    if (v != 0) table.set(ModuleId::diagonal(a), ModuleId::diagonal(a), ModuleId::diagonal(a), v);
  }
  for (int a = 1; a <= m; ++a) {
    for (int b = a + 1; b <= m; ++b) {
      const long ka = k(a), kb = k(b);
      const auto ab = ModuleId::off_diagonal(a, b);
      const Rational va = so ? Rational(ka * kb * (ka - 1)) / den : Rational(ka * kb * (2 * ka + 1)) / den;
      const Rational vb = so ? Rational(ka * kb * (kb - 1)) / den : Rational(ka * kb * (2 * kb + 1)) / den;
      if (va != 0) table.set(ModuleId::diagonal(a), ab, ab, va);
      if (vb != 0) table.set(ModuleId::diagonal(b), ab, ab, vb);
      for (int c = b + 1; c <= m; ++c) {
        const long kc = k(c);
        const Rational v = Rational(ka * kb * kc * (so ? 1 : 2)) / den;
        table.set(ab, ModuleId::off_diagonal(b, c), ModuleId::off_diagonal(a, c), v);
      }
    }
  }
  return table;
}

long isotropy_complement_dimension(const SpaceSpec& spec) {
  const bool so = spec.family() == GroupFamily::Orthogonal;
  auto dim = [so](long k) { return so ? k * (k - 1) / 2 : k * (2 * k + 1); };
  long total = dim(spec.n());
  for (int i = spec.s() + 1; i <= spec.block_count(); ++i) total -= dim(spec.block(i));
  return total;
}

GenericityReport check_generic(const SpaceSpec& spec) {
  if (spec.family() == GroupFamily::Symplectic) return {};
  if (spec.n() < 3) return {false, "so(" + std::to_string(spec.n()) + ") is abelian"};
  for (int i = 1; i <= spec.block_count(); ++i)
    if (spec.block(i) < 2)
      return {false, "block " + std::to_string(i) + " has size 1; orthogonal blocks must have size >= 2"};
  int twos = 0;
  for (int i = 1; i <= spec.s(); ++i)
    if (spec.block(i) == 2) ++twos;
  if (twos > 1) return {false, "two diagonal blocks of size 2"};
  return {};
}

}  // namespace einhom
