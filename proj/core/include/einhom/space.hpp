#pragma once

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "einhom/rational.hpp"

namespace einhom {

enum class GroupFamily { Orthogonal, Symplectic };

std::string_view family_tag(GroupFamily f);  // "so" / "sp"
GroupFamily parse_family(std::string_view tag);

/// Irreducible summand label: Diagonal(i) = p_i, OffDiagonal(i,j) = p_(i,j).
/// Indices are 1-based.
class ModuleId {
 public:
  /// Diagonal(1).
  ModuleId() = default;
  static ModuleId diagonal(int i);
  static ModuleId off_diagonal(int i, int j);

  bool is_diagonal() const { return j_ == 0; }
  int first() const { return i_; }
  /// Second block index; equals first() for Diagonal.
  int second() const { return j_ == 0 ? i_ : j_; }
  /// "x1" or "x(1,2)".
  std::string to_string() const;
  static ModuleId parse(std::string_view text);

  friend auto operator<=>(const ModuleId&, const ModuleId&) = default;

 private:
  ModuleId(int i, int j) : i_(i), j_(j) {}
  int i_ = 1;
  int j_ = 0;
};

/// G/H with G = SO(n) or Sp(n), K = G(k_1) x ... x G(k_{s+t}) standardly embedded,
/// the first s blocks forming L' and the last t forming H = H'.
class SpaceSpec {
 public:
  /// Validates len(blocks) = s + t >= 1, blocks positive, n >= 2.
  SpaceSpec(GroupFamily family, std::vector<int> blocks, int s, int t);

  /// s blocks of size k followed by one block of size l.
  static SpaceSpec three_block(GroupFamily family, int s, int k, int l);

  GroupFamily family() const { return family_; }
  const std::vector<int>& blocks() const { return blocks_; }
  int s() const { return s_; }
  int t() const { return t_; }
  int block_count() const { return s_ + t_; }
  int n() const { return n_; }
  /// k_i, 1-based.
  int block(int i) const;
  /// Sum of the isotropy blocks k_{s+1} + ... + k_{s+t}.
  int isotropy_size() const;

  /// Summands of p in canonical order: Diagonal(1..s), then OffDiagonal(i,j) lexicographic.
  std::vector<ModuleId> modules() const;
  bool is_module(const ModuleId& id) const;
  /// Position of id in modules().
  std::size_t module_index(const ModuleId& id) const;

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;

 private:
  GroupFamily family_;
  std::vector<int> blocks_;
  int s_;
  int t_;
  int n_;
};

/// [alpha beta gamma] keyed by the sorted triple. Diagonal(a) entries are kept
/// for every block a, including isotropy blocks a > s (they are not summands of
/// p but are used by oracle cross-checks).
class TripleSymbolTable {
 public:
  using Key = std::array<ModuleId, 3>;

  void set(ModuleId a, ModuleId b, ModuleId c, Rational value);
  /// Symmetric lookup; zero for absent triples.
  Rational get(ModuleId a, ModuleId b, ModuleId c) const;
  const std::map<Key, Rational>& entries() const { return entries_; }

  static Key sorted_key(ModuleId a, ModuleId b, ModuleId c);

 private:
  std::map<Key, Rational> entries_;
};

long module_dimension(const SpaceSpec& spec, const ModuleId& id);

/// alpha of G(k) inside G(n) for the standard embedding: (k-2)/(n-2) or (k+1)/(n+1).
Rational killing_ratio(const SpaceSpec& spec, int sub_block_size);
Rational killing_ratio(GroupFamily family, int n, int sub_block_size);

/// Closed-form nonzero symbols for all admissible index combinations.
TripleSymbolTable triple_symbols(const SpaceSpec& spec);

/// dim G - dim H with H the product of the isotropy blocks.
long isotropy_complement_dimension(const SpaceSpec& spec);

struct GenericityReport {
  bool generic = true;
  std::string reason;
  explicit operator bool() const { return generic; }
};

/// Whether no two summands are Ad(K)-equivalent, so the diagonal metric family
/// is the full set of Ad(K)-invariant metrics.
GenericityReport check_generic(const SpaceSpec& spec);

}  // namespace einhom
