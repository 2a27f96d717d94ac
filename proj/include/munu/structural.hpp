#pragma once

#include <algorithm>

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "munu/common.hpp"
#include "munu/lattice.hpp"

namespace munu::structural {

enum class Kind { unit, top, base, sum, prod, arrow, var, mu };

struct TypeNode;
using StructType = std::shared_ptr<const TypeNode>;

// Immutable AST node. `name` carries the base name, variable name or binder;
// a Mu keeps its body in `left`.
struct TypeNode {
  Kind kind;
  std::string name;
  StructType left;
  StructType right;
};

StructType unit();
StructType top();
StructType base(std::string name);
StructType sum(StructType l, StructType r);
StructType prod(StructType l, StructType r);
StructType arrow(StructType dom, StructType cod);
StructType var(std::string name);
StructType mu(std::string binder, StructType body);

// Syntactic equality (binder names included; canonicalize first for alpha-equivalence).
bool same(const StructType& a, const StructType& b);
std::size_t size(const StructType& t);
bool arrow_free(const StructType& t);
std::set<std::string> free_vars(const StructType& t);
bool contractive(const StructType& t);
std::string to_string(const StructType& t);

// Renames binders by nesting depth (X, Y, Z, X3, X4, ...) avoiding free names.
StructType canonicalize(const StructType& t);
StructType substitute(const StructType& t, const std::string& name, const StructType& replacement);
// mu X . B  ~~>  B[mu X . B / X]
StructType unfold(const StructType& t);

// Declared base types, their order (every base is below Top), and the
// finite tag sets the denotational oracle uses for their values.
class BaseOrder {
 public:
  BaseOrder() = default;
  // Nat <= Int with tags Nat {0,1} and Int {-1,0,1}.
  static BaseOrder standard();

  void declare(const std::string& name);
  void declare_leq(const std::string& lower, const std::string& upper);
  void set_tags(const std::string& name, std::vector<std::string> tags);

  bool has(std::string_view name) const;
  bool leq(std::string_view lower, std::string_view upper) const;
  const std::vector<std::string>& names() const { return names_; }
  // Tags of `name` and of every base below it, in first-seen order.
  std::vector<std::string> values_of(std::string_view name) const;
  // Every tag of every base.
  std::vector<std::string> all_values() const;

 private:
  void rebuild();

  std::vector<std::string> names_;
  std::vector<std::pair<std::string, std::string>> pairs_;
  std::map<std::string, std::vector<std::string>, std::less<>> tags_;
  std::shared_ptr<const lattice::FiniteLattice> order_;
};

// Named definitions from a `.ty` file plus its base declarations:
//
//   base Nat <= Int
//   tags Int = -1 0 1
//   type ListInt = mu X . Unit + Int * X
struct Definitions {
  BaseOrder bases = BaseOrder::standard();
  std::vector<std::pair<std::string, StructType>> types;

  std::optional<StructType> find(std::string_view name) const;
};

Definitions parse_definitions(std::string_view text);

// Closed, contractive, canonical. Identifiers resolve to a bound variable, a
// declared base, a definition, then a library type; `lib:Name` always names
// the library.
StructType parse_type(std::string_view text, const BaseOrder& bases, const Definitions* defs = nullptr);
// Like parse_type, but `hole` may occur free and need not be guarded.
StructType parse_body(std::string_view text, const std::string& hole, const BaseOrder& bases,
                      const Definitions* defs = nullptr);

// Bool = Unit+Unit, Nat = mu X. Unit+X, Int = Nat+Unit+Nat, ListInt = mu X. Unit + Int*X
// (Int being the encoding, not the base).
const std::vector<std::pair<std::string, StructType>>& standard_library();
StructType library(std::string_view name);

Verdict subtype(const StructType& s, const StructType& t, const BaseOrder& bases);
bool equivalent(const StructType& s, const StructType& t, const BaseOrder& bases);

// ---------------------------------------------------------------------------
// Denotational oracle (arrow-free fragment).

enum class ValueKind { unit, base, inl, inr, pair, stub };

struct ValueTree {
  ValueKind kind = ValueKind::unit;
  std::string tag;
  std::vector<ValueTree> kids;

  friend bool operator==(const ValueTree& a, const ValueTree& b) {
    return a.kind == b.kind && a.tag == b.tag && a.kids == b.kids;
  }
  friend bool operator<(const ValueTree& a, const ValueTree& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.tag != b.tag) return a.tag < b.tag;
    return std::lexicographical_compare(a.kids.begin(), a.kids.end(), b.kids.begin(), b.kids.end());
  }

  static ValueTree unit_v() { return {}; }
  static ValueTree base_v(std::string tag) { return {ValueKind::base, std::move(tag), {}}; }
  static ValueTree inl(ValueTree v) { return {ValueKind::inl, {}, {std::move(v)}}; }
  static ValueTree inr(ValueTree v) { return {ValueKind::inr, {}, {std::move(v)}}; }
  static ValueTree pair(ValueTree a, ValueTree b) { return {ValueKind::pair, {}, {std::move(a), std::move(b)}}; }
  static ValueTree stub() { return {ValueKind::stub, {}, {}}; }
};

using ValueSet = std::set<ValueTree>;

// Leaves have depth 0; each injection or pair adds one.
std::size_t depth(const ValueTree& v);
bool has_stub(const ValueTree& v);
ValueTree truncate(const ValueTree& v, std::size_t depth);
// Comma- and brace-free rendering: (), -1, L[..], R[..], <a;b>, _
std::string to_string(const ValueTree& v);

inline constexpr std::size_t kMaxDenoteDepth = 6;
inline constexpr std::size_t kMaxDenoteValues = 200000;

// Value trees of depth <= `depth` inhabiting t. Mu is read from the empty set
// (completed values) or, with `truncated`, from the all-Stub set.
ValueSet denote(const StructType& t, std::size_t depth, bool truncated, const BaseOrder& bases);
// Characteristic function of denote(t, d, false) for any d >= depth(v).
bool inhabits(const ValueTree& v, const StructType& t, const BaseOrder& bases);
// denote(s, d, false) is within denote(t, d, false) for every d <= depth.
bool oracle_subtype(const StructType& s, const StructType& t, std::size_t depth, const BaseOrder& bases);

// A type constructor tabulated as an endofunction on the powerset of a
// finite universe of value trees (completed and depth-truncated values of
// mu hole . body).
struct ConstructorEndo {
  std::vector<ValueTree> universe;
  std::shared_ptr<const lattice::FiniteLattice> lattice;
  lattice::MonotoneEndo endo;

  ValueSet trees(lattice::Element e) const;
};

ConstructorEndo constructor_as_endo(const StructType& body, const std::string& hole, std::size_t universe_depth,
                                    const BaseOrder& bases);

// ---------------------------------------------------------------------------
// Seeded sampling for property sweeps.

struct SampleOptions {
  std::size_t max_size = 12;
  bool allow_arrow = true;
  bool allow_top = true;
  std::vector<std::string> bases = {"Nat", "Int"};
};

StructType random_type(std::mt19937_64& rng, const SampleOptions& options);
// A Mu at the root, contractive.
StructType random_mu_type(std::mt19937_64& rng, const SampleOptions& options);

}  // namespace munu::structural
