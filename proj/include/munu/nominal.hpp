#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "munu/common.hpp"
#include "munu/lattice.hpp"

namespace munu::nominal {

// param only occurs inside class declarations (bounds and superclasses).
enum class GKind { null, object, plain, app, param };

struct Interval;

struct GroundType {
  GKind kind = GKind::null;
  std::string name;
  // app: {lower, upper}
  std::vector<GroundType> bounds;

  static GroundType null_t() { return {}; }
  static GroundType object_t() { return {GKind::object, {}, {}}; }
  static GroundType plain(std::string name) { return {GKind::plain, std::move(name), {}}; }
  static GroundType param(std::string name) { return {GKind::param, std::move(name), {}}; }
  static GroundType app(std::string name, GroundType lower, GroundType upper) {
    return {GKind::app, std::move(name), {std::move(lower), std::move(upper)}};
  }
  static GroundType app(std::string name, const Interval& i);

  const GroundType& lower() const { return bounds.at(0); }
  const GroundType& upper() const { return bounds.at(1); }
  Interval interval() const;

  friend bool operator==(const GroundType& a, const GroundType& b) {
    return a.kind == b.kind && a.name == b.name && a.bounds == b.bounds;
  }
  friend bool operator<(const GroundType& a, const GroundType& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.name != b.name) return a.name < b.name;
    return std::lexicographical_compare(a.bounds.begin(), a.bounds.end(), b.bounds.begin(), b.bounds.end());
  }
};

struct Interval {
  GroundType lower;
  GroundType upper;

  friend bool operator==(const Interval&, const Interval&) = default;
};

inline GroundType GroundType::app(std::string name, const Interval& i) { return app(std::move(name), i.lower, i.upper); }
inline Interval GroundType::interval() const { return {lower(), upper()}; }

// F<T>, F<?>, F<? extends U>, F<? super L>, otherwise F<[L,U]>.
std::string to_string(const GroundType& t);
std::string to_string(const Interval& i);
// App nesting: 0 for Null, Object, plain classes and parameters.
std::size_t nesting(const GroundType& t);
bool is_ground(const GroundType& t);

struct TypeParam {
  std::string name;
  std::optional<GroundType> bound;
};

struct ClassDecl {
  std::string name;
  std::optional<TypeParam> param;
  // Absent means Object.
  std::optional<GroundType> superclass;
  std::size_t line = 0;
};

class ClassTable {
 public:
  const std::vector<ClassDecl>& declarations() const { return decls_; }
  const ClassDecl* find(std::string_view name) const;
  std::size_t arity(std::string_view name) const;
  std::vector<std::string> generic_classes() const;

  // The declared superclass of t with the argument substituted through;
  // Object when nothing is declared, nullopt for Null and Object.
  std::optional<GroundType> superclass_of(const GroundType& t) const;

  // Names declared and arities respected; parameters rejected.
  void check_well_formed(const GroundType& t) const;

  // Largest App nesting any superclass expression adds.
  std::size_t max_superclass_nesting() const { return max_super_nesting_; }

 private:
  friend ClassTable parse_class_table(std::string_view text);
  std::vector<ClassDecl> decls_;
  std::size_t max_super_nesting_ = 0;
};

// class Name [extends Ground]
// generic class Name[T [extends Bound]] [extends Ground]
ClassTable parse_class_table(std::string_view text);

// Ground-type literal over the table; wildcard sugar expands to intervals and
// every interval must satisfy lower <: upper.
GroundType parse_ground(std::string_view text, const ClassTable& table);

Verdict subtype(const GroundType& a, const GroundType& b, const ClassTable& table);
bool is_subtype(const GroundType& a, const GroundType& b, const ClassTable& table);
// I1 is a subinterval of I2.
bool containment(const Interval& i1, const Interval& i2, const ClassTable& table);

GroundType free_type(const std::string& f, const ClassTable& table);
// F's image of P: F<[P,P]>.
GroundType image(const std::string& f, const GroundType& p, const ClassTable& table);

struct Classification {
  bool pre_fixed = false;
  bool post_fixed = false;
  bool fixed = false;
};

Classification classify(const std::string& f, const GroundType& p, const ClassTable& table);

inline constexpr int kMaxUniverseDepth = 3;

class Universe {
 public:
  const ClassTable& table() const { return *table_; }
  std::shared_ptr<const ClassTable> table_ptr() const { return table_; }
  int depth() const { return depth_; }
  const std::vector<GroundType>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  std::optional<std::size_t> index_of(const GroundType& t) const;
  bool contains(const GroundType& t) const { return index_of(t).has_value(); }
  // Cached subtype relation between members.
  bool leq(std::size_t i, std::size_t j) const { return leq_[i * members_.size() + j]; }
  // Every valid interval with endpoints among the members, in member order.
  std::vector<Interval> intervals() const;

 private:
  friend Universe build_universe(std::shared_ptr<const ClassTable> table, int k);
  std::shared_ptr<const ClassTable> table_;
  int depth_ = 0;
  std::vector<GroundType> members_;
  std::vector<bool> leq_;
};

// Null, Object, plain classes in declaration order, then App forms level by
// level; level j draws interval endpoints from levels below j.
Universe build_universe(std::shared_ptr<const ClassTable> table, int k);

struct FamilyMembers {
  std::vector<GroundType> family_subtypes;
  std::vector<GroundType> family_supertypes;
};

FamilyMembers family_members(const std::string& f, const Universe& u);
PrincipleReport greatest_family_subtype_check(const std::string& f, const Universe& u);

struct LeastPreFixed {
  // literal notion: minimal P in the universe with F<[P,P]> <: P
  std::optional<GroundType> least;
  std::vector<GroundType> minimal_set;
  // family gloss: a non-Null P below every family supertype, if any
  std::optional<GroundType> family_lower_bound;
  std::optional<std::pair<GroundType, GroundType>> no_least_witnesses;
};

LeastPreFixed least_pre_fixed_search(const std::string& f, const Universe& u);
PrincipleReport covariance_check(const std::string& f, const Universe& u);

struct Negation {
  std::optional<GroundType> result;
  std::vector<GroundType> minimal_upper_bounds;
  std::vector<GroundType> disjoint_set;
};

Negation nominal_negation(const GroundType& x, const Universe& u);
Verdict declared_negation_check(const GroundType& neg, const GroundType& pos, const GroundType& base,
                                const Universe& u);

// Members labelled by to_string, ordered by subtype.
lattice::FiniteLattice export_order(const Universe& u);

}  // namespace munu::nominal
