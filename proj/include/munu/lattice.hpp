#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "munu/common.hpp"

namespace munu::lattice {

using Element = std::size_t;

inline constexpr std::size_t kMaxPowersetBase = 10;
inline constexpr std::size_t kDefaultMaxElements = 4096;

// Element guard, overridable through MUNU_MAX_ELEMENTS.
std::size_t max_elements();

// Finite poset with an explicit order table. Meets and joins come from bound
// scans and may be absent.
class FiniteLattice {
 public:
  static FiniteLattice build_poset(std::vector<std::string> elements,
                                   const std::vector<std::pair<std::string, std::string>>& order_pairs);
  static FiniteLattice build_powerset(const std::vector<std::string>& base_labels);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Element e) const { return labels_.at(e); }
  std::optional<Element> find(std::string_view label) const;
  // Like find, but throws PreconditionError naming the missing label.
  Element at(std::string_view label) const;

  bool leq(Element a, Element b) const { return up_[a].test(b); }
  std::optional<Element> bottom() const { return bottom_; }
  std::optional<Element> top() const { return top_; }
  std::optional<Element> meet(Element a, Element b) const;
  std::optional<Element> join(Element a, Element b) const;
  // Bound scans over arbitrary subsets; the empty join is bottom.
  std::optional<Element> join_of(std::span<const Element> xs) const;
  std::optional<Element> meet_of(std::span<const Element> xs) const;
  bool is_complete_lattice() const { return complete_; }

  bool is_powerset() const { return powerset_; }
  const std::vector<std::string>& powerset_base() const { return base_; }
  // Subset mask of a powerset element (bit i = base label i).
  std::uint32_t mask(Element e) const { return masks_.at(e); }
  std::optional<Element> element_of_mask(std::uint32_t m) const;
  // Parses "{1,2}" style labels into the canonical element of a powerset.
  std::optional<Element> find_subset(std::string_view text) const;

 private:
  FiniteLattice() = default;
  void close_and_index();
  void compute_bounds();

  std::vector<std::string> labels_;
  std::vector<boost::dynamic_bitset<>> up_;    // up_[a][b]   <=> a <= b
  std::vector<boost::dynamic_bitset<>> down_;  // down_[a][b] <=> b <= a
  std::vector<std::int32_t> meet_;
  std::vector<std::int32_t> join_;
  std::optional<Element> bottom_;
  std::optional<Element> top_;
  bool complete_ = false;

  bool powerset_ = false;
  std::vector<std::string> base_;
  std::vector<std::uint32_t> masks_;
  std::vector<Element> by_mask_;
};

std::string subset_label(const std::vector<std::string>& base, std::uint32_t mask);

class MonotoneEndo;
PrincipleReport check_monotone(MonotoneEndo& f);

// Tabulated endofunction. Fixed-point operations refuse it until
// check_monotone has certified it.
class MonotoneEndo {
 public:
  MonotoneEndo(std::shared_ptr<const FiniteLattice> domain, std::vector<Element> table);

  const FiniteLattice& domain() const { return *domain_; }
  const std::shared_ptr<const FiniteLattice>& domain_ptr() const { return domain_; }
  Element operator()(Element x) const { return table_[x]; }
  const std::vector<Element>& table() const { return table_; }
  bool certified_monotone() const { return certified_; }

  static MonotoneEndo identity(std::shared_ptr<const FiniteLattice> domain);
  static MonotoneEndo constant(std::shared_ptr<const FiniteLattice> domain, Element c);

 private:
  friend PrincipleReport check_monotone(MonotoneEndo& f);

  std::shared_ptr<const FiniteLattice> domain_;
  std::vector<Element> table_;
  bool certified_ = false;
};

// Checks every comparable pair; certifies f on success.
PrincipleReport check_monotone(MonotoneEndo& f);

Element lfp(const MonotoneEndo& f);
Element gfp(const MonotoneEndo& f);
std::vector<Element> pre_fixed_points(const MonotoneEndo& f);
std::vector<Element> post_fixed_points(const MonotoneEndo& f);

PrincipleReport check_induction_principle(const MonotoneEndo& f);
PrincipleReport check_coinduction_principle(const MonotoneEndo& f);

struct Implication {
  std::optional<Element> value;
  // a <= (x => y)  <=>  meet(a, x) <= y, for every a.
  bool adjunction_holds = false;
  std::size_t qualifying = 0;
};

Implication heyting_implication(const FiniteLattice& lat, Element x, Element y);
Implication negation(const FiniteLattice& lat, Element x);

// x |-> not f(not x); requires a Boolean lattice.
MonotoneEndo dual_endo(const MonotoneEndo& f);
PrincipleReport check_mu_nu_duality(const MonotoneEndo& f);

bool parallel(const FiniteLattice& lat, Element a, Element b);

// Heyting negation table of a Boolean lattice; throws PreconditionError when
// some element has no complement.
std::vector<Element> boolean_complements(const FiniteLattice& lat);

}  // namespace munu::lattice
