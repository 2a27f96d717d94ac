#pragma once

// Brute-force reference computations used only by the tests. Nothing here
// calls the fixed-point, Heyting or subtype code under test.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "munu/lattice.hpp"

namespace munu::testing {

using lattice::Element;
using lattice::FiniteLattice;
using lattice::MonotoneEndo;

inline std::shared_ptr<const FiniteLattice> share(FiniteLattice lat) {
  return std::make_shared<const FiniteLattice>(std::move(lat));
}

inline std::shared_ptr<const FiniteLattice> chain(std::size_t n) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> order;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("c" + std::to_string(i));
    if (i > 0) order.emplace_back(labels[i - 1], labels[i]);
  }
  return share(FiniteLattice::build_poset(labels, order));
}

// bot < a, b, c < top: the 5-element non-distributive M3.
inline std::shared_ptr<const FiniteLattice> diamond5() {
  return share(FiniteLattice::build_poset({"bot", "a", "b", "c", "top"},
                                          {{"bot", "a"}, {"bot", "b"}, {"bot", "c"}, {"a", "top"}, {"b", "top"}, {"c", "top"}}));
}

// bot < a < b < top, bot < c < top: the 5-element non-distributive N5.
inline std::shared_ptr<const FiniteLattice> pentagon() {
  return share(FiniteLattice::build_poset({"bot", "a", "b", "c", "top"},
                                          {{"bot", "a"}, {"a", "b"}, {"b", "top"}, {"bot", "c"}, {"c", "top"}}));
}

inline std::shared_ptr<const FiniteLattice> diamond4() {
  return share(FiniteLattice::build_poset({"bot", "a", "b", "top"},
                                          {{"bot", "a"}, {"bot", "b"}, {"a", "top"}, {"b", "top"}}));
}

// Monotonicity by direct quantification over the order table.
inline bool brute_monotone(const FiniteLattice& lat, const std::vector<Element>& table) {
  for (Element x = 0; x < lat.size(); ++x)
    for (Element y = 0; y < lat.size(); ++y)
      if (lat.leq(x, y) && !lat.leq(table[x], table[y])) return false;
  return true;
}

// Every monotone endofunction of a small poset, by enumerating all n^n maps.
inline std::vector<std::vector<Element>> all_monotone_tables(const FiniteLattice& lat) {
  const auto n = lat.size();
  std::vector<std::vector<Element>> out;
  std::vector<Element> table(n, 0);
  while (true) {
    if (brute_monotone(lat, table)) out.push_back(table);
    std::size_t i = 0;
    while (i < n && ++table[i] == n) table[i++] = 0;
    if (i == n) break;
  }
  return out;
}

// Least element of a set, by scanning.
inline std::optional<Element> least_in(const FiniteLattice& lat, const std::vector<Element>& set) {
  for (auto c : set) {
    bool least = true;
    for (auto o : set) least = least && lat.leq(c, o);
    if (least) return c;
  }
  return std::nullopt;
}

inline std::optional<Element> greatest_in(const FiniteLattice& lat, const std::vector<Element>& set) {
  for (auto c : set) {
    bool greatest = true;
    for (auto o : set) greatest = greatest && lat.leq(o, c);
    if (greatest) return c;
  }
  return std::nullopt;
}

// Knaster-Tarski: lfp is the least pre-fixed point, gfp the greatest post-fixed point.
inline std::optional<Element> tarski_lfp(const FiniteLattice& lat, const std::vector<Element>& f) {
  std::vector<Element> pre;
  for (Element x = 0; x < lat.size(); ++x)
    if (lat.leq(f[x], x)) pre.push_back(x);
  return least_in(lat, pre);
}

inline std::optional<Element> tarski_gfp(const FiniteLattice& lat, const std::vector<Element>& f) {
  std::vector<Element> post;
  for (Element x = 0; x < lat.size(); ++x)
    if (lat.leq(x, f[x])) post.push_back(x);
  return greatest_in(lat, post);
}

inline MonotoneEndo endo_from_masks(std::shared_ptr<const FiniteLattice> lat,
                                    const std::function<std::uint32_t(std::uint32_t)>& fn) {
  std::vector<Element> table(lat->size());
  for (Element e = 0; e < lat->size(); ++e) table[e] = *lat->element_of_mask(fn(lat->mask(e)));
  return MonotoneEndo(std::move(lat), std::move(table));
}

// Random monotone map on a powerset: F(X) = base | union of heads of the
// rules whose bodies are contained in X. Every such map is monotone.
inline std::function<std::uint32_t(std::uint32_t)> random_rule_map(std::size_t base_size, std::mt19937_64& rng) {
  const std::uint32_t full = (1u << base_size) - 1;
  std::uniform_int_distribution<std::uint32_t> subset(0, full);
  std::uniform_int_distribution<int> rule_count(0, 5);
  std::bernoulli_distribution sparse(0.5);
  const std::uint32_t seed_set = sparse(rng) ? 0 : subset(rng) & subset(rng);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> rules;
  for (int i = rule_count(rng); i > 0; --i) rules.emplace_back(subset(rng), subset(rng) & subset(rng));
  return [seed_set, rules](std::uint32_t x) {
    std::uint32_t out = seed_set;
    for (auto [body, head] : rules)
      if ((body & x) == body) out |= head;
    return out;
  };
}

// Complement by definition on bit masks.
inline std::uint32_t set_complement(std::uint32_t x, std::size_t base_size) {
  return ~x & ((1u << base_size) - 1);
}

}  // namespace munu::testing
