#pragma once

// Test-only enumeration of value trees, independent of the denotation code.

#include <functional>
#include <vector>

#include "munu/structural.hpp"

namespace munu::testing {

using structural::ValueKind;
using structural::ValueTree;

// All completed trees of depth <= d over the given leaves.
inline std::vector<ValueTree> all_trees(std::size_t d, const std::vector<ValueTree>& leaves) {
  std::vector<ValueTree> level = leaves;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<ValueTree> next = leaves;
    for (const auto& v : level) {
      next.push_back(ValueTree::inl(v));
      next.push_back(ValueTree::inr(v));
    }
    for (const auto& a : level)
      for (const auto& b : level) next.push_back(ValueTree::pair(a, b));
    level = std::move(next);
  }
  return level;
}

inline std::vector<ValueTree> int_leaves() {
  return {ValueTree::unit_v(), ValueTree::base_v("-1"), ValueTree::base_v("0"), ValueTree::base_v("1")};
}

// Lists of base Int values: inl () | inr <int ; list>.
inline bool is_int_list(const ValueTree& v, const std::vector<std::string>& tags) {
  if (v.kind == ValueKind::inl) return v.kids[0].kind == ValueKind::unit;
  if (v.kind != ValueKind::inr) return false;
  const auto& cell = v.kids[0];
  if (cell.kind != ValueKind::pair || cell.kids[0].kind != ValueKind::base) return false;
  if (std::find(tags.begin(), tags.end(), cell.kids[0].tag) == tags.end()) return false;
  return is_int_list(cell.kids[1], tags);
}

inline ValueTree nil() { return ValueTree::inl(ValueTree::unit_v()); }
inline ValueTree cons(std::string tag, ValueTree tail) {
  return ValueTree::inr(ValueTree::pair(ValueTree::base_v(std::move(tag)), std::move(tail)));
}

}  // namespace munu::testing
