#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "munu/lattice.hpp"

namespace munu::lattice {

// Lattices and endofunctions declared in one text file:
//
//   # comment
//   lattice chain3
//   elements: bot, a, top
//   order: bot<=a, a<=top
//
//   lattice succ
//   powerset: 0 1 2 3
//
//   fun F on succ
//   {} -> {0}
//   {0} -> {0,1}
//   ...
//
// Endofunctions are returned uncertified.
struct LatticeDocument {
  std::vector<std::pair<std::string, std::shared_ptr<const FiniteLattice>>> lattices;
  std::vector<std::pair<std::string, MonotoneEndo>> functions;

  std::shared_ptr<const FiniteLattice> lattice(std::string_view name) const;
  MonotoneEndo function(std::string_view name) const;
};

LatticeDocument parse_lattice_document(std::string_view text);

}  // namespace munu::lattice
