#include <map>

#include "munu/nominal.hpp"

namespace munu::nominal {

namespace {

constexpr std::size_t kMaxUniverseMembers = 1024;

void guard(std::size_t n) {
  if (n > kMaxUniverseMembers) {
    throw GuardError("universe exceeds " + std::to_string(kMaxUniverseMembers) + " ground types");
  }
}

}  // namespace

std::optional<std::size_t> Universe::index_of(const GroundType& t) const {
  auto it = std::find(members_.begin(), members_.end(), t);
  if (it == members_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - members_.begin());
}

std::vector<Interval> Universe::intervals() const {
  std::vector<Interval> out;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (leq(i, j)) out.push_back({members_[i], members_[j]});
  return out;
}

Universe build_universe(std::shared_ptr<const ClassTable> table, int k) {
  if (k < 0 || k > kMaxUniverseDepth) {
    throw PreconditionError("universe depth must be between 0 and " + std::to_string(kMaxUniverseDepth));
  }
  Universe u;
  u.table_ = table;
  u.depth_ = k;
  auto& ms = u.members_;
  ms.push_back(GroundType::null_t());
  ms.push_back(GroundType::object_t());
  for (const auto& d : table->declarations()) {
    if (!d.param) ms.push_back(GroundType::plain(d.name));
  }

  std::map<std::pair<std::size_t, std::size_t>, bool> sub;
  auto leq = [&](std::size_t i, std::size_t j) {
    auto [it, fresh] = sub.try_emplace({i, j}, false);
    if (fresh) it->second = is_subtype(ms[i], ms[j], *table);
    return it->second;
  };

  const auto generics = table->generic_classes();
  for (int level = 1; level <= k; ++level) {
    const std::size_t below = ms.size();
    for (const auto& f : generics) {
      for (std::size_t i = 0; i < below; ++i) {
        for (std::size_t j = 0; j < below; ++j) {
          // Only forms whose deepest endpoint sits on the previous level are new.
          if (std::max(nesting(ms[i]), nesting(ms[j])) + 1 != static_cast<std::size_t>(level)) continue;
          if (!leq(i, j)) continue;
          ms.push_back(GroundType::app(f, ms[i], ms[j]));
          guard(ms.size());
        }
      }
    }
  }

  const auto n = ms.size();
  u.leq_.assign(n * n, false);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) u.leq_[i * n + j] = leq(i, j);
  return u;
}

lattice::FiniteLattice export_order(const Universe& u) {
  std::vector<std::string> labels;
  for (const auto& m : u.members()) labels.push_back(to_string(m));
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j)
      if (i != j && u.leq(i, j)) pairs.emplace_back(labels[i], labels[j]);
  return lattice::FiniteLattice::build_poset(std::move(labels), pairs);
}

}  // namespace munu::nominal
