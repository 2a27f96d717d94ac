#include "munu/lattice.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdlib>
#include <unordered_map>
#include <unordered_set>

#include "munu/text.hpp"

namespace munu::lattice {

namespace {

constexpr std::int32_t kAbsent = -1;

std::optional<Element> least_of(const boost::dynamic_bitset<>& bounds,
                                const std::vector<boost::dynamic_bitset<>>& cone) {
  // The least element u of a set of upper bounds B satisfies up(u) == B; any
  // other u in B has a strictly smaller up-set, since up(u) is always within B.
  const auto want = bounds.count();
  for (auto u = bounds.find_first(); u != boost::dynamic_bitset<>::npos; u = bounds.find_next(u)) {
    if (cone[u].count() == want && cone[u] == bounds) return u;
  }
  return std::nullopt;
}

}  // namespace

std::size_t max_elements() {
  if (const char* env = std::getenv("MUNU_MAX_ELEMENTS")) {
    std::size_t value = 0;
    const std::string_view text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc{} && ptr == text.data() + text.size() && value > 0) return value;
  }
  return kDefaultMaxElements;
}

std::string subset_label(const std::vector<std::string>& base, std::uint32_t mask) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (!(mask & (1u << i))) continue;
    if (!first) out += ',';
    out += base[i];
    first = false;
  }
  out += '}';
  return out;
}

FiniteLattice FiniteLattice::build_poset(std::vector<std::string> elements,
                                         const std::vector<std::pair<std::string, std::string>>& order_pairs) {
  if (elements.empty()) throw PreconditionError("a poset needs at least one element");
  if (elements.size() > max_elements()) {
    throw GuardError("poset has " + std::to_string(elements.size()) + " elements; the guard is " +
                     std::to_string(max_elements()));
  }
  FiniteLattice lat;
  std::unordered_map<std::string, Element> index;
  for (Element i = 0; i < elements.size(); ++i) {
    if (!index.emplace(elements[i], i).second) {
      throw PreconditionError("duplicate element label '" + elements[i] + "'");
    }
  }
  lat.labels_ = std::move(elements);
  const auto n = lat.labels_.size();
  lat.up_.assign(n, boost::dynamic_bitset<>(n));
  for (Element i = 0; i < n; ++i) lat.up_[i].set(i);
  for (const auto& [lo, hi] : order_pairs) {
    auto a = index.find(lo);
    auto b = index.find(hi);
    if (a == index.end()) throw PreconditionError("order pair mentions unknown element '" + lo + "'");
    if (b == index.end()) throw PreconditionError("order pair mentions unknown element '" + hi + "'");
    lat.up_[a->second].set(b->second);
  }
  lat.close_and_index();
  lat.compute_bounds();
  return lat;
}

FiniteLattice FiniteLattice::build_powerset(const std::vector<std::string>& base_labels) {
  if (base_labels.size() > kMaxPowersetBase) {
    throw GuardError("powerset base has " + std::to_string(base_labels.size()) + " labels; the guard is " +
                     std::to_string(kMaxPowersetBase));
  }
  std::unordered_set<std::string> seen;
  for (const auto& b : base_labels) {
    if (b.empty() || b.find_first_of("{},") != std::string::npos) {
      throw PreconditionError("invalid powerset base label '" + b + "'");
    }
    if (!seen.insert(b).second) throw PreconditionError("duplicate base label '" + b + "'");
  }
  const std::uint32_t count = 1u << base_labels.size();
  if (count > max_elements()) {
    throw GuardError("powerset has " + std::to_string(count) + " elements; the guard is " +
                     std::to_string(max_elements()));
  }

  FiniteLattice lat;
  lat.powerset_ = true;
  lat.base_ = base_labels;
  lat.labels_.reserve(count);
  lat.masks_.reserve(count);
  lat.by_mask_.resize(count);
  for (std::uint32_t m = 0; m < count; ++m) {
    lat.labels_.push_back(subset_label(base_labels, m));
    lat.masks_.push_back(m);
    lat.by_mask_[m] = m;
  }
  lat.up_.assign(count, boost::dynamic_bitset<>(count));
  for (std::uint32_t a = 0; a < count; ++a) {
    for (std::uint32_t b = 0; b < count; ++b) {
      if ((a & b) == a) lat.up_[a].set(b);
    }
  }
  lat.down_.assign(count, boost::dynamic_bitset<>(count));
  for (std::uint32_t a = 0; a < count; ++a) {
    for (std::uint32_t b = 0; b < count; ++b) {
      if ((a & b) == b) lat.down_[a].set(b);
    }
  }
  lat.meet_.resize(std::size_t{count} * count);
  lat.join_.resize(std::size_t{count} * count);
  for (std::uint32_t a = 0; a < count; ++a) {
    for (std::uint32_t b = 0; b < count; ++b) {
      lat.meet_[std::size_t{a} * count + b] = static_cast<std::int32_t>(a & b);
      lat.join_[std::size_t{a} * count + b] = static_cast<std::int32_t>(a | b);
    }
  }
  lat.bottom_ = 0;
  lat.top_ = count - 1;
  lat.complete_ = true;
  return lat;
}

void FiniteLattice::close_and_index() {
  const auto n = labels_.size();
  // Warshall over bit rows.
  for (Element k = 0; k < n; ++k) {
    for (Element i = 0; i < n; ++i) {
      if (i != k && up_[i].test(k)) up_[i] |= up_[k];
    }
  }
  for (Element i = 0; i < n; ++i) {
    for (auto j = up_[i].find_next(i); j != boost::dynamic_bitset<>::npos; j = up_[i].find_next(j)) {
      if (up_[j].test(i)) {
        throw PreconditionError("antisymmetry violated: '" + labels_[i] + "' <= '" + labels_[j] + "' and '" +
                                labels_[j] + "' <= '" + labels_[i] + "'");
      }
    }
  }
  down_.assign(n, boost::dynamic_bitset<>(n));
  for (Element i = 0; i < n; ++i) {
    for (auto j = up_[i].find_first(); j != boost::dynamic_bitset<>::npos; j = up_[i].find_next(j)) {
      down_[j].set(i);
    }
  }
}

void FiniteLattice::compute_bounds() {
  const auto n = labels_.size();
  for (Element i = 0; i < n; ++i) {
    if (up_[i].all()) bottom_ = i;
    if (down_[i].all()) top_ = i;
  }
  meet_.assign(n * n, kAbsent);
  join_.assign(n * n, kAbsent);
  bool all_defined = true;
  for (Element a = 0; a < n; ++a) {
    for (Element b = a; b < n; ++b) {
      auto j = least_of(up_[a] & up_[b], up_);
      auto m = least_of(down_[a] & down_[b], down_);
      const auto jv = j ? static_cast<std::int32_t>(*j) : kAbsent;
      const auto mv = m ? static_cast<std::int32_t>(*m) : kAbsent;
      join_[a * n + b] = join_[b * n + a] = jv;
      meet_[a * n + b] = meet_[b * n + a] = mv;
      all_defined = all_defined && j && m;
    }
  }
  complete_ = all_defined && bottom_ && top_;
}

std::optional<Element> FiniteLattice::find(std::string_view label) const {
  for (Element i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  if (powerset_) return find_subset(label);
  return std::nullopt;
}

Element FiniteLattice::at(std::string_view label) const {
  if (auto e = find(label)) return *e;
  throw PreconditionError("no element '" + std::string(label) + "' in lattice");
}

std::optional<Element> FiniteLattice::meet(Element a, Element b) const {
  const auto v = meet_.at(a * size() + b);
  if (v == kAbsent) return std::nullopt;
  return static_cast<Element>(v);
}

std::optional<Element> FiniteLattice::join(Element a, Element b) const {
  const auto v = join_.at(a * size() + b);
  if (v == kAbsent) return std::nullopt;
  return static_cast<Element>(v);
}

std::optional<Element> FiniteLattice::join_of(std::span<const Element> xs) const {
  boost::dynamic_bitset<> bounds(size());
  bounds.set();
  for (auto x : xs) bounds &= up_.at(x);
  return least_of(bounds, up_);
}

std::optional<Element> FiniteLattice::meet_of(std::span<const Element> xs) const {
  boost::dynamic_bitset<> bounds(size());
  bounds.set();
  for (auto x : xs) bounds &= down_.at(x);
  return least_of(bounds, down_);
}

std::optional<Element> FiniteLattice::element_of_mask(std::uint32_t m) const {
  if (!powerset_ || m >= by_mask_.size()) return std::nullopt;
  return by_mask_[m];
}

std::optional<Element> FiniteLattice::find_subset(std::string_view text) const {
  if (!powerset_) return std::nullopt;
  auto body = text::trim(text);
  if (body.size() < 2 || body.front() != '{' || body.back() != '}') return std::nullopt;
  body = text::trim(body.substr(1, body.size() - 2));
  std::uint32_t m = 0;
  if (!body.empty()) {
    for (auto part : text::split(body, ',')) {
      auto name = text::trim(part);
      auto it = std::find(base_.begin(), base_.end(), name);
      if (it == base_.end()) return std::nullopt;
      m |= 1u << static_cast<std::uint32_t>(it - base_.begin());
    }
  }
  return element_of_mask(m);
}

bool parallel(const FiniteLattice& lat, Element a, Element b) {
  return !lat.leq(a, b) && !lat.leq(b, a);
}

}  // namespace munu::lattice
