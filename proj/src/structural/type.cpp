#include <algorithm>
#include <functional>

#include "munu/structural.hpp"

namespace munu::structural {

namespace {

StructType make(Kind k, std::string name = {}, StructType l = nullptr, StructType r = nullptr) {
  return std::make_shared<const TypeNode>(TypeNode{k, std::move(name), std::move(l), std::move(r)});
}

// Variables reachable from the root without passing a constructor.
void unguarded(const StructType& t, std::set<std::string>& out) {
  switch (t->kind) {
    case Kind::var: out.insert(t->name); break;
    case Kind::mu: {
      std::set<std::string> inner;
      unguarded(t->left, inner);
      inner.erase(t->name);
      out.insert(inner.begin(), inner.end());
      break;
    }
    default: break;
  }
}

std::string binder_name(std::size_t depth) {
  static const char* first[] = {"X", "Y", "Z"};
  return depth < 3 ? first[depth] : "X" + std::to_string(depth);
}

StructType rename(const StructType& t, std::size_t depth, std::map<std::string, std::string>& names,
                  const std::set<std::string>& avoid) {
  switch (t->kind) {
    case Kind::unit:
    case Kind::top:
    case Kind::base: return t;
    case Kind::var: {
      auto it = names.find(t->name);
      return it == names.end() ? t : var(it->second);
    }
    case Kind::mu: {
      auto fresh = binder_name(depth);
      while (avoid.count(fresh)) fresh += '\'';
      auto saved = names.find(t->name) == names.end() ? std::nullopt : std::optional(names[t->name]);
      names[t->name] = fresh;
      auto body = rename(t->left, depth + 1, names, avoid);
      if (saved) names[t->name] = *saved; else names.erase(t->name);
      return mu(fresh, body);
    }
    default:
      return make(t->kind, {}, rename(t->left, depth, names, avoid), rename(t->right, depth, names, avoid));
  }
}

// Binding strength: arrow 1, sum 2, prod 3, atoms 4; mu binds loosest.
void print(const StructType& t, int context, std::string& out) {
  auto wrap = [&](int own, auto&& body) {
    const bool parens = own < context;
    if (parens) out += '(';
    body();
    if (parens) out += ')';
  };
  switch (t->kind) {
    case Kind::unit: out += "Unit"; break;
    case Kind::top: out += "Top"; break;
    case Kind::base:
    case Kind::var: out += t->name; break;
    case Kind::sum:
      wrap(2, [&] { print(t->left, 2, out); out += " + "; print(t->right, 3, out); });
      break;
    case Kind::prod:
      wrap(3, [&] { print(t->left, 3, out); out += " * "; print(t->right, 4, out); });
      break;
    case Kind::arrow:
      wrap(1, [&] { print(t->left, 2, out); out += " -> "; print(t->right, 1, out); });
      break;
    case Kind::mu:
      wrap(0, [&] { out += "mu " + t->name + " . "; print(t->left, 0, out); });
      break;
  }
}

}  // namespace

StructType unit() { return make(Kind::unit); }
StructType top() { return make(Kind::top); }
StructType base(std::string name) { return make(Kind::base, std::move(name)); }
StructType sum(StructType l, StructType r) { return make(Kind::sum, {}, std::move(l), std::move(r)); }
StructType prod(StructType l, StructType r) { return make(Kind::prod, {}, std::move(l), std::move(r)); }
StructType arrow(StructType d, StructType c) { return make(Kind::arrow, {}, std::move(d), std::move(c)); }
StructType var(std::string name) { return make(Kind::var, std::move(name)); }
StructType mu(std::string binder, StructType body) { return make(Kind::mu, std::move(binder), std::move(body)); }

bool same(const StructType& a, const StructType& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind || a->name != b->name) return false;
  const bool left = (!a->left && !b->left) || (a->left && b->left && same(a->left, b->left));
  const bool right = (!a->right && !b->right) || (a->right && b->right && same(a->right, b->right));
  return left && right;
}

std::size_t size(const StructType& t) {
  if (!t) return 0;
  return 1 + size(t->left) + size(t->right);
}

bool arrow_free(const StructType& t) {
  if (!t) return true;
  return t->kind != Kind::arrow && arrow_free(t->left) && arrow_free(t->right);
}

std::set<std::string> free_vars(const StructType& t) {
  std::set<std::string> out;
  std::function<void(const StructType&, std::set<std::string>&)> walk = [&](const StructType& n,
                                                                            std::set<std::string>& bound) {
    if (!n) return;
    if (n->kind == Kind::var && !bound.count(n->name)) out.insert(n->name);
    if (n->kind == Kind::mu) {
      const bool fresh = bound.insert(n->name).second;
      walk(n->left, bound);
      if (fresh) bound.erase(n->name);
      return;
    }
    walk(n->left, bound);
    walk(n->right, bound);
  };
  std::set<std::string> bound;
  walk(t, bound);
  return out;
}

bool contractive(const StructType& t) {
  if (!t) return true;
  if (t->kind == Kind::mu) {
    std::set<std::string> heads;
    unguarded(t->left, heads);
    if (heads.count(t->name)) return false;
  }
  return contractive(t->left) && contractive(t->right);
}

std::string to_string(const StructType& t) {
  std::string out;
  print(t, 0, out);
  return out;
}

StructType canonicalize(const StructType& t) {
  std::map<std::string, std::string> names;
  return rename(t, 0, names, free_vars(t));
}

StructType substitute(const StructType& t, const std::string& name, const StructType& replacement) {
  switch (t->kind) {
    case Kind::var: return t->name == name ? replacement : t;
    case Kind::mu:
      if (t->name == name) return t;
      return mu(t->name, substitute(t->left, name, replacement));
    case Kind::sum:
    case Kind::prod:
    case Kind::arrow:
      return make(t->kind, {}, substitute(t->left, name, replacement), substitute(t->right, name, replacement));
    default: return t;
  }
}

StructType unfold(const StructType& t) {
  if (t->kind != Kind::mu) return t;
  return canonicalize(substitute(t->left, t->name, t));
}

// ---------------------------------------------------------------------------

BaseOrder BaseOrder::standard() {
  BaseOrder order;
  order.declare_leq("Nat", "Int");
  order.set_tags("Nat", {"0", "1"});
  order.set_tags("Int", {"-1", "0", "1"});
  return order;
}

void BaseOrder::declare(const std::string& name) {
  if (name == "Unit" || name == "Top" || name == "mu") {
    throw PreconditionError("'" + name + "' is reserved and cannot be a base type");
  }
  if (std::find(names_.begin(), names_.end(), name) != names_.end()) return;
  names_.push_back(name);
  rebuild();
}

void BaseOrder::declare_leq(const std::string& lower, const std::string& upper) {
  declare(lower);
  declare(upper);
  pairs_.emplace_back(lower, upper);
  try {
    rebuild();
  } catch (...) {
    pairs_.pop_back();
    rebuild();
    throw;
  }
}

void BaseOrder::set_tags(const std::string& name, std::vector<std::string> tags) {
  declare(name);
  tags_[name] = std::move(tags);
}

void BaseOrder::rebuild() {
  auto labels = names_;
  labels.push_back("Top");
  auto pairs = pairs_;
  for (const auto& n : names_) pairs.emplace_back(n, "Top");
  order_ = std::make_shared<const lattice::FiniteLattice>(lattice::FiniteLattice::build_poset(labels, pairs));
}

bool BaseOrder::has(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

bool BaseOrder::leq(std::string_view lower, std::string_view upper) const {
  if (upper == "Top") return true;
  if (!order_) return false;
  auto a = order_->find(lower);
  auto b = order_->find(upper);
  return a && b && order_->leq(*a, *b);
}

std::vector<std::string> BaseOrder::values_of(std::string_view name) const {
  std::vector<std::string> out;
  for (const auto& n : names_) {
    if (!leq(n, name)) continue;
    auto it = tags_.find(n);
    if (it == tags_.end()) continue;
    for (const auto& tag : it->second) {
      if (std::find(out.begin(), out.end(), tag) == out.end()) out.push_back(tag);
    }
  }
  return out;
}

std::vector<std::string> BaseOrder::all_values() const {
  std::vector<std::string> out;
  for (const auto& n : names_) {
    auto it = tags_.find(n);
    if (it == tags_.end()) continue;
    for (const auto& tag : it->second) {
      if (std::find(out.begin(), out.end(), tag) == out.end()) out.push_back(tag);
    }
  }
  return out;
}

std::optional<StructType> Definitions::find(std::string_view name) const {
  for (const auto& [n, t] : types) {
    if (n == name) return t;
  }
  return std::nullopt;
}

const std::vector<std::pair<std::string, StructType>>& standard_library() {
  static const auto lib = [] {
    auto nat = mu("X", sum(unit(), var("X")));
    auto integer = sum(sum(nat, unit()), nat);
    auto list = mu("X", sum(unit(), prod(integer, var("X"))));
    return std::vector<std::pair<std::string, StructType>>{
        {"Bool", canonicalize(sum(unit(), unit()))},
        {"Nat", canonicalize(nat)},
        {"Int", canonicalize(integer)},
        {"ListInt", canonicalize(list)},
    };
  }();
  return lib;
}

StructType library(std::string_view name) {
  for (const auto& [n, t] : standard_library()) {
    if (n == name) return t;
  }
  throw PreconditionError("no library type '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------

namespace {

std::size_t draw(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

struct Sampler {
  std::mt19937_64& rng;
  const SampleOptions& options;
  std::size_t next_binder = 0;

  StructType leaf(const std::vector<std::pair<std::string, bool>>& vars) {
    std::vector<StructType> choices{unit()};
    if (options.allow_top) choices.push_back(top());
    for (const auto& b : options.bases) choices.push_back(base(b));
    for (const auto& [name, guarded] : vars) {
      // Variables are favoured so recursive types actually recur.
      if (guarded) {
        choices.push_back(var(name));
        choices.push_back(var(name));
      }
    }
    return choices[draw(rng, choices.size())];
  }

  StructType constructor(std::size_t budget, std::vector<std::pair<std::string, bool>> vars) {
    for (auto& v : vars) v.second = true;
    const std::size_t kinds = options.allow_arrow ? 3 : 2;
    const auto which = draw(rng, kinds);
    const auto rest = budget - 1;
    const auto left_budget = 1 + draw(rng, std::max<std::size_t>(rest - 1, 1));
    const auto right_budget = std::max<std::size_t>(rest - left_budget, 1);
    auto l = gen(left_budget, vars);
    auto r = gen(right_budget, vars);
    if (which == 0) return sum(l, r);
    if (which == 1) return prod(l, r);
    return arrow(l, r);
  }

  StructType binder(std::size_t budget, std::vector<std::pair<std::string, bool>> vars) {
    auto name = "V" + std::to_string(next_binder++);
    vars.emplace_back(name, false);
    return mu(name, budget >= 3 ? constructor(budget - 1, vars) : gen(budget - 1, vars));
  }

  StructType gen(std::size_t budget, const std::vector<std::pair<std::string, bool>>& vars) {
    if (budget <= 2) return leaf(vars);
    const auto roll = draw(rng, 10);
    if (roll == 0) return leaf(vars);
    if (roll <= 2) return binder(budget, vars);
    return constructor(budget, vars);
  }
};

}  // namespace

StructType random_type(std::mt19937_64& rng, const SampleOptions& options) {
  Sampler s{rng, options};
  while (true) {
    const auto budget = 1 + draw(rng, std::max<std::size_t>(options.max_size, 1));
    auto t = s.gen(budget, {});
    if (size(t) <= options.max_size) return canonicalize(t);
  }
}

StructType random_mu_type(std::mt19937_64& rng, const SampleOptions& options) {
  Sampler s{rng, options};
  while (true) {
    const auto budget = 4 + draw(rng, std::max<std::size_t>(options.max_size, 5) - 4);
    auto t = s.binder(budget, {});
    if (size(t) <= std::max<std::size_t>(options.max_size, 4)) return canonicalize(t);
  }
}

}  // namespace munu::structural
