#include <algorithm>
#include <map>
#include <stdexcept>

#include "munu/structural.hpp"

namespace munu::structural {

std::size_t depth(const ValueTree& v) {
  std::size_t d = 0;
  for (const auto& k : v.kids) d = std::max(d, depth(k) + 1);
  return d;
}

bool has_stub(const ValueTree& v) {
  if (v.kind == ValueKind::stub) return true;
  return std::any_of(v.kids.begin(), v.kids.end(), [](const ValueTree& k) { return has_stub(k); });
}

ValueTree truncate(const ValueTree& v, std::size_t d) {
  if (v.kids.empty()) return v;
  if (d == 0) return ValueTree::stub();
  ValueTree out{v.kind, v.tag, {}};
  for (const auto& k : v.kids) out.kids.push_back(truncate(k, d - 1));
  return out;
}

std::string to_string(const ValueTree& v) {
  switch (v.kind) {
    case ValueKind::unit: return "()";
    case ValueKind::base: return v.tag;
    case ValueKind::inl: return "L[" + to_string(v.kids[0]) + "]";
    case ValueKind::inr: return "R[" + to_string(v.kids[0]) + "]";
    case ValueKind::pair: return "<" + to_string(v.kids[0]) + ";" + to_string(v.kids[1]) + ">";
    case ValueKind::stub: return "_";
  }
  return "?";
}

namespace {

// How a variable occurrence with `budget` remaining sees its approximant, and
// what a constructor with no budget left produces.
enum class VarView {
  filter,           // completed reading: drop values that do not fit
  truncate,         // truncated reading: cut every value at the budget
  truncate_partial  // endofunction reading: drop completed values, cut partial ones
};

struct Semantics {
  bool stub_at_cut;
  VarView view;
};

class Denoter {
 public:
  Denoter(const BaseOrder& bases, Semantics sem) : bases_(bases), sem_(sem) {}

  using Env = std::map<std::string, const ValueSet*>;

  ValueSet eval(const StructType& t, std::size_t budget, Env& env) {
    ValueSet out;
    switch (t->kind) {
      case Kind::unit: out.insert(ValueTree::unit_v()); break;
      case Kind::base:
        for (const auto& tag : bases_.values_of(t->name)) out.insert(ValueTree::base_v(tag));
        break;
      case Kind::top: out = everything(budget); break;
      case Kind::arrow: throw PreconditionError("the denotational oracle does not cover '->'");
      case Kind::sum:
        if (budget == 0) {
          if (sem_.stub_at_cut) out.insert(ValueTree::stub());
          break;
        }
        for (auto& v : eval(t->left, budget - 1, env)) out.insert(ValueTree::inl(v));
        for (auto& v : eval(t->right, budget - 1, env)) out.insert(ValueTree::inr(v));
        break;
      case Kind::prod: {
        if (budget == 0) {
          if (sem_.stub_at_cut) out.insert(ValueTree::stub());
          break;
        }
        auto ls = eval(t->left, budget - 1, env);
        if (ls.empty()) break;
        auto rs = eval(t->right, budget - 1, env);
        guard(ls.size() * rs.size());
        for (const auto& l : ls)
          for (const auto& r : rs) out.insert(ValueTree::pair(l, r));
        break;
      }
      case Kind::var: {
        auto it = env.find(t->name);
        if (it == env.end()) throw PreconditionError("free variable '" + t->name + "' in denotation");
        for (const auto& v : *it->second) {
          const bool fits = depth(v) <= budget;
          switch (sem_.view) {
            case VarView::filter:
              if (fits) out.insert(v);
              break;
            case VarView::truncate: out.insert(truncate(v, budget)); break;
            case VarView::truncate_partial:
              if (fits) out.insert(v);
              else if (has_stub(v)) out.insert(truncate(v, budget));
              break;
          }
        }
        break;
      }
      case Kind::mu: out = fixpoint(t, budget, env); break;
    }
    guard(out.size());
    return out;
  }

 private:
  ValueSet fixpoint(const StructType& t, std::size_t budget, Env& env) {
    ValueSet current;
    if (sem_.view == VarView::truncate) current.insert(ValueTree::stub());
    auto saved = env.find(t->name) == env.end() ? nullptr : env[t->name];
    // Completed readings grow monotonically; truncated readings settle once
    // the initial stubs have been pushed past the budget.
    const std::size_t limit = 4 * (budget + 2) + 64;
    for (std::size_t round = 0;; ++round) {
      if (round > limit) throw std::logic_error("denotation of '" + to_string(t) + "' did not stabilize");
      env[t->name] = &current;
      auto next = eval(t->left, budget, env);
      if (next == current) break;
      current = std::move(next);
    }
    if (saved) env[t->name] = saved; else env.erase(t->name);
    return current;
  }

  // Every value tree of depth <= budget over the declared leaves.
  const ValueSet& everything(std::size_t budget) {
    auto it = all_.find(budget);
    if (it != all_.end()) return it->second;
    ValueSet out;
    out.insert(ValueTree::unit_v());
    for (const auto& tag : bases_.all_values()) out.insert(ValueTree::base_v(tag));
    if (budget == 0) {
      if (sem_.stub_at_cut) out.insert(ValueTree::stub());
    } else {
      const ValueSet below = everything(budget - 1);
      guard(below.size() * below.size());
      for (const auto& v : below) {
        out.insert(ValueTree::inl(v));
        out.insert(ValueTree::inr(v));
      }
      for (const auto& a : below)
        for (const auto& b : below) out.insert(ValueTree::pair(a, b));
    }
    guard(out.size());
    return all_.emplace(budget, std::move(out)).first->second;
  }

  static void guard(std::size_t n) {
    if (n > kMaxDenoteValues) {
      throw GuardError("denotation exceeds " + std::to_string(kMaxDenoteValues) + " value trees");
    }
  }

  const BaseOrder& bases_;
  Semantics sem_;
  std::map<std::size_t, ValueSet> all_;
};

void check_depth(std::size_t d) {
  if (d > kMaxDenoteDepth) {
    throw GuardError("denotation depth " + std::to_string(d) + " exceeds the guard of " +
                     std::to_string(kMaxDenoteDepth));
  }
}

}  // namespace

ValueSet denote(const StructType& t, std::size_t d, bool truncated, const BaseOrder& bases) {
  check_depth(d);
  if (!arrow_free(t)) throw PreconditionError("the denotational oracle does not cover '->'");
  Denoter den(bases, truncated ? Semantics{true, VarView::truncate} : Semantics{false, VarView::filter});
  Denoter::Env env;
  return den.eval(t, d, env);
}

bool inhabits(const ValueTree& v, const StructType& t, const BaseOrder& bases) {
  switch (t->kind) {
    case Kind::top: return !has_stub(v);
    case Kind::unit: return v.kind == ValueKind::unit;
    case Kind::base: {
      if (v.kind != ValueKind::base) return false;
      auto tags = bases.values_of(t->name);
      return std::find(tags.begin(), tags.end(), v.tag) != tags.end();
    }
    case Kind::sum:
      if (v.kind == ValueKind::inl) return inhabits(v.kids[0], t->left, bases);
      if (v.kind == ValueKind::inr) return inhabits(v.kids[0], t->right, bases);
      return false;
    case Kind::prod:
      return v.kind == ValueKind::pair && inhabits(v.kids[0], t->left, bases) && inhabits(v.kids[1], t->right, bases);
    case Kind::mu: return inhabits(v, unfold(t), bases);
    case Kind::arrow: throw PreconditionError("the denotational oracle does not cover '->'");
    case Kind::var: throw PreconditionError("free variable '" + t->name + "' in membership test");
  }
  return false;
}

bool oracle_subtype(const StructType& s, const StructType& t, std::size_t d, const BaseOrder& bases) {
  check_depth(d);
  if (!arrow_free(s) || !arrow_free(t)) throw PreconditionError("the denotational oracle does not cover '->'");
  for (std::size_t k = 0; k <= d; ++k) {
    for (const auto& v : denote(s, k, false, bases)) {
      if (!inhabits(v, t, bases)) return false;
    }
  }
  return true;
}

ValueSet ConstructorEndo::trees(lattice::Element e) const {
  ValueSet out;
  const auto m = lattice->mask(e);
  for (std::size_t i = 0; i < universe.size(); ++i) {
    if (m & (1u << i)) out.insert(universe[i]);
  }
  return out;
}

ConstructorEndo constructor_as_endo(const StructType& body, const std::string& hole, std::size_t universe_depth,
                                    const BaseOrder& bases) {
  check_depth(universe_depth);
  if (!arrow_free(body)) throw PreconditionError("constructor body must be arrow-free");
  for (const auto& v : free_vars(body)) {
    if (v != hole) throw PreconditionError("constructor body has free variable '" + v + "' besides the hole");
  }

  // Universe: completed and depth-truncated values of mu hole . body.
  const auto recursive = mu(hole, body);
  ValueSet universe_set;
  {
    Denoter::Env env;
    Denoter complete(bases, {false, VarView::filter});
    universe_set = complete.eval(recursive, universe_depth, env);
    Denoter partial(bases, {true, VarView::truncate});
    for (auto& v : partial.eval(recursive, universe_depth, env)) universe_set.insert(v);
  }
  if (universe_set.size() > lattice::kMaxPowersetBase) {
    throw GuardError("constructor universe has " + std::to_string(universe_set.size()) +
                     " value trees; the powerset guard is " + std::to_string(lattice::kMaxPowersetBase));
  }

  std::vector<ValueTree> universe(universe_set.begin(), universe_set.end());
  std::vector<std::string> labels;
  for (const auto& v : universe) labels.push_back(to_string(v));
  auto lat = std::make_shared<const lattice::FiniteLattice>(lattice::FiniteLattice::build_powerset(labels));

  Denoter step(bases, {false, VarView::truncate_partial});
  std::vector<lattice::Element> table(lat->size());
  for (lattice::Element e = 0; e < lat->size(); ++e) {
    ValueSet arg;
    const auto m = lat->mask(e);
    for (std::size_t i = 0; i < universe.size(); ++i) {
      if (m & (1u << i)) arg.insert(universe[i]);
    }
    Denoter::Env env{{hole, &arg}};
    std::uint32_t image = 0;
    for (const auto& v : step.eval(body, universe_depth, env)) {
      auto it = std::lower_bound(universe.begin(), universe.end(), v);
      if (it != universe.end() && *it == v) image |= 1u << static_cast<std::uint32_t>(it - universe.begin());
    }
    table[e] = *lat->element_of_mask(image);
  }
  lattice::MonotoneEndo endo(lat, std::move(table));
  lattice::check_monotone(endo);
  return ConstructorEndo{std::move(universe), lat, std::move(endo)};
}

}  // namespace munu::structural
