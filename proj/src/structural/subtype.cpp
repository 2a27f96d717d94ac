#include <map>
#include <set>

#include "munu/structural.hpp"

namespace munu::structural {

namespace {

// Equi-recursive types as a finite graph: Mu nodes forward to their body and
// variables point back at their binder, so unfolding is pointer chasing.
class TypeGraph {
 public:
  std::size_t add(const StructType& t) {
    std::map<std::string, std::size_t> env;
    return build(t, env);
  }

  // Follows Mu forwarding to the constructor or leaf a node stands for.
  std::size_t resolve(std::size_t id) const {
    std::size_t steps = 0;
    while (nodes_[id].kind == Kind::mu) {
      id = nodes_[id].left;
      if (++steps > nodes_.size()) throw PreconditionError("non-contractive type reached the subtype checker");
    }
    return id;
  }

  struct Node {
    Kind kind;
    std::string name;
    std::size_t left = 0;
    std::size_t right = 0;
    StructType source;
  };

  const Node& operator[](std::size_t id) const { return nodes_[id]; }

 private:
  std::size_t build(const StructType& t, std::map<std::string, std::size_t>& env) {
    switch (t->kind) {
      case Kind::var: {
        auto it = env.find(t->name);
        if (it == env.end()) throw PreconditionError("free variable '" + t->name + "' in subtype query");
        return it->second;
      }
      case Kind::mu: {
        const auto slot = nodes_.size();
        nodes_.push_back({Kind::mu, t->name, 0, 0, t});
        auto saved = env.find(t->name) == env.end() ? std::nullopt : std::optional(env[t->name]);
        env[t->name] = slot;
        const auto body = build(t->left, env);
        if (saved) env[t->name] = *saved; else env.erase(t->name);
        nodes_[slot].left = body;
        return slot;
      }
      case Kind::sum:
      case Kind::prod:
      case Kind::arrow: {
        const auto id = nodes_.size();
        nodes_.push_back({t->kind, {}, 0, 0, t});
        const auto l = build(t->left, env);
        const auto r = build(t->right, env);
        nodes_[id].left = l;
        nodes_[id].right = r;
        return id;
      }
      default: {
        const auto id = nodes_.size();
        nodes_.push_back({t->kind, t->name, 0, 0, t});
        return id;
      }
    }
  }

  std::vector<Node> nodes_;
};

class Checker {
 public:
  Checker(const TypeGraph& g, const BaseOrder& bases, Verdict& verdict) : g_(g), bases_(bases), v_(verdict) {}

  // Every rule is a conjunction, so one refutation anywhere refutes the root
  // and goals already seen can be assumed.
  bool prove(std::size_t s, std::size_t t) {
    s = g_.resolve(s);
    t = g_.resolve(t);
    if (!seen_.insert({s, t}).second) return true;
    ++v_.visited_goals;
    v_.assumption_trace.emplace_back(to_string(g_[s].source), to_string(g_[t].source));

    const auto& a = g_[s];
    const auto& b = g_[t];
    bool ok = false;
    if (b.kind == Kind::top) {
      ok = true;
    } else if (a.kind != b.kind) {
      ok = false;
    } else {
      switch (a.kind) {
        case Kind::unit: ok = true; break;
        case Kind::base: ok = bases_.leq(a.name, b.name); break;
        case Kind::sum:
        case Kind::prod: return prove(a.left, b.left) && prove(a.right, b.right);
        case Kind::arrow: return prove(b.left, a.left) && prove(a.right, b.right);
        default: ok = false; break;
      }
    }
    if (!ok && !v_.failure_pair) v_.failure_pair = v_.assumption_trace.back();
    return ok;
  }

 private:
  const TypeGraph& g_;
  const BaseOrder& bases_;
  Verdict& v_;
  std::set<std::pair<std::size_t, std::size_t>> seen_;
};

}  // namespace

Verdict subtype(const StructType& s, const StructType& t, const BaseOrder& bases) {
  if (!free_vars(s).empty() || !free_vars(t).empty()) throw PreconditionError("subtype needs closed types");
  if (!contractive(s) || !contractive(t)) throw PreconditionError("subtype needs contractive types");
  TypeGraph g;
  const auto sid = g.add(s);
  const auto tid = g.add(t);
  Verdict v;
  const auto n = size(s) + size(t);
  v.goal_bound = n * n;
  Checker checker(g, bases, v);
  v.holds = checker.prove(sid, tid);
  if (v.holds) v.failure_pair.reset();
  return v;
}

bool equivalent(const StructType& s, const StructType& t, const BaseOrder& bases) {
  return subtype(s, t, bases).holds && subtype(t, s, bases).holds;
}

}  // namespace munu::structural
