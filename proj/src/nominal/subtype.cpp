#include <set>

#include "munu/nominal.hpp"

namespace munu::nominal {

namespace {

// Types a query can touch: subterms of the inputs closed under superclass
// climbing. Expansive tables would make this infinite, so App nesting is capped.
class Reach {
 public:
  Reach(const ClassTable& table, std::size_t cap) : table_(table), cap_(cap) {}

  void add(const GroundType& t) {
    if (nesting(t) > cap_ || !types_.insert(t).second) return;
    for (const auto& b : t.bounds) add(b);
    if (auto s = table_.superclass_of(t)) add(*s);
  }

  bool contains(const GroundType& t) const { return types_.count(t) > 0; }
  std::size_t size() const { return types_.size(); }

 private:
  const ClassTable& table_;
  std::size_t cap_;
  std::set<GroundType> types_;
};

class Checker {
 public:
  Checker(const ClassTable& table, const Reach& reach, Verdict& v) : table_(table), reach_(reach), v_(v) {}

  bool prove(const GroundType& a, const GroundType& b) {
    if (!reach_.contains(a) || !reach_.contains(b)) {
      if (!cut_) {
        v_.notes.push_back("expansive nesting cut off at " + to_string(a) + " <: " + to_string(b) +
                           "; goal assumed");
        cut_ = true;
      }
      return true;
    }
    if (!seen_.insert({a, b}).second) return true;
    ++v_.visited_goals;
    v_.assumption_trace.emplace_back(to_string(a), to_string(b));

    if (a == b || a.kind == GKind::null || b.kind == GKind::object) return true;
    if (a.kind == GKind::object || b.kind == GKind::null) return refute(a, b);
    if (a.kind == GKind::app && b.kind == GKind::app && a.name == b.name) {
      return prove(b.lower(), a.lower()) && prove(a.upper(), b.upper());
    }
    if (a.kind == GKind::plain && b.kind == GKind::plain && a.name == b.name) return true;
    return prove(*table_.superclass_of(a), b);
  }

 private:
  bool refute(const GroundType& a, const GroundType& b) {
    if (!v_.failure_pair) v_.failure_pair = std::pair(to_string(a), to_string(b));
    return false;
  }

  const ClassTable& table_;
  const Reach& reach_;
  Verdict& v_;
  std::set<std::pair<GroundType, GroundType>> seen_;
  bool cut_ = false;
};

}  // namespace

Verdict subtype(const GroundType& a, const GroundType& b, const ClassTable& table) {
  table.check_well_formed(a);
  table.check_well_formed(b);
  const std::size_t cap =
      std::max(nesting(a), nesting(b)) + table.declarations().size() * table.max_superclass_nesting() + 1;
  Reach reach(table, cap);
  reach.add(a);
  reach.add(b);
  Verdict v;
  v.goal_bound = reach.size() * reach.size();
  Checker checker(table, reach, v);
  v.holds = checker.prove(a, b);
  if (v.holds) v.failure_pair.reset();
  return v;
}

bool is_subtype(const GroundType& a, const GroundType& b, const ClassTable& table) {
  return subtype(a, b, table).holds;
}

bool containment(const Interval& i1, const Interval& i2, const ClassTable& table) {
  return is_subtype(i2.lower, i1.lower, table) && is_subtype(i1.upper, i2.upper, table);
}

GroundType free_type(const std::string& f, const ClassTable& table) {
  if (!table.find(f)) throw PreconditionError("unknown class '" + f + "'");
  if (table.arity(f) != 1) throw PreconditionError("class '" + f + "' is not generic");
  return GroundType::app(f, GroundType::null_t(), GroundType::object_t());
}

GroundType image(const std::string& f, const GroundType& p, const ClassTable& table) {
  if (!table.find(f)) throw PreconditionError("unknown class '" + f + "'");
  if (table.arity(f) != 1) throw PreconditionError("class '" + f + "' is not generic");
  table.check_well_formed(p);
  return GroundType::app(f, p, p);
}

Classification classify(const std::string& f, const GroundType& p, const ClassTable& table) {
  const auto fp = image(f, p, table);
  Classification c;
  c.pre_fixed = is_subtype(fp, p, table);
  c.post_fixed = is_subtype(p, fp, table);
  c.fixed = c.pre_fixed && c.post_fixed;
  return c;
}

}  // namespace munu::nominal
