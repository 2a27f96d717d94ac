#include "munu/nominal.hpp"

namespace munu::nominal {

namespace {

void require_generic(const std::string& f, const ClassTable& table) {
  if (!table.find(f)) throw PreconditionError("unknown class '" + f + "'");
  if (table.arity(f) != 1) throw PreconditionError("class '" + f + "' is not generic");
}

std::size_t index_or_throw(const GroundType& t, const Universe& u) {
  auto i = u.index_of(t);
  if (!i) {
    throw PreconditionError(to_string(t) + " is outside the universe of depth " + std::to_string(u.depth()));
  }
  return *i;
}

// Some non-Null member lies below both.
bool share_lower_bound(std::size_t a, std::size_t b, const Universe& u) {
  for (std::size_t m = 1; m < u.size(); ++m) {
    if (u.leq(m, a) && u.leq(m, b)) return true;
  }
  return false;
}

PrincipleReport report(Principle p, const std::string& f, const Universe& u, Notion n) {
  PrincipleReport r;
  r.principle = p;
  r.universe_depth = u.depth();
  r.notion = n;
  r.subject = f;
  return r;
}

}  // namespace

FamilyMembers family_members(const std::string& f, const Universe& u) {
  require_generic(f, u.table());
  const auto& table = u.table();
  std::vector<GroundType> apps;
  for (const auto& i : u.intervals()) apps.push_back(GroundType::app(f, i));
  FamilyMembers out;
  for (const auto& p : u.members()) {
    for (const auto& a : apps) {
      if (is_subtype(p, a, table)) {
        out.family_subtypes.push_back(p);
        break;
      }
    }
    for (const auto& a : apps) {
      if (is_subtype(a, p, table)) {
        out.family_supertypes.push_back(p);
        break;
      }
    }
  }
  return out;
}

PrincipleReport greatest_family_subtype_check(const std::string& f, const Universe& u) {
  auto r = report(Principle::family_subtype, f, u, Notion::family);
  const auto top = free_type(f, u.table());
  for (const auto& p : family_members(f, u).family_subtypes) {
    ++r.checked_count;
    if (!is_subtype(p, top, u.table())) {
      r.fail({to_string(p), to_string(top)});
      break;
    }
  }
  return r;
}

LeastPreFixed least_pre_fixed_search(const std::string& f, const Universe& u) {
  require_generic(f, u.table());
  const auto& table = u.table();
  LeastPreFixed out;

  std::vector<std::size_t> pre;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (is_subtype(image(f, u.members()[i], table), u.members()[i], table)) pre.push_back(i);
  }
  for (auto i : pre) {
    const bool minimal = std::none_of(pre.begin(), pre.end(), [&](std::size_t j) { return j != i && u.leq(j, i); });
    if (minimal) out.minimal_set.push_back(u.members()[i]);
  }
  if (out.minimal_set.size() == 1) {
    const auto m = *u.index_of(out.minimal_set.front());
    if (std::all_of(pre.begin(), pre.end(), [&](std::size_t j) { return u.leq(m, j); })) {
      out.least = out.minimal_set.front();
    }
  }

  std::vector<std::size_t> supers;
  for (const auto& s : family_members(f, u).family_supertypes) supers.push_back(*u.index_of(s));
  for (std::size_t p = 1; p < u.size() && !out.family_lower_bound; ++p) {
    if (std::all_of(supers.begin(), supers.end(), [&](std::size_t s) { return u.leq(p, s); })) {
      out.family_lower_bound = u.members()[p];
    }
  }
  if (!out.family_lower_bound) {
    // Prefer exact instantiations with declared classes, e.g. F<A> and F<B>.
    auto plain_exact = [&](std::size_t i) {
      const auto& t = u.members()[i];
      return t.kind == GKind::app && t.lower() == t.upper() && t.lower().kind != GKind::null &&
             t.lower().kind != GKind::object;
    };
    std::stable_partition(supers.begin(), supers.end(), plain_exact);
    for (std::size_t x = 0; x < supers.size() && !out.no_least_witnesses; ++x) {
      for (std::size_t y = x + 1; y < supers.size(); ++y) {
        const auto a = supers[x], b = supers[y];
        if (u.leq(a, b) || u.leq(b, a) || share_lower_bound(a, b, u)) continue;
        out.no_least_witnesses = std::pair(u.members()[a], u.members()[b]);
        break;
      }
    }
  }
  return out;
}

PrincipleReport covariance_check(const std::string& f, const Universe& u) {
  require_generic(f, u.table());
  auto r = report(Principle::covariance, f, u, Notion::literal);
  const auto is = u.intervals();
  for (const auto& i1 : is) {
    for (const auto& i2 : is) {
      ++r.checked_count;
      if (!containment(i1, i2, u.table())) continue;
      const auto a = GroundType::app(f, i1), b = GroundType::app(f, i2);
      if (!is_subtype(a, b, u.table())) {
        r.fail({to_string(a), to_string(b)});
        return r;
      }
    }
  }
  return r;
}

Negation nominal_negation(const GroundType& x, const Universe& u) {
  const auto xi = index_or_throw(x, u);
  Negation out;
  std::vector<std::size_t> disjoint;
  for (std::size_t a = 0; a < u.size(); ++a) {
    if (!share_lower_bound(a, xi, u)) disjoint.push_back(a);
  }
  std::vector<std::size_t> upper;
  for (std::size_t c = 0; c < u.size(); ++c) {
    if (std::all_of(disjoint.begin(), disjoint.end(), [&](std::size_t a) { return u.leq(a, c); })) upper.push_back(c);
  }
  for (auto a : disjoint) out.disjoint_set.push_back(u.members()[a]);
  for (auto c : upper) {
    if (std::none_of(upper.begin(), upper.end(), [&](std::size_t d) { return d != c && u.leq(d, c); })) {
      out.minimal_upper_bounds.push_back(u.members()[c]);
    }
  }
  for (auto c : upper) {
    if (std::all_of(upper.begin(), upper.end(), [&](std::size_t d) { return u.leq(c, d); })) {
      out.result = u.members()[c];
    }
  }
  return out;
}

Verdict declared_negation_check(const GroundType& neg, const GroundType& pos, const GroundType& base,
                                const Universe& u) {
  const auto n = index_or_throw(neg, u), p = index_or_throw(pos, u), b = index_or_throw(base, u);
  Verdict v;
  auto require = [&](bool ok, std::size_t x, std::size_t y, const std::string& why) {
    if (ok) return;
    v.holds = false;
    v.notes.push_back(why);
    if (!v.failure_pair) v.failure_pair = std::pair(to_string(u.members()[x]), to_string(u.members()[y]));
  };
  require(u.leq(n, b), n, b, to_string(neg) + " is not a subtype of " + to_string(base));
  require(u.leq(p, b), p, b, to_string(pos) + " is not a subtype of " + to_string(base));
  require(!u.leq(n, p) && !u.leq(p, n), n, p, to_string(neg) + " and " + to_string(pos) + " are not parallel");
  for (std::size_t m = 1; m < u.size(); ++m) {
    if (u.leq(m, n) && u.leq(m, p)) {
      require(false, m, n, to_string(u.members()[m]) + " is a common subtype of both");
      break;
    }
  }
  return v;
}

}  // namespace munu::nominal
