#include <doctest.h>

#include <random>

#include "munu/structural.hpp"
#include "value_oracles.hpp"

using namespace munu;
using namespace munu::structural;
using namespace munu::testing;

namespace {

const BaseOrder& std_bases() {
  static const BaseOrder b = BaseOrder::standard();
  return b;
}

StructType parse(std::string_view s) { return parse_type(s, std_bases()); }

bool sub(std::string_view a, std::string_view b) { return subtype(parse(a), parse(b), std_bases()).holds; }

}  // namespace

TEST_CASE("parse_type builds canonical closed ASTs") {
  auto list = parse("mu X . Unit + Int * X");
  CHECK(same(list, mu("X", sum(unit(), prod(base("Int"), var("X"))))));
  CHECK(to_string(list) == "mu X . Unit + Int * X");

  CHECK(same(parse("Unit -> Top"), arrow(unit(), top())));
  CHECK(same(parse("mu Q . Unit + Q"), parse("mu X . Unit + X")));
}

TEST_CASE("parse_type precedence and errors") {
  BaseOrder bases = BaseOrder::standard();
  bases.declare("A");
  bases.declare("B");
  bases.declare("C");
  CHECK(same(parse_type("A -> B -> C", bases), arrow(base("A"), arrow(base("B"), base("C")))));
  CHECK(same(parse_type("A + B * C", bases), sum(base("A"), prod(base("B"), base("C")))));
  CHECK(same(parse_type("A * B + C -> A", bases), arrow(sum(prod(base("A"), base("B")), base("C")), base("A"))));
  CHECK(same(parse_type("(A + B) * C", bases), prod(sum(base("A"), base("B")), base("C"))));
  CHECK(same(parse_type("A * mu X . B + X", bases), prod(base("A"), mu("X", sum(base("B"), var("X"))))));

  CHECK_THROWS_AS(parse("mu X . X"), ParseError);
  CHECK_THROWS_AS(parse("mu X . mu Y . X"), ParseError);
  CHECK_THROWS_AS(parse("Unit + Q"), ParseError);
  CHECK_THROWS_AS(parse("Unit +"), ParseError);
  CHECK_THROWS_AS(parse("(Unit"), ParseError);
  CHECK_THROWS_AS(parse("Unit $ Unit"), ParseError);
  try {
    parse("Unit + Q");
  } catch (const ParseError& e) {
    CHECK(e.column() == 8);
  }
}

TEST_CASE("printing round-trips through the parser") {
  std::mt19937_64 rng(7);
  SampleOptions opts;
  for (int i = 0; i < 300; ++i) {
    auto t = random_type(rng, opts);
    CHECK(same(parse(to_string(t)), t));
  }
}

TEST_CASE("standard library encodings") {
  CHECK(same(library("Bool"), sum(unit(), unit())));
  CHECK(same(library("Nat"), mu("X", sum(unit(), var("X")))));
  auto list = library("ListInt");
  auto unfolded = unfold(list);
  CHECK(same(unfolded, sum(unit(), prod(library("Int"), list))));
  CHECK(equivalent(list, unfolded, std_bases()));
  CHECK(equivalent(parse("lib:Bool"), parse("Unit + Unit"), std_bases()));
  CHECK(equivalent(parse("lib:Nat"), parse("Unit + lib:Nat"), std_bases()));
  CHECK(equivalent(parse("lib:Int"), parse("lib:Nat + Unit + lib:Nat"), std_bases()));
  CHECK(equivalent(parse("ListInt"), parse("Unit + lib:Int * ListInt"), std_bases()));
  // Base Nat and the encoding are different types.
  CHECK_FALSE(equivalent(parse("Nat"), parse("lib:Nat"), std_bases()));
}

TEST_CASE("subtype: worked examples") {
  CHECK(sub("mu X . Unit + Int * X", "Top"));
  CHECK(sub("Unit -> Unit", "Top"));
  CHECK(sub("mu X . Unit + Nat * X", "mu X . Unit + Int * X"));
  CHECK_FALSE(sub("mu X . Unit + Int * X", "mu X . Unit + Nat * X"));
  CHECK_FALSE(sub("Unit * Unit", "Unit + Unit"));
  CHECK_FALSE(sub("Top", "Unit"));
  CHECK(sub("Int -> Nat", "Nat -> Int"));
  CHECK_FALSE(sub("Nat -> Nat", "Int -> Nat"));
  CHECK(equivalent(parse("mu X . Unit + Int * X"), parse("Unit + Int * (mu X . Unit + Int * X)"), std_bases()));
  CHECK_FALSE(equivalent(parse("Unit"), parse("Top"), std_bases()));
  // Two presentations of the same infinite tree.
  CHECK(equivalent(parse("mu X . Unit + X"), parse("mu X . Unit + (Unit + X)"), std_bases()));

  auto v = subtype(parse("Unit * Unit"), parse("Unit + Unit"), std_bases());
  REQUIRE(v.failure_pair);
  CHECK(v.failure_pair->first == "Unit * Unit");
  CHECK(v.assumption_trace.size() == 1);
}

TEST_CASE("subtype: assumption trace on a recursive goal") {
  auto v = subtype(parse("mu X . Unit + Nat * X"), parse("mu X . Unit + Int * X"), std_bases());
  CHECK(v.holds);
  CHECK_FALSE(v.failure_pair);
  CHECK(v.visited_goals == v.assumption_trace.size());
  CHECK(v.visited_goals <= v.goal_bound);
  CHECK(v.assumption_trace.front().first == "Unit + Nat * X");
}

TEST_CASE("property: subtype is reflexive and transitive, Top is maximal") {
  std::mt19937_64 rng(11);
  SampleOptions opts;
  for (int i = 0; i < 1000; ++i) {
    auto a = random_type(rng, opts);
    auto b = random_type(rng, opts);
    auto c = random_type(rng, opts);
    CHECK(subtype(a, a, std_bases()).holds);
    CHECK(subtype(a, top(), std_bases()).holds);
    if (subtype(top(), a, std_bases()).holds) CHECK(equivalent(a, top(), std_bases()));
    if (subtype(a, b, std_bases()).holds && subtype(b, c, std_bases()).holds) {
      CHECK(subtype(a, c, std_bases()).holds);
    }
    auto v = subtype(a, b, std_bases());
    CHECK(v.visited_goals <= v.goal_bound);
  }
}

TEST_CASE("property: transitivity on related triples") {
  // Random triples are rarely related; build chains by widening leaves.
  std::mt19937_64 rng(12);
  SampleOptions opts;
  opts.allow_arrow = false;
  opts.bases = {"Nat"};
  std::size_t related = 0;
  for (int i = 0; i < 300; ++i) {
    auto a = random_type(rng, opts);
    auto b = parse(std::string(to_string(a)));
    auto text = to_string(a);
    for (std::size_t p = text.find("Nat"); p != std::string::npos; p = text.find("Nat", p)) text.replace(p, 3, "Int");
    auto c = parse(text);
    if (subtype(a, c, std_bases()).holds) ++related;
    CHECK(subtype(a, b, std_bases()).holds);
    CHECK(subtype(b, c, std_bases()).holds == subtype(a, c, std_bases()).holds);
  }
  CHECK(related == 300);
}

TEST_CASE("property: fold/unfold equivalence") {
  std::mt19937_64 rng(13);
  SampleOptions opts;
  for (int i = 0; i < 200; ++i) {
    auto t = random_mu_type(rng, opts);
    REQUIRE(t->kind == Kind::mu);
    CHECK(equivalent(t, unfold(t), std_bases()));
  }
}

TEST_CASE("property: arrow variance") {
  std::mt19937_64 rng(14);
  SampleOptions opts;
  opts.max_size = 6;
  for (int i = 0; i < 500; ++i) {
    auto a = random_type(rng, opts);
    auto b = random_type(rng, opts);
    auto a2 = random_type(rng, opts);
    auto b2 = random_type(rng, opts);
    const bool expected = subtype(a2, a, std_bases()).holds && subtype(b, b2, std_bases()).holds;
    CHECK(subtype(arrow(a, b), arrow(a2, b2), std_bases()).holds == expected);
  }
}

TEST_CASE("denote: worked examples") {
  CHECK(denote(unit(), 0, false, std_bases()) == ValueSet{ValueTree::unit_v()});
  CHECK(denote(unit(), 5, false, std_bases()) == ValueSet{ValueTree::unit_v()});

  auto list = parse("mu X . Unit + Int * X");
  auto got = denote(list, 3, false, std_bases());
  ValueSet expected;
  for (auto& v : all_trees(3, int_leaves()))
    if (is_int_list(v, {"-1", "0", "1"})) expected.insert(v);
  CHECK(expected.size() == 4);
  CHECK(got == expected);
  CHECK(got.count(nil()));
  CHECK(got.count(cons("0", nil())));

  CHECK(denote(parse("mu X . Top * X"), 3, false, std_bases()).empty());
  CHECK_THROWS_AS(denote(parse("Unit -> Unit"), 2, false, std_bases()), PreconditionError);
  CHECK_THROWS_AS(denote(unit(), 7, false, std_bases()), GuardError);
}

TEST_CASE("denote: truncated reading adds cut-off prefixes") {
  auto list = parse("mu X . Unit + Int * X");
  auto partial = denote(list, 3, true, std_bases());
  CHECK(partial.count(nil()));
  CHECK(partial.count(cons("1", nil())));
  CHECK(partial.count(cons("1", ValueTree::inr(ValueTree::stub()))));
  for (const auto& v : partial) CHECK(depth(v) <= 3);

  // An infinite stream has no completed values but has every prefix.
  auto stream = parse("mu X . Int * X");
  CHECK(denote(stream, 4, false, std_bases()).empty());
  // <i;<j;_>> for each pair of Int tags.
  CHECK(denote(stream, 2, true, std_bases()).size() == 9);
}

TEST_CASE("denote agrees with the independent enumeration on small types") {
  std::mt19937_64 rng(15);
  SampleOptions opts;
  opts.allow_arrow = false;
  opts.allow_top = false;
  opts.max_size = 8;
  const auto universe = all_trees(2, int_leaves());
  for (int i = 0; i < 150; ++i) {
    auto t = random_type(rng, opts);
    auto den = denote(t, 2, false, std_bases());
    ValueSet by_membership;
    for (const auto& v : universe)
      if (inhabits(v, t, std_bases())) by_membership.insert(v);
    CHECK(den == by_membership);
  }
}

TEST_CASE("oracle_subtype") {
  CHECK(oracle_subtype(parse("mu X . Unit + Int * X"), top(), 4, std_bases()));
  CHECK(oracle_subtype(parse("mu X . Unit + Nat * X"), parse("mu X . Unit + Int * X"), 4, std_bases()));
  CHECK_FALSE(oracle_subtype(parse("Unit + Unit"), parse("Unit"), 2, std_bases()));
  CHECK_FALSE(oracle_subtype(parse("mu X . Unit + Int * X"), parse("mu X . Unit + Nat * X"), 4, std_bases()));
}

TEST_CASE("property: subtype is sound for the denotational oracle") {
  std::mt19937_64 rng(16);
  SampleOptions lhs;
  lhs.allow_arrow = false;
  lhs.allow_top = false;
  SampleOptions rhs = lhs;
  rhs.allow_top = true;
  std::size_t positive = 0;
  for (int i = 0; i < 1000; ++i) {
    auto s = random_type(rng, lhs);
    auto t = (i % 3 == 0) ? s : random_type(rng, rhs);
    if (subtype(s, t, std_bases()).holds) {
      ++positive;
      CHECK(oracle_subtype(s, t, 4, std_bases()));
    }
  }
  CHECK(positive > 300);
}

TEST_CASE("constructor_as_endo") {
  auto body = parse_body("Unit + Int * X", "X", std_bases());
  auto ce = constructor_as_endo(body, "X", 3, std_bases());
  CHECK(ce.endo.certified_monotone());
  const auto mu_set = ce.trees(lattice::lfp(ce.endo));
  CHECK(mu_set == denote(parse("mu X . Unit + Int * X"), 3, false, std_bases()));
  const auto nu_set = ce.trees(lattice::gfp(ce.endo));
  CHECK(nu_set.size() == 7);
  CHECK(nu_set.count(cons("-1", ValueTree::inr(ValueTree::stub()))));
  CHECK(lattice::check_induction_principle(ce.endo).holds);
  CHECK(lattice::check_coinduction_principle(ce.endo).holds);
  CHECK(lattice::check_mu_nu_duality(ce.endo).holds);

  auto id = constructor_as_endo(parse_body("X", "X", std_bases()), "X", 3, std_bases());
  CHECK(id.endo.certified_monotone());
  CHECK(id.trees(lattice::lfp(id.endo)).empty());
  CHECK(lattice::gfp(id.endo) == id.lattice->top());

  auto constant = constructor_as_endo(parse_body("Unit", "X", std_bases()), "X", 3, std_bases());
  CHECK(constant.trees(lattice::lfp(constant.endo)) == ValueSet{ValueTree::unit_v()});
  CHECK(constant.trees(lattice::gfp(constant.endo)) == ValueSet{ValueTree::unit_v()});

  CHECK_THROWS_AS(constructor_as_endo(parse_body("X -> Unit", "X", std_bases()), "X", 2, std_bases()),
                  PreconditionError);
  CHECK_THROWS_AS(constructor_as_endo(parse_body("Unit + Int * X", "X", std_bases()), "X", 6, std_bases()),
                  GuardError);
}

TEST_CASE("property: constructor endofunctions are monotone and their lfp is the completed denotation") {
  std::mt19937_64 rng(17);
  std::size_t built = 0;
  for (int i = 0; i < 200 && built < 60; ++i) {
    SampleOptions opts;
    opts.allow_arrow = false;
    opts.allow_top = false;
    opts.max_size = 7;
    auto t = random_mu_type(rng, opts);
    for (std::size_t d = 1; d <= 3; ++d) {
      try {
        auto ce = constructor_as_endo(t->left, t->name, d, std_bases());
        ++built;
        CHECK(ce.endo.certified_monotone());
        CHECK(ce.trees(lattice::lfp(ce.endo)) == denote(t, d, false, std_bases()));
        CHECK(lattice::check_induction_principle(ce.endo).holds);
        CHECK(lattice::check_coinduction_principle(ce.endo).holds);
      } catch (const GuardError&) {
      }
    }
  }
  CHECK(built >= 30);
}

TEST_CASE("parse_definitions") {
  auto defs = parse_definitions(R"(
# lists over a small alphabet
base Char
base Nat <= Int
tags Char = a b
type CharList = mu X . Unit + Char * X
type Pair = CharList * CharList
)");
  CHECK(defs.bases.has("Char"));
  CHECK(defs.bases.values_of("Char") == std::vector<std::string>{"a", "b"});
  REQUIRE(defs.find("Pair"));
  CHECK(to_string(*defs.find("Pair")) == "(mu X . Unit + Char * X) * (mu X . Unit + Char * X)");

  CHECK_THROWS_AS(parse_definitions("type A = mu X . X"), ParseError);
  CHECK_THROWS_AS(parse_definitions("base A <= B\nbase B <= A"), ParseError);
  CHECK_THROWS_AS(parse_definitions("frobnicate"), ParseError);
  try {
    parse_definitions("\n\ntype A = Unit + Q");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 17);
  }
}
