#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace munu {

// Malformed DSL input. Line and column are 1-based; 0 means unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(what), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// An operation was called outside its domain (non-monotone map, incomplete
// lattice, non-Boolean lattice, arity misuse, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A desk-scale size guard was exceeded.
class GuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

enum class Principle {
  monotonicity,
  induction,
  coinduction,
  duality,
  heyting_adjunction,
  negation,
  fold_unfold,
  oracle_soundness,
  family_subtype,
  covariance,
  free_type_prefixed,
  reflexivity,
  transitivity,
  declared_negation,
};

const char* to_string(Principle p);

// Which reading of the F-supertype/F-subtype notions a nominal report uses.
enum class Notion { literal, family };

const char* to_string(Notion n);

// Uniform outcome record for every property check.
struct PrincipleReport {
  Principle principle = Principle::monotonicity;
  bool holds = true;
  // Offending element labels; empty iff holds.
  std::vector<std::string> counterexample;
  std::size_t checked_count = 0;
  std::optional<int> universe_depth;
  std::optional<Notion> notion;
  std::optional<std::string> subject;

  void fail(std::vector<std::string> witness) {
    holds = false;
    counterexample = std::move(witness);
  }
};

// Outcome of a subtype decision, shared by the structural and nominal engines.
struct Verdict {
  bool holds = true;
  // Goal pairs in the order they were first visited.
  std::vector<std::pair<std::string, std::string>> assumption_trace;
  std::optional<std::pair<std::string, std::string>> failure_pair;
  std::size_t visited_goals = 0;
  std::size_t goal_bound = 0;
  std::vector<std::string> notes;
};

}  // namespace munu
