#include "munu/common.hpp"

namespace munu {

const char* to_string(Principle p) {
  switch (p) {
    case Principle::monotonicity: return "monotonicity";
    case Principle::induction: return "induction";
    case Principle::coinduction: return "coinduction";
    case Principle::duality: return "duality";
    case Principle::heyting_adjunction: return "heyting-adjunction";
    case Principle::negation: return "negation";
    case Principle::fold_unfold: return "fold-unfold";
    case Principle::oracle_soundness: return "oracle-soundness";
    case Principle::family_subtype: return "greatest-family-subtype";
    case Principle::covariance: return "covariance";
    case Principle::free_type_prefixed: return "free-type-pre-fixed";
    case Principle::reflexivity: return "reflexivity";
    case Principle::transitivity: return "transitivity";
    case Principle::declared_negation: return "declared-negation";
  }
  return "unknown";
}

const char* to_string(Notion n) { return n == Notion::literal ? "literal" : "family"; }

}  // namespace munu
