#include "munu/lattice.hpp"

namespace munu::lattice {

Implication heyting_implication(const FiniteLattice& lat, Element x, Element y) {
  Implication out;
  std::vector<Element> qualifying;
  std::vector<Element> meets(lat.size());
  for (Element a = 0; a < lat.size(); ++a) {
    auto m = lat.meet(x, a);
    if (!m) {
      throw PreconditionError("meet of '" + lat.label(x) + "' and '" + lat.label(a) + "' does not exist");
    }
    meets[a] = *m;
    if (lat.leq(*m, y)) qualifying.push_back(a);
  }
  out.qualifying = qualifying.size();
  out.value = lat.join_of(qualifying);
  if (!out.value) return out;

  out.adjunction_holds = true;
  for (Element a = 0; a < lat.size(); ++a) {
    if (lat.leq(a, *out.value) != lat.leq(meets[a], y)) {
      out.adjunction_holds = false;
      break;
    }
  }
  return out;
}

Implication negation(const FiniteLattice& lat, Element x) {
  if (!lat.bottom()) throw PreconditionError("negation needs a bottom element");
  return heyting_implication(lat, x, *lat.bottom());
}

std::vector<Element> boolean_complements(const FiniteLattice& lat) {
  if (!lat.bottom() || !lat.top()) throw PreconditionError("lattice is not bounded, so it is not Boolean");
  std::vector<Element> out(lat.size());
  for (Element x = 0; x < lat.size(); ++x) {
    auto n = negation(lat, x).value;
    if (!n || lat.join(x, *n) != lat.top() || lat.meet(x, *n) != lat.bottom()) {
      throw PreconditionError("lattice is not Boolean: '" + lat.label(x) + "' has no complement");
    }
    out[x] = *n;
  }
  return out;
}

MonotoneEndo dual_endo(const MonotoneEndo& f) {
  const auto complement = boolean_complements(f.domain());
  std::vector<Element> table(f.domain().size());
  for (Element x = 0; x < table.size(); ++x) table[x] = complement[f(complement[x])];
  MonotoneEndo dual(f.domain_ptr(), std::move(table));
  check_monotone(dual);
  return dual;
}

PrincipleReport check_mu_nu_duality(const MonotoneEndo& f) {
  PrincipleReport report{.principle = Principle::duality};
  const auto& lat = f.domain();
  const auto complement = boolean_complements(lat);
  auto dual = dual_endo(f);
  report.checked_count = 1;
  if (!dual.certified_monotone()) {
    report.fail({"dual endofunction is not monotone"});
    return report;
  }
  const auto nu = gfp(f);
  const auto via_mu = complement[lfp(dual)];
  if (nu != via_mu) report.fail({lat.label(nu), lat.label(via_mu)});
  return report;
}

}  // namespace munu::lattice
