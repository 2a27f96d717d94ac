#include <stdexcept>

#include "munu/lattice.hpp"

namespace munu::lattice {

namespace {

void require_certified(const MonotoneEndo& f) {
  if (!f.certified_monotone()) {
    throw PreconditionError("endofunction is not certified monotone; run check_monotone first");
  }
}

void require_complete(const FiniteLattice& lat) {
  if (!lat.is_complete_lattice()) throw PreconditionError("domain is not a complete lattice");
}

}  // namespace

MonotoneEndo::MonotoneEndo(std::shared_ptr<const FiniteLattice> domain, std::vector<Element> table)
    : domain_(std::move(domain)), table_(std::move(table)) {
  if (!domain_) throw PreconditionError("endofunction needs a domain");
  if (table_.size() != domain_->size()) {
    throw PreconditionError("endofunction table has " + std::to_string(table_.size()) +
                            " entries; the domain has " + std::to_string(domain_->size()));
  }
  for (auto v : table_) {
    if (v >= domain_->size()) throw PreconditionError("endofunction maps outside its domain");
  }
}

MonotoneEndo MonotoneEndo::identity(std::shared_ptr<const FiniteLattice> domain) {
  std::vector<Element> table(domain->size());
  for (Element i = 0; i < table.size(); ++i) table[i] = i;
  return MonotoneEndo(std::move(domain), std::move(table));
}

MonotoneEndo MonotoneEndo::constant(std::shared_ptr<const FiniteLattice> domain, Element c) {
  std::vector<Element> table(domain->size(), c);
  return MonotoneEndo(std::move(domain), std::move(table));
}

PrincipleReport check_monotone(MonotoneEndo& f) {
  PrincipleReport report{.principle = Principle::monotonicity};
  const auto& lat = f.domain();
  for (Element x = 0; x < lat.size() && report.holds; ++x) {
    for (Element y = 0; y < lat.size(); ++y) {
      if (!lat.leq(x, y)) continue;
      ++report.checked_count;
      if (!lat.leq(f(x), f(y))) {
        report.fail({lat.label(x), lat.label(y)});
        break;
      }
    }
  }
  f.certified_ = report.holds;
  return report;
}

std::vector<Element> pre_fixed_points(const MonotoneEndo& f) {
  require_certified(f);
  std::vector<Element> out;
  for (Element x = 0; x < f.domain().size(); ++x) {
    if (f.domain().leq(f(x), x)) out.push_back(x);
  }
  return out;
}

std::vector<Element> post_fixed_points(const MonotoneEndo& f) {
  require_certified(f);
  std::vector<Element> out;
  for (Element x = 0; x < f.domain().size(); ++x) {
    if (f.domain().leq(x, f(x))) out.push_back(x);
  }
  return out;
}

Element lfp(const MonotoneEndo& f) {
  require_certified(f);
  const auto& lat = f.domain();
  require_complete(lat);
  Element x = *lat.bottom();
  for (std::size_t steps = 0; f(x) != x; ++steps) {
    if (steps > lat.size()) throw std::logic_error("Kleene iteration from bottom did not stabilize");
    x = f(x);
  }
  for (auto p : pre_fixed_points(f)) {
    if (!lat.leq(x, p)) throw std::logic_error("iterate from bottom is not below pre-fixed point " + lat.label(p));
  }
  return x;
}

Element gfp(const MonotoneEndo& f) {
  require_certified(f);
  const auto& lat = f.domain();
  require_complete(lat);
  Element x = *lat.top();
  for (std::size_t steps = 0; f(x) != x; ++steps) {
    if (steps > lat.size()) throw std::logic_error("Kleene iteration from top did not stabilize");
    x = f(x);
  }
  for (auto p : post_fixed_points(f)) {
    if (!lat.leq(p, x)) throw std::logic_error("iterate from top is not above post-fixed point " + lat.label(p));
  }
  return x;
}

PrincipleReport check_induction_principle(const MonotoneEndo& f) {
  PrincipleReport report{.principle = Principle::induction};
  const auto& lat = f.domain();
  const auto mu = lfp(f);
  for (Element p = 0; p < lat.size(); ++p) {
    if (!lat.leq(f(p), p)) continue;
    ++report.checked_count;
    if (!lat.leq(mu, p)) {
      report.fail({lat.label(p)});
      break;
    }
  }
  return report;
}

PrincipleReport check_coinduction_principle(const MonotoneEndo& f) {
  PrincipleReport report{.principle = Principle::coinduction};
  const auto& lat = f.domain();
  const auto nu = gfp(f);
  for (Element p = 0; p < lat.size(); ++p) {
    if (!lat.leq(p, f(p))) continue;
    ++report.checked_count;
    if (!lat.leq(p, nu)) {
      report.fail({lat.label(p)});
      break;
    }
  }
  return report;
}

}  // namespace munu::lattice
