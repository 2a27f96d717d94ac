#include <algorithm>
#include <random>

#include "munu/cli.hpp"
#include "munu/lattice_dsl.hpp"
#include "munu/nominal.hpp"
#include "munu/structural.hpp"
#include "munu/text.hpp"
#include "source_error.hpp"

namespace munu::cli {

namespace fs = std::filesystem;

namespace {

PrincipleReport named(PrincipleReport r, const std::string& subject) {
  r.subject = subject;
  return r;
}

PrincipleReport blank(Principle p, const std::string& subject) {
  PrincipleReport r;
  r.principle = p;
  r.subject = subject;
  return r;
}

bool is_boolean(const lattice::FiniteLattice& lat) {
  try {
    lattice::boolean_complements(lat);
    return true;
  } catch (const PreconditionError&) {
    return false;
  }
}

void check_lattice_file(const std::string& file, std::string_view source, std::vector<PrincipleReport>& out) {
  const auto doc = lattice::parse_lattice_document(source);
  for (const auto& [name, lat_ptr] : doc.lattices) {
    const auto& lat = *lat_ptr;
    if (!lat.bottom() || !lat.top()) continue;
    const auto subject = file + ":" + name;
    auto r = blank(Principle::negation, subject);
    try {
      const auto bot = *lat.bottom(), top = *lat.top();
      ++r.checked_count;
      if (lattice::negation(lat, top).value != bot) r.fail({"not " + lat.label(top), lat.label(bot)});
      ++r.checked_count;
      if (r.holds && lattice::negation(lat, bot).value != top) r.fail({"not " + lat.label(bot), lat.label(top)});
      if (r.holds && is_boolean(lat)) {
        for (lattice::Element x = 0; x < lat.size() && r.holds; ++x) {
          ++r.checked_count;
          const auto n = lattice::negation(lat, x).value;
          bool complement;
          if (lat.is_powerset()) {
            const auto full = (1u << lat.powerset_base().size()) - 1;
            complement = n && lat.mask(*n) == (full & ~lat.mask(x));
          } else {
            complement = n && lat.meet(x, *n) == bot && lat.join(x, *n) == top;
          }
          if (!complement) r.fail({lat.label(x), n ? lat.label(*n) : "none"});
        }
      }
    } catch (const PreconditionError&) {
      // Missing meets: negation is undefined here.
      continue;
    }
    out.push_back(r);
  }
  for (const auto& [name, fn] : doc.functions) {
    const auto subject = file + ":" + name;
    auto f = fn;
    auto mono = lattice::check_monotone(f);
    out.push_back(named(mono, subject));
    if (!mono.holds || !f.domain().is_complete_lattice()) continue;
    out.push_back(named(lattice::check_induction_principle(f), subject));
    out.push_back(named(lattice::check_coinduction_principle(f), subject));
    if (is_boolean(f.domain())) out.push_back(named(lattice::check_mu_nu_duality(f), subject));
  }
}

void check_type_file(const std::string& file, std::string_view source, const CheckOptions& opts,
                     std::vector<PrincipleReport>& out) {
  using namespace structural;
  const auto defs = parse_definitions(source);
  const auto& bases = defs.bases;
  for (const auto& [name, t] : defs.types) {
    const auto subject = file + ":" + name;
    auto refl = blank(Principle::reflexivity, subject);
    refl.checked_count = 1;
    if (!subtype(t, t, bases).holds) refl.fail({to_string(t), to_string(t)});
    out.push_back(refl);
    if (t->kind == Kind::mu) {
      auto fu = blank(Principle::fold_unfold, subject);
      fu.checked_count = 1;
      if (!equivalent(t, unfold(t), bases)) fu.fail({to_string(t), to_string(unfold(t))});
      out.push_back(fu);
    }
  }

  auto sound = blank(Principle::oracle_soundness, file + ":definitions");
  for (const auto& [a, s] : defs.types) {
    for (const auto& [b, t] : defs.types) {
      if (!arrow_free(s) || !arrow_free(t) || !subtype(s, t, bases).holds) continue;
      try {
        const bool ok = oracle_subtype(s, t, opts.oracle_depth, bases);
        ++sound.checked_count;
        if (!ok) {
          sound.fail({a, b});
          break;
        }
      } catch (const GuardError&) {
      }
    }
    if (!sound.holds) break;
  }
  out.push_back(sound);

  // Seeded sweep over random types built from the file's bases.
  std::mt19937_64 rng(opts.seed);
  SampleOptions sample;
  sample.allow_arrow = false;
  sample.allow_top = false;
  sample.bases = bases.names();
  auto fu = blank(Principle::fold_unfold, file + ":random");
  auto rs = blank(Principle::oracle_soundness, file + ":random");
  for (std::size_t i = 0; i < opts.samples; ++i) {
    auto m = random_mu_type(rng, sample);
    ++fu.checked_count;
    if (fu.holds && !equivalent(m, unfold(m), bases)) fu.fail({to_string(m)});
    auto s = random_type(rng, sample);
    auto t = (i % 3 == 0) ? s : random_type(rng, sample);
    if (!subtype(s, t, bases).holds) continue;
    try {
      const bool ok = oracle_subtype(s, t, opts.oracle_depth, bases);
      ++rs.checked_count;
      if (rs.holds && !ok) rs.fail({to_string(s), to_string(t)});
    } catch (const GuardError&) {
    }
  }
  out.push_back(fu);
  out.push_back(rs);
}

void check_table_file(const std::string& file, std::string_view source, const CheckOptions& opts,
                      std::vector<PrincipleReport>& out) {
  using namespace nominal;
  auto table = std::make_shared<const ClassTable>(parse_class_table(source));
  const auto u = build_universe(table, opts.depth);
  const auto n = u.size();
  const auto label = [&](std::size_t i) { return to_string(u.members()[i]); };
  const auto subject = file + ":universe";

  auto refl = blank(Principle::reflexivity, subject);
  refl.universe_depth = opts.depth;
  for (std::size_t i = 0; i < n && refl.holds; ++i) {
    ++refl.checked_count;
    if (!u.leq(i, i)) refl.fail({label(i)});
  }
  out.push_back(refl);

  auto trans = blank(Principle::transitivity, subject);
  trans.universe_depth = opts.depth;
  for (std::size_t i = 0; i < n && trans.holds; ++i)
    for (std::size_t j = 0; j < n && trans.holds; ++j)
      for (std::size_t k = 0; k < n && trans.holds; ++k) {
        ++trans.checked_count;
        if (u.leq(i, j) && u.leq(j, k) && !u.leq(i, k)) trans.fail({label(i), label(j), label(k)});
      }
  out.push_back(trans);

  auto neg = blank(Principle::negation, subject);
  neg.universe_depth = opts.depth;
  neg.checked_count = 2;
  if (nominal_negation(GroundType::object_t(), u).result != GroundType::null_t()) neg.fail({"not Object", "Null"});
  else if (nominal_negation(GroundType::null_t(), u).result != GroundType::object_t()) neg.fail({"not Null", "Object"});
  out.push_back(neg);

  for (const auto& f : table->generic_classes()) {
    const auto fs = file + ":" + f;
    out.push_back(named(greatest_family_subtype_check(f, u), fs));
    out.push_back(named(covariance_check(f, u), fs));
    auto pre = blank(Principle::free_type_prefixed, fs);
    pre.universe_depth = opts.depth;
    pre.notion = Notion::literal;
    pre.checked_count = 1;
    const auto top = free_type(f, *table);
    const auto img = image(f, top, *table);
    if (!is_subtype(img, top, *table)) pre.fail({to_string(img), to_string(top)});
    out.push_back(pre);
  }
}

}  // namespace

std::vector<PrincipleReport> check_all(const fs::path& dir, const CheckOptions& opts) {
  if (!fs::is_directory(dir)) throw PreconditionError("'" + dir.string() + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension();
    if (ext == ".lat" || ext == ".fun" || ext == ".ty" || ext == ".tbl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

  std::vector<PrincipleReport> out;
  for (const auto& path : files) {
    const auto name = path.filename().string();
    const auto source = text::read_file(path.string());
    const auto ext = path.extension();
    try {
      if (ext == ".ty") check_type_file(name, source, opts, out);
      else if (ext == ".tbl") check_table_file(name, source, opts, out);
      else check_lattice_file(name, source, out);
    } catch (const ParseError& e) {
      throw SourceError(path.string(), e);
    }
  }
  return out;
}

}  // namespace munu::cli
