#include "munu/cli.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <tuple>

#include "CLI11.hpp"
#include "munu/lattice_dsl.hpp"
#include "munu/nominal.hpp"
#include "munu/report_json.hpp"
#include "munu/structural.hpp"
#include "munu/text.hpp"
#include "source_error.hpp"

namespace munu::cli {

namespace {

using report::Json;

struct Ctx {
  std::ostream& out;
  bool json = false;
  std::optional<int> depth;
  std::size_t oracle_depth = 4;
  std::uint64_t seed = 1;
  bool partial = false;
  std::string defs_file;
  std::string command;
};

std::string describe(const PrincipleReport& r) {
  std::ostringstream s;
  if (r.subject) s << *r.subject << " ";
  s << to_string(r.principle);
  if (r.notion) s << " (" << to_string(*r.notion) << ")";
  s << ": " << (r.holds ? "holds" : "FAILS") << " (checked " << r.checked_count << ")";
  if (!r.holds) {
    s << ":";
    for (std::size_t i = 0; i < r.counterexample.size(); ++i) s << (i ? " | " : " ") << r.counterexample[i];
  }
  return s.str();
}

struct Output {
  Json answer = nullptr;
  std::vector<std::string> lines;
  std::vector<PrincipleReport> reports;
  std::optional<Verdict> verdict;
  bool show_reports = true;
  std::optional<std::uint64_t> seed;
};

int emit(const Ctx& ctx, const Output& o) {
  const bool all_hold = std::all_of(o.reports.begin(), o.reports.end(), [](const auto& r) { return r.holds; });
  if (ctx.json) {
    std::vector<Json> rs;
    for (const auto& r : o.reports) rs.push_back(report::to_json(r, o.seed));
    std::optional<Json> v;
    if (o.verdict) v = report::to_json(*o.verdict);
    ctx.out << report::render(report::envelope(ctx.command, o.answer, std::move(rs), std::move(v)));
  } else {
    for (const auto& l : o.lines) ctx.out << l << "\n";
    if (o.show_reports) {
      for (const auto& r : o.reports) ctx.out << describe(r) << "\n";
    }
  }
  return all_hold ? kOk : kPropertyFailed;
}

Json labels_json(const std::vector<std::string>& xs) { return Json(xs); }

template <class F>
auto sourced(const std::string& source, F&& f) {
  try {
    return f();
  } catch (const SourceError&) {
    throw;
  } catch (const ParseError& e) {
    throw SourceError(source, e);
  }
}

// --- lattice ---------------------------------------------------------------

lattice::LatticeDocument load_lattices(const std::string& file) {
  const auto src = text::read_file(file);
  return sourced(file, [&] { return lattice::parse_lattice_document(src); });
}

// Loads and certifies; returns the monotonicity report when it fails.
std::variant<lattice::MonotoneEndo, PrincipleReport> load_function(const std::string& file, const std::string& name) {
  auto f = load_lattices(file).function(name);
  auto mono = lattice::check_monotone(f);
  mono.subject = name;
  if (!mono.holds) return mono;
  return f;
}

int lat_command(Ctx& ctx, const std::string& op, const std::string& file, const std::string& name) {
  auto loaded = load_function(file, name);
  if (auto* bad = std::get_if<PrincipleReport>(&loaded)) {
    Output o;
    o.reports.push_back(*bad);
    return emit(ctx, o);
  }
  auto& f = std::get<lattice::MonotoneEndo>(loaded);
  const auto& lat = f.domain();
  Output o;
  auto subject = [&](PrincipleReport r) {
    r.subject = name;
    return r;
  };
  if (op == "lfp" || op == "gfp") {
    const auto x = op == "lfp" ? lattice::lfp(f) : lattice::gfp(f);
    o.answer = lat.label(x);
    o.lines.push_back(lat.label(x));
    o.show_reports = false;
  } else if (op == "prefix" || op == "postfix") {
    std::vector<std::string> ls;
    for (auto x : op == "prefix" ? lattice::pre_fixed_points(f) : lattice::post_fixed_points(f))
      ls.push_back(lat.label(x));
    o.answer = labels_json(ls);
    o.lines = ls;
    o.show_reports = false;
  } else if (op == "induction") {
    o.reports.push_back(subject(lattice::check_induction_principle(f)));
  } else if (op == "coinduction") {
    o.reports.push_back(subject(lattice::check_coinduction_principle(f)));
  } else if (op == "dual") {
    const auto d = lattice::dual_endo(f);
    Json table = Json::array();
    for (lattice::Element x = 0; x < lat.size(); ++x) {
      table.push_back({lat.label(x), lat.label(d(x))});
      o.lines.push_back(lat.label(x) + " -> " + lat.label(d(x)));
    }
    o.answer = table;
    o.reports.push_back(subject(lattice::check_mu_nu_duality(f)));
  }
  return emit(ctx, o);
}

int lat_heyting(Ctx& ctx, const std::string& file, const std::string& name, const std::string& x,
                const std::optional<std::string>& y) {
  const auto doc = load_lattices(file);
  const auto lat_ptr = doc.lattice(name);
  const auto& lat = *lat_ptr;
  const auto ex = lat.at(x);
  const auto imp = y ? lattice::heyting_implication(lat, ex, lat.at(*y)) : lattice::negation(lat, ex);
  Output o;
  o.answer = imp.value ? Json(lat.label(*imp.value)) : Json(nullptr);
  o.lines.push_back(imp.value ? lat.label(*imp.value) : "none");
  PrincipleReport r;
  r.principle = Principle::heyting_adjunction;
  r.subject = name;
  r.checked_count = lat.size();
  if (!imp.adjunction_holds) r.fail({x, y.value_or("bottom"), imp.value ? lat.label(*imp.value) : "none"});
  o.reports.push_back(r);
  emit(ctx, o);
  return kOk;
}

// --- structural ------------------------------------------------------------

struct TypeEnv {
  std::optional<structural::Definitions> defs;
  structural::BaseOrder standard = structural::BaseOrder::standard();
  const structural::BaseOrder& bases() const { return defs ? defs->bases : standard; }
  const structural::Definitions* definitions() const { return defs ? &*defs : nullptr; }
};

TypeEnv load_types(const Ctx& ctx) {
  TypeEnv env;
  if (!ctx.defs_file.empty()) {
    const auto src = text::read_file(ctx.defs_file);
    env.defs = sourced(ctx.defs_file, [&] { return structural::parse_definitions(src); });
  }
  return env;
}

structural::StructType arg_type(const TypeEnv& env, const std::string& text) {
  return sourced("argument '" + text + "'",
                 [&] { return structural::parse_type(text, env.bases(), env.definitions()); });
}

std::string join_trees(const structural::ValueSet& vs) {
  std::string s = "{";
  bool first = true;
  for (const auto& v : vs) {
    s += (first ? "" : ", ") + structural::to_string(v);
    first = false;
  }
  return s + "}";
}

Json trees_json(const structural::ValueSet& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(structural::to_string(v));
  return a;
}

std::size_t structural_depth(const Ctx& ctx) {
  const int d = ctx.depth.value_or(3);
  if (d > static_cast<int>(structural::kMaxDenoteDepth)) {
    throw GuardError("denotation depth " + std::to_string(d) + " exceeds the guard of " +
                     std::to_string(structural::kMaxDenoteDepth));
  }
  return static_cast<std::size_t>(d);
}

int st_command(Ctx& ctx, const std::string& op, const std::vector<std::string>& args) {
  using namespace structural;
  const auto env = load_types(ctx);
  Output o;
  if (op == "sub" || op == "eq") {
    const auto s = arg_type(env, args[0]);
    const auto t = arg_type(env, args[1]);
    auto v = subtype(s, t, env.bases());
    bool answer = v.holds;
    if (op == "eq") answer = v.holds && subtype(t, s, env.bases()).holds;
    o.answer = answer;
    o.lines.push_back(answer ? "true" : "false");
    if (op == "sub" && v.failure_pair) o.lines.push_back("refuted at: " + v.failure_pair->first + " <: " + v.failure_pair->second);
    if (op == "sub") o.verdict = v;
  } else if (op == "denote") {
    const auto t = arg_type(env, args[0]);
    const auto vs = denote(t, structural_depth(ctx), ctx.partial, env.bases());
    o.answer = trees_json(vs);
    for (const auto& v : vs) o.lines.push_back(to_string(v));
  } else if (op == "oracle") {
    const auto s = arg_type(env, args[0]);
    const auto t = arg_type(env, args[1]);
    const bool oracle = oracle_subtype(s, t, ctx.oracle_depth, env.bases());
    const bool decided = subtype(s, t, env.bases()).holds;
    o.answer = oracle;
    o.lines.push_back(oracle ? "true" : "false");
    PrincipleReport r;
    r.principle = Principle::oracle_soundness;
    r.subject = to_string(s) + " <: " + to_string(t);
    r.checked_count = 1;
    if (decided && !oracle) r.fail({to_string(s), to_string(t)});
    o.reports.push_back(r);
  } else if (op == "endo") {
    const auto body = sourced("argument '" + args[0] + "'", [&] {
      return parse_body(args[0], args[1], env.bases(), env.definitions());
    });
    auto ce = constructor_as_endo(body, args[1], structural_depth(ctx), env.bases());
    const auto mu_set = ce.trees(lattice::lfp(ce.endo));
    const auto nu_set = ce.trees(lattice::gfp(ce.endo));
    o.answer = Json{{"universe", trees_json(ValueSet(ce.universe.begin(), ce.universe.end()))},
                    {"lfp", trees_json(mu_set)},
                    {"gfp", trees_json(nu_set)}};
    o.lines.push_back("universe: " + std::to_string(ce.universe.size()) + " trees");
    o.lines.push_back("lfp: " + join_trees(mu_set));
    o.lines.push_back("gfp: " + join_trees(nu_set));
    o.reports.push_back(lattice::check_induction_principle(ce.endo));
    o.reports.push_back(lattice::check_coinduction_principle(ce.endo));
  }
  return emit(ctx, o);
}

// --- nominal ---------------------------------------------------------------

std::shared_ptr<const nominal::ClassTable> load_table(const std::string& file) {
  const auto src = text::read_file(file);
  return std::make_shared<const nominal::ClassTable>(sourced(file, [&] { return nominal::parse_class_table(src); }));
}

nominal::GroundType arg_ground(const nominal::ClassTable& t, const std::string& text) {
  return sourced("argument '" + text + "'", [&] { return nominal::parse_ground(text, t); });
}

Json grounds_json(const std::vector<nominal::GroundType>& ts) {
  Json a = Json::array();
  for (const auto& t : ts) a.push_back(nominal::to_string(t));
  return a;
}

Json optional_ground(const std::optional<nominal::GroundType>& t) {
  return t ? Json(nominal::to_string(*t)) : Json(nullptr);
}

int nom_command(Ctx& ctx, const std::string& op, const std::string& file, const std::vector<std::string>& args) {
  using namespace nominal;
  const auto table = load_table(file);
  const int k = ctx.depth.value_or(1);
  if (k > kMaxUniverseDepth) {
    throw GuardError("universe depth " + std::to_string(k) + " exceeds the guard of " +
                     std::to_string(kMaxUniverseDepth));
  }
  auto universe = [&] { return build_universe(table, k); };
  Output o;
  if (op == "sub") {
    auto v = subtype(arg_ground(*table, args[0]), arg_ground(*table, args[1]), *table);
    o.answer = v.holds;
    o.lines.push_back(v.holds ? "true" : "false");
    if (v.failure_pair) o.lines.push_back("refuted at: " + v.failure_pair->first + " <: " + v.failure_pair->second);
    for (const auto& n : v.notes) o.lines.push_back("note: " + n);
    o.verdict = v;
  } else if (op == "free") {
    const auto t = to_string(free_type(args[0], *table));
    o.answer = t;
    o.lines.push_back(t);
  } else if (op == "classify") {
    const auto c = classify(args[0], arg_ground(*table, args[1]), *table);
    o.answer = Json{{"pre_fixed", c.pre_fixed}, {"post_fixed", c.post_fixed}, {"fixed", c.fixed}};
    o.lines.push_back(std::string("pre_fixed: ") + (c.pre_fixed ? "true" : "false"));
    o.lines.push_back(std::string("post_fixed: ") + (c.post_fixed ? "true" : "false"));
    o.lines.push_back(std::string("fixed: ") + (c.fixed ? "true" : "false"));
  } else if (op == "family") {
    const auto u = universe();
    const auto fam = family_members(args[0], u);
    o.answer = Json{{"family_subtypes", grounds_json(fam.family_subtypes)},
                    {"family_supertypes", grounds_json(fam.family_supertypes)}};
    o.lines.push_back("family subtypes:");
    for (const auto& t : fam.family_subtypes) o.lines.push_back("  " + to_string(t));
    o.lines.push_back("family supertypes:");
    for (const auto& t : fam.family_supertypes) o.lines.push_back("  " + to_string(t));
    o.reports.push_back(greatest_family_subtype_check(args[0], u));
  } else if (op == "least-pre") {
    const auto r = least_pre_fixed_search(args[0], universe());
    Json witnesses = nullptr;
    if (r.no_least_witnesses) {
      witnesses = Json{to_string(r.no_least_witnesses->first), to_string(r.no_least_witnesses->second)};
    }
    o.answer = Json{{"literal", {{"least", optional_ground(r.least)}, {"minimal_set", grounds_json(r.minimal_set)}}},
                    {"family", {{"lower_bound", optional_ground(r.family_lower_bound)}, {"witnesses", witnesses}}}};
    o.lines.push_back("literal least pre-fixed: " + (r.least ? to_string(*r.least) : std::string("none")));
    o.lines.push_back("literal minimal pre-fixed:");
    for (const auto& t : r.minimal_set) o.lines.push_back("  " + to_string(t));
    if (r.family_lower_bound) {
      o.lines.push_back("family lower bound: " + to_string(*r.family_lower_bound));
    } else {
      o.lines.push_back("family lower bound: none");
      if (r.no_least_witnesses) {
        o.lines.push_back("witnesses: " + to_string(r.no_least_witnesses->first) + " | " +
                          to_string(r.no_least_witnesses->second));
      }
    }
  } else if (op == "covariance") {
    o.reports.push_back(covariance_check(args[0], universe()));
  } else if (op == "neg") {
    const auto u = universe();
    const auto n = nominal_negation(arg_ground(*table, args[0]), u);
    o.answer = Json{{"result", optional_ground(n.result)},
                    {"minimal_upper_bounds", grounds_json(n.minimal_upper_bounds)},
                    {"disjoint_set", grounds_json(n.disjoint_set)}};
    if (n.result) {
      o.lines.push_back(to_string(*n.result));
    } else {
      o.lines.push_back("none");
      o.lines.push_back("minimal upper bounds:");
      for (const auto& t : n.minimal_upper_bounds) o.lines.push_back("  " + to_string(t));
    }
  } else if (op == "negcheck") {
    const auto u = universe();
    auto v = declared_negation_check(arg_ground(*table, args[0]), arg_ground(*table, args[1]),
                                     arg_ground(*table, args[2]), u);
    PrincipleReport r;
    r.principle = Principle::declared_negation;
    r.universe_depth = k;
    r.subject = args[0] + " / " + args[1] + " under " + args[2];
    r.checked_count = 1;
    if (!v.holds) r.fail({v.failure_pair->first, v.failure_pair->second});
    o.answer = v.holds;
    o.lines.push_back(v.holds ? "true" : "false");
    for (const auto& n : v.notes) o.lines.push_back("note: " + n);
    o.reports.push_back(r);
    o.verdict = v;
  } else if (op == "universe") {
    const auto u = universe();
    o.answer = grounds_json(u.members());
    for (const auto& t : u.members()) o.lines.push_back(to_string(t));
  } else if (op == "export") {
    const auto u = universe();
    const auto lat = export_order(u);
    Json covers = Json::array();
    std::vector<std::string> cover_lines;
    for (lattice::Element a = 0; a < lat.size(); ++a) {
      for (lattice::Element b = 0; b < lat.size(); ++b) {
        if (a == b || !lat.leq(a, b)) continue;
        bool direct = true;
        for (lattice::Element c = 0; c < lat.size() && direct; ++c) {
          if (c != a && c != b && lat.leq(a, c) && lat.leq(c, b)) direct = false;
        }
        if (!direct) continue;
        covers.push_back({lat.label(a), lat.label(b)});
        cover_lines.push_back("  " + lat.label(a) + " <= " + lat.label(b));
      }
    }
    o.answer = Json{{"elements", lat.labels()}, {"covers", covers}, {"complete_lattice", lat.is_complete_lattice()}};
    o.lines.push_back("elements: " + std::to_string(lat.size()));
    o.lines.push_back("covers:");
    o.lines.insert(o.lines.end(), cover_lines.begin(), cover_lines.end());
    o.lines.push_back(std::string("complete lattice: ") + (lat.is_complete_lattice() ? "true" : "false"));
  }
  return emit(ctx, o);
}

// --- check all -------------------------------------------------------------

int check_command(Ctx& ctx, const std::string& dir) {
  CheckOptions opts;
  opts.depth = ctx.depth.value_or(1);
  if (opts.depth > nominal::kMaxUniverseDepth) {
    throw GuardError("universe depth " + std::to_string(opts.depth) + " exceeds the guard of " +
                     std::to_string(nominal::kMaxUniverseDepth));
  }
  opts.oracle_depth = ctx.oracle_depth;
  opts.seed = ctx.seed;
  Output o;
  o.reports = check_all(dir, opts);
  o.seed = ctx.seed;
  const auto failed = std::count_if(o.reports.begin(), o.reports.end(), [](const auto& r) { return !r.holds; });
  o.answer = Json{{"checks", o.reports.size()}, {"failed", failed}};
  o.lines.push_back("seed: " + std::to_string(ctx.seed));
  const int code = emit(ctx, o);
  if (!ctx.json) ctx.out << o.reports.size() << " checks, " << failed << " failed\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fixed points, (co)induction and subtyping laboratory", "munu"};
  app.require_subcommand(1);
  app.fallthrough();

  Ctx ctx{out};
  std::optional<int> depth;
  app.add_flag("--json", ctx.json, "Emit a JSON report");
  app.add_option("--depth", depth, "Universe or denotation depth bound")->check(CLI::Range(0, 6));
  app.add_option("--oracle-depth", ctx.oracle_depth, "Depth of the denotational oracle")->check(CLI::Range(0, 6));
  app.add_option("--seed", ctx.seed, "Seed for sampled property sweeps");
  app.add_flag("--partial", ctx.partial, "Denote with cut-off prefixes (st denote)");
  app.add_option("--defs", ctx.defs_file, "Type definitions file for st commands");

  std::function<int()> action;
  std::string file, name, x;
  std::optional<std::string> y;
  std::vector<std::string> pos;

  auto* lat = app.add_subcommand("lat", "Finite lattices and endofunctions");
  lat->require_subcommand(1);
  const std::vector<std::pair<const char*, const char*>> lat_ops = {
      {"lfp", "Least fixed point"},
      {"gfp", "Greatest fixed point"},
      {"prefix", "Pre-fixed points, f(x) <= x"},
      {"postfix", "Post-fixed points, x <= f(x)"},
      {"induction", "Check the induction rule over every element"},
      {"coinduction", "Check the coinduction rule over every element"},
      {"dual", "Dual function and the gfp/lfp duality (Boolean lattices)"}};
  for (const auto& [op, help] : lat_ops) {
    auto* c = lat->add_subcommand(op, help);
    c->add_option("file", file, "Lattice file")->required();
    c->add_option("function", name, "Function name")->required();
    c->callback([&, op = std::string(op)] { action = [&, op] { return lat_command(ctx, op, file, name); }; });
  }
  {
    auto* c = lat->add_subcommand("neg", "Heyting negation of an element");
    c->add_option("file", file)->required();
    c->add_option("lattice", name)->required();
    c->add_option("x", x)->required();
    c->callback([&] { action = [&] { return lat_heyting(ctx, file, name, x, std::nullopt); }; });
    auto* i = lat->add_subcommand("imp", "Heyting implication x => y");
    i->add_option("file", file)->required();
    i->add_option("lattice", name)->required();
    i->add_option("x", x)->required();
    i->add_option("y", y)->required();
    i->callback([&] { action = [&] { return lat_heyting(ctx, file, name, x, y); }; });
  }

  auto* st = app.add_subcommand("st", "Structural types");
  st->require_subcommand(1);
  const std::vector<std::tuple<std::string, int, std::string>> st_ops = {
      {"sub", 2, "Decide S <: T"},
      {"eq", 2, "Decide S <: T and T <: S"},
      {"denote", 1, "Finite trees of a type up to --depth"},
      {"oracle", 2, "Denotational inclusion up to --oracle-depth"},
      {"endo", 2, "Constructor body over hole as a lattice endofunction"}};
  for (const auto& [op, arity, help] : st_ops) {
    auto* c = st->add_subcommand(op, help);
    c->add_option("args", pos, "Type literals")->required()->expected(arity);
    c->callback([&, op = op] { action = [&, op] { return st_command(ctx, op, pos); }; });
  }

  auto* nom = app.add_subcommand("nom", "Nominal class tables");
  nom->require_subcommand(1);
  const std::vector<std::tuple<std::string, int, std::string>> nom_ops = {
      {"sub", 2, "Decide A <: B coinductively"},
      {"free", 1, "Free type F<?> of a generic class"},
      {"classify", 2, "Is a type pre-, post- or fixed for F"},
      {"family", 1, "Greatest F-subtype check over the universe"},
      {"least-pre", 1, "Search for a least F-pre-fixed type"},
      {"covariance", 1, "Does F preserve subtyping on the universe"},
      {"neg", 1, "Least type above every type disjoint from X"},
      {"negcheck", 3, "Check a declared negation N of X under a parent"},
      {"universe", 0, "List the ground types up to --depth"},
      {"export", 0, "Print the universe as a lattice file"}};
  for (const auto& [op, n, help] : nom_ops) {
    auto* c = nom->add_subcommand(op, help);
    c->add_option("file", file, "Class table file")->required();
    if (n > 0) c->add_option("args", pos, "Class names or ground types")->required()->expected(n);
    c->callback([&, op = op] { action = [&, op] { return nom_command(ctx, op, file, pos); }; });
  }

  auto* check = app.add_subcommand("check", "Run oracle properties");
  check->require_subcommand(1);
  auto* all = check->add_subcommand("all", "Every oracle property over a directory of inputs");
  all->add_option("dir", file, "Directory")->required();
  all->callback([&] { action = [&] { return check_command(ctx, file); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "munu: error: " << e.what() << "\n";
    return kUsageError;
  }
  ctx.depth = depth;

  std::vector<std::string> path;
  for (const auto* c = &app; !c->get_subcommands().empty();) {
    c = c->get_subcommands().front();
    path.push_back(c->get_name());
  }
  for (std::size_t i = 0; i < path.size(); ++i) ctx.command += (i ? " " : "") + path[i];

  try {
    return action();
  } catch (const SourceError& e) {
    err << "munu: error: " << e.source() << ":" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "munu: error: " << e.line() << ":" << e.column() << ": " << e.what() << "\n";
  } catch (const PreconditionError& e) {
    err << "munu: error: " << e.what() << "\n";
  } catch (const GuardError& e) {
    err << "munu: error: " << e.what() << "\n";
  } catch (const std::runtime_error& e) {
    err << "munu: error: " << e.what() << "\n";
  }
  return kUsageError;
}

}  // namespace munu::cli
