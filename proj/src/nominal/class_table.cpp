#include <cctype>
#include <functional>
#include <map>
#include <set>

#include "munu/nominal.hpp"
#include "munu/text.hpp"

namespace munu::nominal {

std::string to_string(const GroundType& t) {
  switch (t.kind) {
    case GKind::null: return "Null";
    case GKind::object: return "Object";
    case GKind::plain:
    case GKind::param: return t.name;
    case GKind::app: {
      const auto& lo = t.lower();
      const auto& hi = t.upper();
      std::string arg;
      if (lo == hi) arg = to_string(lo);
      else if (lo.kind == GKind::null && hi.kind == GKind::object) arg = "?";
      else if (lo.kind == GKind::null) arg = "? extends " + to_string(hi);
      else if (hi.kind == GKind::object) arg = "? super " + to_string(lo);
      else arg = to_string(t.interval());
      return t.name + "<" + arg + ">";
    }
  }
  return "?";
}

std::string to_string(const Interval& i) { return "[" + to_string(i.lower) + "," + to_string(i.upper) + "]"; }

std::size_t nesting(const GroundType& t) {
  std::size_t d = 0;
  for (const auto& b : t.bounds) d = std::max(d, nesting(b));
  return t.kind == GKind::app ? d + 1 : 0;
}

bool is_ground(const GroundType& t) {
  if (t.kind == GKind::param) return false;
  return std::all_of(t.bounds.begin(), t.bounds.end(), [](const GroundType& b) { return is_ground(b); });
}

const ClassDecl* ClassTable::find(std::string_view name) const {
  for (const auto& d : decls_) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

std::size_t ClassTable::arity(std::string_view name) const {
  const auto* d = find(name);
  if (!d) throw PreconditionError("unknown class '" + std::string(name) + "'");
  return d->param ? 1 : 0;
}

std::vector<std::string> ClassTable::generic_classes() const {
  std::vector<std::string> out;
  for (const auto& d : decls_) {
    if (d.param) out.push_back(d.name);
  }
  return out;
}

namespace {

// Parameter occurrences in a lower endpoint become L, in an upper endpoint U.
GroundType substitute(const GroundType& t, const std::string& param, const Interval& arg) {
  if (t.kind != GKind::app) return t;
  auto endpoint = [&](const GroundType& e, const GroundType& replacement) {
    if (e.kind == GKind::param && e.name == param) return replacement;
    return substitute(e, param, arg);
  };
  return GroundType::app(t.name, endpoint(t.lower(), arg.lower), endpoint(t.upper(), arg.upper));
}

}  // namespace

std::optional<GroundType> ClassTable::superclass_of(const GroundType& t) const {
  if (t.kind == GKind::null || t.kind == GKind::object) return std::nullopt;
  if (t.kind == GKind::param) throw PreconditionError("type parameter '" + t.name + "' is not a ground type");
  const auto* d = find(t.name);
  if (!d) throw PreconditionError("unknown class '" + t.name + "'");
  if (!d->superclass) return GroundType::object_t();
  if (t.kind == GKind::plain) return *d->superclass;
  return substitute(*d->superclass, d->param->name, t.interval());
}

void ClassTable::check_well_formed(const GroundType& t) const {
  switch (t.kind) {
    case GKind::null:
    case GKind::object: return;
    case GKind::param: throw PreconditionError("type parameter '" + t.name + "' is not a ground type");
    case GKind::plain:
      if (arity(t.name) != 0) throw PreconditionError("generic class '" + t.name + "' needs an argument");
      return;
    case GKind::app:
      if (arity(t.name) != 1) throw PreconditionError("class '" + t.name + "' takes no arguments");
      check_well_formed(t.lower());
      check_well_formed(t.upper());
      return;
  }
}

namespace {

enum class Tok { ident, langle, rangle, lbracket, rbracket, comma, question, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;
};

std::vector<Token> lex(std::string_view src, std::size_t line, std::size_t base_column) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    const auto col = base_column + i;
    if (text::is_space(c)) { ++i; continue; }
    Tok k = Tok::end;
    switch (c) {
      case '<': k = Tok::langle; break;
      case '>': k = Tok::rangle; break;
      case '[': k = Tok::lbracket; break;
      case ']': k = Tok::rbracket; break;
      case ',': k = Tok::comma; break;
      case '?': k = Tok::question; break;
      default: break;
    }
    if (k != Tok::end) {
      out.push_back({k, std::string(1, c), col});
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::ident, std::string(src.substr(i, j - i)), col});
      i = j;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }
  out.push_back({Tok::end, "", base_column + src.size()});
  return out;
}

// Ground-type grammar shared by declarations and command-line literals.
class GroundParser {
 public:
  GroundParser(std::vector<Token> tokens, std::size_t line, const std::map<std::string, std::size_t>& arities,
               const std::string* param)
      : toks_(std::move(tokens)), line_(line), arities_(arities), param_(param) {}

  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(std::string_view w) const { return at(Tok::ident) && peek().text == w; }
  const Token& take() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, peek().column); }

  GroundType ground() {
    if (!at(Tok::ident)) fail(at(Tok::end) ? "unexpected end of type" : "expected a type, found '" + peek().text + "'");
    const auto tok = take();
    if (tok.text == "Null" || tok.text == "Object") {
      if (at(Tok::langle) || at(Tok::lbracket)) fail("'" + tok.text + "' takes no arguments");
      return tok.text == "Null" ? GroundType::null_t() : GroundType::object_t();
    }
    if (param_ && tok.text == *param_) {
      if (at(Tok::langle) || at(Tok::lbracket)) fail("type parameter '" + tok.text + "' takes no arguments");
      return GroundType::param(tok.text);
    }
    auto it = arities_.find(tok.text);
    if (it == arities_.end()) throw ParseError("undeclared class '" + tok.text + "'", line_, tok.column);
    const bool has_args = at(Tok::langle) || at(Tok::lbracket);
    if (it->second == 0) {
      if (has_args) fail("class '" + tok.text + "' takes no arguments");
      return GroundType::plain(tok.text);
    }
    if (!has_args) throw ParseError("generic class '" + tok.text + "' needs an argument", line_, tok.column);
    const Tok close = take().kind == Tok::langle ? Tok::rangle : Tok::rbracket;
    auto i = argument();
    if (at(Tok::comma)) fail("class '" + tok.text + "' takes exactly one argument");
    if (!at(close)) fail(close == Tok::rangle ? "expected '>'" : "expected ']'");
    ++pos_;
    return GroundType::app(tok.text, i);
  }

  Interval argument() {
    if (at(Tok::question)) {
      ++pos_;
      if (at_word("extends")) {
        ++pos_;
        return {GroundType::null_t(), ground()};
      }
      if (at_word("super")) {
        ++pos_;
        return {ground(), GroundType::object_t()};
      }
      return {GroundType::null_t(), GroundType::object_t()};
    }
    if (at(Tok::lbracket)) {
      ++pos_;
      auto lo = ground();
      if (!at(Tok::comma)) fail("expected ',' in interval");
      ++pos_;
      auto hi = ground();
      if (!at(Tok::rbracket)) fail("expected ']' closing the interval");
      ++pos_;
      return {lo, hi};
    }
    auto t = ground();
    return {t, t};
  }

  void expect_end() {
    if (!at(Tok::end)) fail("unexpected '" + peek().text + "'");
  }

  std::size_t position() const { return pos_; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t line_;
  const std::map<std::string, std::size_t>& arities_;
  const std::string* param_;
};

bool reserved(std::string_view name) {
  return name == "Null" || name == "Object" || name == "class" || name == "generic" || name == "extends" ||
         name == "super";
}

bool valid_name(std::string_view name) {
  if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
  return std::all_of(name.begin(), name.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

// Ground intervals (no parameter endpoints) must be non-empty.
void check_intervals(const GroundType& t, const ClassTable& table, std::size_t line) {
  if (t.kind != GKind::app) return;
  check_intervals(t.lower(), table, line);
  check_intervals(t.upper(), table, line);
  if (is_ground(t.lower()) && is_ground(t.upper()) && !is_subtype(t.lower(), t.upper(), table)) {
    throw ParseError("empty interval " + to_string(t.interval()) + ": lower bound is not a subtype of upper bound",
                     line, 1);
  }
}

struct RawDecl {
  std::size_t line;
  std::string name;
  std::string param;
  std::string_view bound;
  std::size_t bound_column = 0;
  std::string_view super;
  std::size_t super_column = 0;
};

}  // namespace

ClassTable parse_class_table(std::string_view source) {
  // Pass 1: headers, so later declarations can be referenced.
  std::vector<RawDecl> raws;
  std::map<std::string, std::size_t> arities;
  std::size_t line_no = 0;
  for (auto raw : text::lines(source)) {
    ++line_no;
    auto line = text::trim(text::strip_comment(raw));
    if (line.empty()) continue;
    auto col_of = [&](std::string_view part) { return static_cast<std::size_t>(part.data() - raw.data()) + 1; };
    RawDecl d{line_no, {}, {}, {}, 0, {}, 0};
    auto rest = line;
    const bool generic = text::starts_with_word(rest, "generic");
    if (generic) rest = text::trim(rest.substr(7));
    if (!text::starts_with_word(rest, "class")) {
      throw ParseError("expected 'class' or 'generic class'", line_no, col_of(rest));
    }
    rest = text::trim(rest.substr(5));
    std::size_t n = 0;
    while (n < rest.size() && (std::isalnum(static_cast<unsigned char>(rest[n])) || rest[n] == '_')) ++n;
    d.name = std::string(rest.substr(0, n));
    if (!valid_name(d.name) || reserved(d.name)) {
      throw ParseError("invalid class name '" + d.name + "'", line_no, col_of(rest));
    }
    if (arities.count(d.name)) throw ParseError("duplicate class '" + d.name + "'", line_no, col_of(rest));
    rest = text::trim(rest.substr(n));
    if (generic) {
      if (rest.empty() || rest[0] != '[') {
        throw ParseError("generic class '" + d.name + "' needs a parameter '[T]'", line_no, col_of(rest));
      }
      // The bound may itself contain brackets: match the outer one.
      std::size_t depth = 0, close = std::string_view::npos;
      for (std::size_t i = 0; i < rest.size(); ++i) {
        if (rest[i] == '[') ++depth;
        if (rest[i] == ']' && --depth == 0) {
          close = i;
          break;
        }
      }
      if (close == std::string_view::npos) throw ParseError("unclosed type parameter list", line_no, col_of(rest));
      auto inside = text::trim(rest.substr(1, close - 1));
      if (inside.find(',') != std::string_view::npos && inside.find("extends") == std::string_view::npos) {
        throw ParseError("only one type parameter is supported", line_no, col_of(inside));
      }
      auto words = text::split_ws(inside);
      if (words.empty() || !valid_name(words[0]) || reserved(words[0])) {
        throw ParseError("expected a type parameter name", line_no, col_of(inside));
      }
      d.param = std::string(words[0]);
      auto after = text::trim(inside.substr(words[0].size()));
      if (!after.empty()) {
        if (!text::starts_with_word(after, "extends")) {
          throw ParseError("expected 'extends' after the type parameter", line_no, col_of(after));
        }
        d.bound = text::trim(after.substr(7));
        d.bound_column = col_of(d.bound);
        if (d.bound.empty()) throw ParseError("missing parameter bound", line_no, col_of(after));
      }
      rest = text::trim(rest.substr(close + 1));
    } else if (!rest.empty() && (rest[0] == '[' || rest[0] == '<')) {
      throw ParseError("class '" + d.name + "' has parameters; declare it with 'generic class'", line_no,
                       col_of(rest));
    }
    if (!rest.empty()) {
      if (!text::starts_with_word(rest, "extends")) {
        throw ParseError("expected 'extends' or end of line", line_no, col_of(rest));
      }
      d.super = text::trim(rest.substr(7));
      d.super_column = col_of(d.super);
      if (d.super.empty()) throw ParseError("missing superclass", line_no, col_of(rest));
    }
    arities[d.name] = generic ? 1 : 0;
    raws.push_back(d);
  }

  // Pass 2: expressions.
  ClassTable table;
  for (const auto& r : raws) {
    ClassDecl decl;
    decl.name = r.name;
    decl.line = r.line;
    const std::string* param = r.param.empty() ? nullptr : &r.param;
    if (param) decl.param = TypeParam{r.param, std::nullopt};
    if (!r.bound.empty()) {
      GroundParser p(lex(r.bound, r.line, r.bound_column), r.line, arities, param);
      auto b = p.ground();
      p.expect_end();
      decl.param->bound = b;
    }
    if (!r.super.empty()) {
      GroundParser p(lex(r.super, r.line, r.super_column), r.line, arities, param);
      auto s = p.ground();
      p.expect_end();
      if (s.kind == GKind::null) throw ParseError("a class cannot extend Null", r.line, r.super_column);
      if (s.kind == GKind::param) {
        throw ParseError("a class cannot extend its type parameter", r.line, r.super_column);
      }
      if (s.kind != GKind::object) decl.superclass = s;
    }
    table.decls_.push_back(std::move(decl));
  }

  // Superclass heads must form a forest.
  std::map<std::string, int> state;
  std::function<void(const ClassDecl&)> visit = [&](const ClassDecl& d) {
    auto& st = state[d.name];
    if (st == 2) return;
    if (st == 1) throw ParseError("superclass cycle through '" + d.name + "'", d.line, 1);
    st = 1;
    if (d.superclass) visit(*table.find(d.superclass->name));
    st = 2;
  };
  for (const auto& d : table.decls_) visit(d);

  for (const auto& d : table.decls_) {
    if (d.superclass) table.max_super_nesting_ = std::max(table.max_super_nesting_, nesting(*d.superclass));
  }
  for (const auto& d : table.decls_) {
    if (d.superclass) check_intervals(*d.superclass, table, d.line);
    if (d.param && d.param->bound) check_intervals(*d.param->bound, table, d.line);
  }
  return table;
}

GroundType parse_ground(std::string_view source, const ClassTable& table) {
  std::map<std::string, std::size_t> arities;
  for (const auto& d : table.declarations()) arities[d.name] = d.param ? 1 : 0;
  GroundParser p(lex(source, 1, 1), 1, arities, nullptr);
  auto t = p.ground();
  p.expect_end();
  check_intervals(t, table, 1);
  return t;
}

}  // namespace munu::nominal
