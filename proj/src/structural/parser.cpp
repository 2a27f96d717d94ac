#include <cctype>

#include "munu/structural.hpp"
#include "munu/text.hpp"

namespace munu::structural {

namespace {

enum class Tok { ident, lparen, rparen, plus, star, arrow, dot, mu, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    const auto col = i + 1;
    if (text::is_space(c)) { ++i; continue; }
    if (c == '(') { out.push_back({Tok::lparen, "(", col}); ++i; continue; }
    if (c == ')') { out.push_back({Tok::rparen, ")", col}); ++i; continue; }
    if (c == '+') { out.push_back({Tok::plus, "+", col}); ++i; continue; }
    if (c == '*') { out.push_back({Tok::star, "*", col}); ++i; continue; }
    if (c == '.') { out.push_back({Tok::dot, ".", col}); ++i; continue; }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::arrow, "->", col});
      i += 2;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      // lib:Name
      if (src.substr(i, j - i) == "lib" && j + 1 < src.size() && src[j] == ':' && ident_start(src[j + 1])) {
        ++j;
        while (j < src.size() && ident_char(src[j])) ++j;
      }
      std::string word(src.substr(i, j - i));
      out.push_back({word == "mu" ? Tok::mu : Tok::ident, word, col});
      i = j;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", 1, col);
  }
  out.push_back({Tok::end, "", src.size() + 1});
  return out;
}

class TypeParser {
 public:
  TypeParser(std::string_view src, const BaseOrder& bases, const Definitions* defs, const std::string* hole)
      : tokens_(lex(src)), bases_(bases), defs_(defs), hole_(hole) {}

  StructType parse() {
    auto t = type();
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
    return t;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 1, peek().column); }
  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    ++pos_;
  }

  StructType type() {
    auto lhs = sum_expr();
    if (peek().kind == Tok::arrow) {
      ++pos_;
      return arrow(lhs, type());
    }
    return lhs;
  }

  StructType sum_expr() {
    auto lhs = prod_expr();
    while (peek().kind == Tok::plus) {
      ++pos_;
      lhs = sum(lhs, prod_expr());
    }
    return lhs;
  }

  StructType prod_expr() {
    auto lhs = atom();
    while (peek().kind == Tok::star) {
      ++pos_;
      lhs = prod(lhs, atom());
    }
    return lhs;
  }

  StructType atom() {
    const auto& tok = peek();
    switch (tok.kind) {
      case Tok::lparen: {
        ++pos_;
        auto inner = type();
        expect(Tok::rparen, "')'");
        return inner;
      }
      case Tok::mu: {
        ++pos_;
        if (peek().kind != Tok::ident) fail("expected a variable after 'mu'");
        auto name = take().text;
        if (name == "Unit" || name == "Top" || name.starts_with("lib:")) fail("'" + name + "' cannot be bound");
        expect(Tok::dot, "'.' after the bound variable");
        bound_.push_back(name);
        auto body = type();
        bound_.pop_back();
        return mu(name, body);
      }
      case Tok::ident: {
        ++pos_;
        return resolve(tok);
      }
      case Tok::end: fail("unexpected end of type");
      default: fail("unexpected '" + tok.text + "'");
    }
  }

  StructType resolve(const Token& tok) {
    const auto& name = tok.text;
    if (name == "Unit") return unit();
    if (name == "Top") return top();
    if (name.starts_with("lib:")) {
      auto lib_name = name.substr(4);
      for (const auto& [n, t] : standard_library()) {
        if (n == lib_name) return t;
      }
      throw ParseError("no library type '" + lib_name + "'", 1, tok.column);
    }
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it) {
      if (*it == name) return var(name);
    }
    if (bases_.has(name)) return base(name);
    if (defs_) {
      if (auto t = defs_->find(name)) return *t;
    }
    for (const auto& [n, t] : standard_library()) {
      if (n == name) return t;
    }
    if (hole_ && *hole_ == name) return var(name);
    throw ParseError("unbound variable or unknown type '" + name + "'", 1, tok.column);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const BaseOrder& bases_;
  const Definitions* defs_;
  const std::string* hole_;
  std::vector<std::string> bound_;
};

}  // namespace

StructType parse_type(std::string_view text, const BaseOrder& bases, const Definitions* defs) {
  auto t = TypeParser(text, bases, defs, nullptr).parse();
  if (!contractive(t)) throw ParseError("non-contractive recursive type: a bound variable occurs unguarded", 1, 1);
  return canonicalize(t);
}

StructType parse_body(std::string_view text, const std::string& hole, const BaseOrder& bases, const Definitions* defs) {
  auto t = TypeParser(text, bases, defs, &hole).parse();
  // The hole itself may be unguarded; binders inside the body may not.
  if (!contractive(t)) throw ParseError("non-contractive recursive type: a bound variable occurs unguarded", 1, 1);
  return canonicalize(t);
}

Definitions parse_definitions(std::string_view source) {
  Definitions defs;
  std::size_t line_no = 0;
  for (auto raw : text::lines(source)) {
    ++line_no;
    auto line = text::trim(text::strip_comment(raw));
    if (line.empty()) continue;
    const auto column = static_cast<std::size_t>(line.data() - raw.data()) + 1;
    try {
      if (text::starts_with_word(line, "base")) {
        auto rest = text::trim(line.substr(4));
        auto le = rest.find("<=");
        if (le == std::string_view::npos) {
          auto words = text::split_ws(rest);
          if (words.size() != 1) throw ParseError("expected 'base Name' or 'base A <= B'", line_no, column);
          defs.bases.declare(std::string(words[0]));
        } else {
          auto lo = text::trim(rest.substr(0, le));
          auto hi = text::trim(rest.substr(le + 2));
          if (lo.empty() || hi.empty()) throw ParseError("expected 'base A <= B'", line_no, column);
          defs.bases.declare_leq(std::string(lo), std::string(hi));
        }
      } else if (text::starts_with_word(line, "tags")) {
        auto rest = line.substr(4);
        auto eq = rest.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected 'tags Name = t1 t2 ...'", line_no, column);
        auto name = text::trim(rest.substr(0, eq));
        std::vector<std::string> tags;
        for (auto w : text::split_ws(rest.substr(eq + 1))) tags.emplace_back(w);
        defs.bases.set_tags(std::string(name), std::move(tags));
      } else if (text::starts_with_word(line, "type")) {
        auto rest = line.substr(4);
        auto eq = rest.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected 'type Name = <type>'", line_no, column);
        auto name = std::string(text::trim(rest.substr(0, eq)));
        if (name.empty() || !ident_start(name[0])) throw ParseError("expected a type name", line_no, column);
        if (defs.find(name)) throw ParseError("duplicate type '" + name + "'", line_no, column);
        auto expr_offset = static_cast<std::size_t>(rest.data() + eq + 1 - raw.data());
        try {
          defs.types.emplace_back(name, parse_type(rest.substr(eq + 1), defs.bases, &defs));
        } catch (const ParseError& e) {
          throw ParseError(e.what(), line_no, e.column() + expr_offset);
        }
      } else {
        throw ParseError("expected 'base', 'tags' or 'type'", line_no, column);
      }
    } catch (const PreconditionError& e) {
      throw ParseError(e.what(), line_no, column);
    }
  }
  return defs;
}

}  // namespace munu::structural
