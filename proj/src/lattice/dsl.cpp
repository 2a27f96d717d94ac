#include <map>
#include <optional>

#include "munu/lattice_dsl.hpp"
#include "munu/text.hpp"

namespace munu::lattice {

namespace {

struct PendingLattice {
  std::string name;
  std::size_t line = 0;
  std::optional<std::vector<std::string>> elements;
  std::vector<std::pair<std::string, std::string>> order;
  std::optional<std::vector<std::string>> powerset;
};

struct PendingFunction {
  std::string name;
  std::string lattice;
  std::size_t line = 0;
  std::vector<std::pair<std::string, std::string>> mappings;
  std::vector<std::size_t> mapping_lines;
};

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (text::is_space(c) || c == ',' || c == '#') return false;
  }
  return true;
}

class Parser {
 public:
  LatticeDocument run(std::string_view source) {
    std::size_t line_no = 0;
    for (auto raw : text::lines(source)) {
      ++line_no;
      auto line = text::trim(text::strip_comment(raw));
      if (line.empty()) continue;
      const auto column = static_cast<std::size_t>(line.data() - raw.data()) + 1;
      handle(line, line_no, column);
    }
    flush();
    return std::move(doc_);
  }

 private:
  void handle(std::string_view line, std::size_t line_no, std::size_t column) {
    if (text::starts_with_word(line, "lattice")) {
      flush();
      auto name = text::trim(line.substr(7));
      if (!valid_name(name)) throw ParseError("expected a lattice name", line_no, column);
      lattice_ = PendingLattice{.name = std::string(name), .line = line_no};
      return;
    }
    if (text::starts_with_word(line, "fun")) {
      flush();
      auto words = text::split_ws(line);
      if (words.size() != 4 || words[2] != "on") {
        throw ParseError("expected 'fun <name> on <lattice>'", line_no, column);
      }
      function_ = PendingFunction{.name = std::string(words[1]), .lattice = std::string(words[3]), .line = line_no};
      return;
    }
    if (lattice_) {
      if (line.starts_with("elements:")) {
        if (lattice_->powerset) throw ParseError("lattice mixes 'powerset:' and 'elements:'", line_no, column);
        if (!lattice_->elements) lattice_->elements.emplace();
        for (auto part : text::split(line.substr(9), ',')) {
          auto name = text::trim(part);
          if (name.empty()) continue;
          if (!valid_name(name)) throw ParseError("invalid element label '" + std::string(name) + "'", line_no, column);
          lattice_->elements->emplace_back(name);
        }
        return;
      }
      if (line.starts_with("order:")) {
        for (auto part : text::split(line.substr(6), ',')) {
          auto pair = text::trim(part);
          if (pair.empty()) continue;
          auto pos = pair.find("<=");
          if (pos == std::string_view::npos) {
            throw ParseError("expected 'a<=b' in order list, got '" + std::string(pair) + "'", line_no, column);
          }
          lattice_->order.emplace_back(text::trim(pair.substr(0, pos)), text::trim(pair.substr(pos + 2)));
        }
        return;
      }
      if (line.starts_with("powerset:")) {
        if (lattice_->elements) throw ParseError("lattice mixes 'powerset:' and 'elements:'", line_no, column);
        std::vector<std::string> base;
        for (auto w : text::split_ws(line.substr(9))) base.emplace_back(w);
        lattice_->powerset = std::move(base);
        return;
      }
    }
    if (function_) {
      auto pos = line.find("->");
      if (pos == std::string_view::npos) throw ParseError("expected 'x -> y'", line_no, column);
      function_->mappings.emplace_back(text::trim(line.substr(0, pos)), text::trim(line.substr(pos + 2)));
      function_->mapping_lines.push_back(line_no);
      return;
    }
    throw ParseError("unexpected line '" + std::string(line) + "'", line_no, column);
  }

  void flush() {
    if (lattice_) finish_lattice(*lattice_);
    if (function_) finish_function(*function_);
    lattice_.reset();
    function_.reset();
  }

  void finish_lattice(const PendingLattice& p) {
    for (const auto& [name, _] : doc_.lattices) {
      if (name == p.name) throw ParseError("duplicate lattice '" + p.name + "'", p.line, 1);
    }
    try {
      std::shared_ptr<const FiniteLattice> lat;
      if (p.powerset) {
        if (!p.order.empty()) throw ParseError("powerset lattices take no 'order:' lines", p.line, 1);
        lat = std::make_shared<const FiniteLattice>(FiniteLattice::build_powerset(*p.powerset));
      } else {
        if (!p.elements) throw ParseError("lattice '" + p.name + "' has no 'elements:' line", p.line, 1);
        lat = std::make_shared<const FiniteLattice>(FiniteLattice::build_poset(*p.elements, p.order));
      }
      doc_.lattices.emplace_back(p.name, std::move(lat));
    } catch (const PreconditionError& e) {
      throw ParseError("lattice '" + p.name + "': " + e.what(), p.line, 1);
    } catch (const GuardError& e) {
      throw ParseError("lattice '" + p.name + "': " + e.what(), p.line, 1);
    }
  }

  void finish_function(const PendingFunction& p) {
    for (const auto& [name, _] : doc_.functions) {
      if (name == p.name) throw ParseError("duplicate function '" + p.name + "'", p.line, 1);
    }
    std::shared_ptr<const FiniteLattice> lat;
    for (const auto& [name, l] : doc_.lattices) {
      if (name == p.lattice) lat = l;
    }
    if (!lat) throw ParseError("function '" + p.name + "' refers to unknown lattice '" + p.lattice + "'", p.line, 1);

    std::vector<std::optional<Element>> table(lat->size());
    for (std::size_t i = 0; i < p.mappings.size(); ++i) {
      const auto& [from, to] = p.mappings[i];
      auto x = lat->find(from);
      auto y = lat->find(to);
      if (!x) throw ParseError("unknown element '" + from + "'", p.mapping_lines[i], 1);
      if (!y) throw ParseError("unknown element '" + to + "'", p.mapping_lines[i], 1);
      if (table[*x]) throw ParseError("element '" + from + "' is mapped twice", p.mapping_lines[i], 1);
      table[*x] = *y;
    }
    std::vector<Element> total;
    total.reserve(table.size());
    for (Element e = 0; e < table.size(); ++e) {
      if (!table[e]) {
        throw ParseError("function '" + p.name + "' is not total: no image for '" + lat->label(e) + "'", p.line, 1);
      }
      total.push_back(*table[e]);
    }
    doc_.functions.emplace_back(p.name, MonotoneEndo(lat, std::move(total)));
  }

  LatticeDocument doc_;
  std::optional<PendingLattice> lattice_;
  std::optional<PendingFunction> function_;
};

}  // namespace

std::shared_ptr<const FiniteLattice> LatticeDocument::lattice(std::string_view name) const {
  for (const auto& [n, l] : lattices) {
    if (n == name) return l;
  }
  throw PreconditionError("no lattice named '" + std::string(name) + "'");
}

MonotoneEndo LatticeDocument::function(std::string_view name) const {
  for (const auto& [n, f] : functions) {
    if (n == name) return f;
  }
  throw PreconditionError("no function named '" + std::string(name) + "'");
}

LatticeDocument parse_lattice_document(std::string_view text) { return Parser{}.run(text); }

}  // namespace munu::lattice
