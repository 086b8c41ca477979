#pragma once

#include "probmetric/logic.hpp"
#include "probmetric/pts.hpp"

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace probmetric {

namespace detail {

inline bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\'';
}

/// Character cursor with 1-based line/column tracking.
class Cursor {
 public:
  explicit Cursor(std::string_view text, std::size_t line = 1) : text_(text), line_(line) {}

  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const { return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0'; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek())) != 0) advance();
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    for (std::size_t i = 0; i < token.size(); ++i) advance();
    return true;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  bool starts_with(std::string_view token) {
    skip_space();
    return text_.substr(pos_, token.size()) == token;
  }

  std::string name(const char* what) {
    skip_space();
    std::string out;
    while (!at_end() && is_name_char(peek())) {
      out.push_back(peek());
      advance();
    }
    if (out.empty()) fail(std::string("expected ") + what);
    return out;
  }

  Rational rational() {
    skip_space();
    const std::size_t line = line_, column = column_;
    std::string digits;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) != 0 || peek() == '/')) {
      digits.push_back(peek());
      advance();
    }
    if (digits.empty()) fail("expected a rational number");
    try {
      return parse_rational(digits);
    } catch (const std::exception&) {
      throw ParseError(line, column, "malformed rational '" + digits + "'");
    }
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(line_, column_, message); }

  std::size_t line() const { return line_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t column_ = 1;
};

}  // namespace detail

/**
 * Reads a transition system. Line-oriented; `#` starts a comment.
 *
 *     alphabet a b c
 *     process nil
 *     s -a-> { s1: 3/4, s2: 1/4 }
 *
 * Processes are declared by their first appearance. Actions must be declared
 * by an `alphabet` line before use.
 */
inline Pts parse_pts(std::string_view text) {
  PtsBuilder builder;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    ++line_no;
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    detail::Cursor in(line, line_no);
    in.skip_space();
    if (in.at_end()) continue;

    const std::string head = in.name("a process name or keyword");
    in.skip_space();
    if (head == "alphabet" || head == "process") {
      if (in.at_end()) in.fail("'" + head + "' needs at least one name");
      while (!in.at_end()) {
        const std::string n = in.name("a name");
        if (head == "alphabet") {
          builder.add_action(n);
        } else {
          builder.add_process(n);
        }
        in.skip_space();
      }
      continue;
    }

    const ProcessId source = builder.add_process(head);
    in.expect("-");
    const std::string action = in.name("an action name");
    if (!builder.find_action(action)) {
      throw SemanticError("line " + std::to_string(line_no) + ": action '" + action + "' is not in the alphabet");
    }
    in.expect("->");
    in.expect("{");
    std::vector<Distribution::Entry> entries;
    do {
      const ProcessId target = builder.add_process(in.name("a target process"));
      in.expect(":");
      entries.push_back({target, in.rational()});
    } while (in.accept(","));
    in.expect("}");
    in.skip_space();
    if (!in.at_end()) in.fail("unexpected trailing text");

    try {
      builder.add_transition(source, *builder.find_action(action), Distribution::from_entries(std::move(entries)));
    } catch (const SemanticError& e) {
      throw SemanticError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return std::move(builder).build();
}

/// Inverse of parse_pts: declares every process in index order so that a
/// round trip preserves process ids.
inline std::string format_pts(const Pts& pts) {
  std::ostringstream out;
  if (pts.num_actions() > 0) {
    out << "alphabet";
    for (auto a : pts.actions()) out << ' ' << pts.name(a);
    out << '\n';
  }
  if (pts.num_processes() > 0) {
    out << "process";
    for (auto s : pts.processes()) out << ' ' << pts.name(s);
    out << '\n';
  }
  for (auto s : pts.processes()) {
    for (const auto& t : pts.transitions(s)) {
      out << pts.name(s) << " -" << pts.name(t.action) << "-> { ";
      bool first = true;
      for (const auto& e : t.target.entries()) {
        if (!first) out << ", ";
        first = false;
        out << pts.name(e.process) << ": " << to_string(e.weight);
      }
      out << " }\n";
    }
  }
  return out.str();
}

namespace detail {

// formula  := '&' unary | unary ('&' unary)*
// unary    := 'T' | '~' unary | '<' name '>' body | '(' formula ')'
// body     := '(' rational formula ('(+)' rational formula)* ')' | unary
class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : in_(text) {}

  StateFormula parse() {
    StateFormula f = formula();
    in_.skip_space();
    if (!in_.at_end()) in_.fail("unexpected trailing text");
    return f;
  }

 private:
  StateFormula formula() {
    if (in_.accept("&")) return StateFormula::conjunction({unary()});
    std::vector<StateFormula> parts{unary()};
    while (in_.accept("&")) parts.push_back(unary());
    if (parts.size() == 1) return parts.front();
    return StateFormula::conjunction(std::move(parts));
  }

  StateFormula unary() {
    in_.skip_space();
    if (in_.accept("~")) return StateFormula::negation(unary());
    if (in_.accept("<")) {
      std::string action = in_.name("an action name");
      in_.expect(">");
      return StateFormula::diamond(std::move(action), body());
    }
    if (in_.accept("(")) {
      StateFormula f = formula();
      in_.expect(")");
      return f;
    }
    if (in_.peek() == 'T' && !is_name_char(in_.peek(1))) {
      in_.advance();
      return StateFormula::top();
    }
    in_.fail("expected a formula");
  }

  DistFormula body() {
    in_.skip_space();
    if (in_.peek() == '(') {
      std::size_t ahead = 1;
      while (std::isspace(static_cast<unsigned char>(in_.peek(ahead))) != 0) ++ahead;
      if (std::isdigit(static_cast<unsigned char>(in_.peek(ahead))) != 0) {
        in_.expect("(");
        std::vector<WeightedFormula> terms;
        do {
          Rational w = in_.rational();
          terms.push_back({std::move(w), formula()});
        } while (in_.accept("(+)"));
        in_.expect(")");
        const std::size_t line = in_.line();
        try {
          return DistFormula(std::move(terms));
        } catch (const SemanticError& e) {
          throw ParseError(line, 0, e.what());
        }
      }
    }
    return DistFormula::dirac(unary());
  }

  Cursor in_;
};

inline std::string format_unary(const StateFormula& phi);

inline std::string format_top_level(const StateFormula& phi) {
  if (phi.kind() != StateFormula::Kind::conjunction) return format_unary(phi);
  if (phi.conjuncts().size() == 1) return "& " + format_unary(phi.conjuncts().front());
  std::string out;
  for (const auto& c : phi.conjuncts()) {
    if (!out.empty()) out += " & ";
    out += format_unary(c);
  }
  return out;
}

inline std::string format_unary(const StateFormula& phi) {
  switch (phi.kind()) {
    case StateFormula::Kind::top:
      return "T";
    case StateFormula::Kind::negation:
      return "~" + format_unary(phi.body());
    case StateFormula::Kind::conjunction:
      return "(" + format_top_level(phi) + ")";
    case StateFormula::Kind::diamond: {
      const auto terms = phi.distribution().terms();
      if (terms.size() == 1) return "<" + phi.action() + ">" + format_unary(terms.front().formula);
      std::string out = "<" + phi.action() + ">(";
      for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i > 0) out += " (+) ";
        out += to_string(terms[i].weight) + " " + format_top_level(terms[i].formula);
      }
      return out + ")";
    }
  }
  return {};
}

}  // namespace detail

/**
 * Reads a state formula:
 *
 *     T   ~f   f & g & h   & f (one-member conjunction)   (f)
 *     <a> f                    diamond with a single weight-1 term
 *     <a>(3/4 f (+) 1/4 g)     diamond with a distribution formula
 */
inline StateFormula parse_formula(std::string_view text) { return detail::FormulaParser(text).parse(); }

inline std::string format_formula(const StateFormula& phi) { return detail::format_top_level(phi); }

inline std::string format_formula(const DistFormula& psi) {
  std::string out;
  for (const auto& t : psi.terms()) {
    if (!out.empty()) out += " (+) ";
    out += to_string(t.weight) + " " + detail::format_top_level(t.formula);
  }
  return out;
}

/// Graphviz rendering: solid edges labelled by actions lead to a point node
/// per transition, dashed edges labelled by probabilities leave it.
inline std::string to_dot(const Pts& pts) {
  auto quoted = [](const std::string& s) { return "\"" + s + "\""; };
  std::ostringstream out;
  out << "digraph pts {\n  node [shape=circle];\n";
  for (auto s : pts.processes()) out << "  " << quoted(pts.name(s)) << ";\n";
  std::size_t n = 0;
  for (auto s : pts.processes()) {
    for (const auto& t : pts.transitions(s)) {
      const std::string mid = "tr" + std::to_string(n++);
      out << "  " << mid << " [shape=point];\n";
      out << "  " << quoted(pts.name(s)) << " -> " << mid << " [label=" << quoted(pts.name(t.action)) << "];\n";
      for (const auto& e : t.target.entries()) {
        out << "  " << mid << " -> " << quoted(pts.name(e.process)) << " [style=dashed, label="
            << quoted(to_string(e.weight)) << "];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace probmetric
