// Recursive-descent parser for the literal language.
//
// Grammar:
//   literal  := IDENT "(" term ("," term)* ")"
//   term     := literal | IDENT | NUMBER | VARIABLE | SLOT
//   IDENT    := uppercase-initial token (or a registered predicate name)
//   VARIABLE := lowercase-initial token
//   SLOT     := "$" [A-Za-z0-9_]*          (pattern placeholder)
//   NUMBER   := decimal with optional sign and exponent
//
// A lowercase token sitting in a position whose declared sort is a name
// (Line(m), UseTheorem(...)) is an identifier, not a variable.  Arity and
// sort violations are parse errors here; `validate_literal` reports the
// same conditions as data for literals built programmatically.

#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "symgeo/literal.hpp"
#include "symgeo/registry.hpp"

namespace symgeo {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

namespace detail {

// True when a numeric-valued term may occupy a position of sort `s`.
bool sort_accepts(Sort s, const Term& t, const Registry& reg);

inline bool is_numeric_valued(const Term& t, const Registry& reg) {
  switch (t.kind()) {
    case Term::Kind::number:
    case Term::Kind::variable:
    case Term::Kind::slot: return true;
    case Term::Kind::identifier: return false;
    case Term::Kind::literal: {
      const Predicate* p = reg.find(t.as_literal().head());
      return p && p->value == ValueKind::numeric_value;
    }
  }
  return false;
}

inline bool is_shape_literal_of(const Term& t, const Registry& reg,
                                const std::string& head) {
  return t.is_literal() && t.as_literal().head() == head &&
         reg.find(head) != nullptr;
}

inline bool is_nonneg_int_number(const Term& t) {
  if (!t.is_number()) return false;
  double v = t.as_number();
  return v >= 0 && v == static_cast<double>(static_cast<long long>(v));
}

inline bool sort_accepts(Sort s, const Term& t, const Registry& reg) {
  if (t.is_slot()) return true;
  switch (s) {
    case Sort::any:
      return true;
    case Sort::point:
      if (t.is_identifier()) return true;
      // Point(A) wrapper is tolerated; normalization unwraps it.
      return is_shape_literal_of(t, reg, "Point");
    case Sort::name:
      return t.is_identifier() || t.is_variable() || is_nonneg_int_number(t);
    case Sort::line_ref:
      return is_shape_literal_of(t, reg, "Line") || t.is_identifier();
    case Sort::angle_ref:
      return is_shape_literal_of(t, reg, "Angle") || t.is_identifier() ||
             is_nonneg_int_number(t);
    case Sort::circle_ref:
      return is_shape_literal_of(t, reg, "Circle") || t.is_identifier();
    case Sort::arc_ref:
      return is_shape_literal_of(t, reg, "Arc") || t.is_identifier();
    case Sort::triangle_ref:
      return is_shape_literal_of(t, reg, "Triangle") || t.is_identifier();
    case Sort::quad_ref:
      if (t.is_identifier() || is_nonneg_int_number(t)) return true;
      return t.is_literal() && is_quad_family_head(t.as_literal().head());
    case Sort::trapezoid_ref:
      return is_shape_literal_of(t, reg, "Trapezoid") || t.is_identifier();
    case Sort::polygon_ref:
      if (t.is_identifier() || is_nonneg_int_number(t)) return true;
      if (!t.is_literal()) return false;
      return is_vertex_polygon_head(t.as_literal().head()) ||
             t.as_literal().head() == "Shape";
    case Sort::shape_ref: {
      if (t.is_identifier() || is_nonneg_int_number(t)) return true;
      if (!t.is_literal()) return false;
      const Predicate* p = reg.find(t.as_literal().head());
      return p && p->category == Category::shape;
    }
    case Sort::measurable_ref: {
      if (t.is_identifier() || is_nonneg_int_number(t)) return true;
      if (!t.is_literal()) return false;
      const Predicate* p = reg.find(t.as_literal().head());
      return p && p->category == Category::shape;
    }
    case Sort::numeric:
      return is_numeric_valued(t, reg);
  }
  return false;
}

// Sorts at which a bare lowercase token names an object rather than an
// algebra variable.
inline bool sort_is_name_position(Sort s) {
  switch (s) {
    case Sort::name:
    case Sort::line_ref:
    case Sort::angle_ref:
    case Sort::circle_ref:
    case Sort::arc_ref:
    case Sort::triangle_ref:
    case Sort::quad_ref:
    case Sort::trapezoid_ref:
    case Sort::polygon_ref:
    case Sort::shape_ref:
    case Sort::measurable_ref:
      return true;
    default:
      return false;
  }
}

class LiteralParser {
 public:
  LiteralParser(std::string_view text, const Registry& reg)
      : text_(text), reg_(reg) {}

  Literal parse() {
    skip_ws();
    Literal lit = parse_literal();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("trailing input after literal", pos_);
    return lit;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t at) {
    throw ParseError(msg, at);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool ident_char(char c) const {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '\'';
  }

  std::string read_token() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  double read_number() {
    std::size_t start = pos_;
    if (peek() == '+' || peek() == '-') ++pos_;
    bool digits = false;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_, digits = true;
    if (peek() == '.') {
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_, digits = true;
    }
    if (!digits) fail("malformed number", start);
    if (peek() == 'e' || peek() == 'E') {
      std::size_t mark = pos_;
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek())))
        pos_ = mark;  // 'e' belongs to a following token
      else
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    double v = 0;
    auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (res.ec != std::errc()) fail("malformed number", start);
    return v;
  }

  Literal parse_literal() {
    skip_ws();
    std::size_t head_at = pos_;
    if (!std::isalpha(static_cast<unsigned char>(peek())) && peek() != '_')
      fail("expected predicate name", pos_);
    std::string head = read_token();
    const Predicate* pred = reg_.find(head);
    if (!pred) fail("unknown predicate '" + head + "'", head_at);
    skip_ws();
    if (peek() != '(') fail("expected '(' after predicate name", pos_);
    ++pos_;
    std::vector<Term> args;
    std::vector<std::size_t> arg_offsets;
    while (true) {
      skip_ws();
      arg_offsets.push_back(pos_);
      args.push_back(parse_term());
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      if (peek() == ')') {
        ++pos_;
        break;
      }
      fail("unbalanced parentheses or missing ','", pos_);
    }
    const Form* form = pred->form_for_arity(args.size());
    if (!form)
      fail("arity mismatch for '" + head + "': got " +
               std::to_string(args.size()),
           head_at);
    for (std::size_t i = 0; i < args.size(); ++i) {
      Sort s = form->sort_at(i, args.size());
      if (args[i].is_variable() && sort_is_name_position(s))
        args[i] = Term::identifier(args[i].text());
      if (!sort_accepts(s, args[i], reg_))
        fail("sort mismatch for '" + head + "' argument " +
                 std::to_string(i + 1) + " (expected " + to_string(s) + ")",
             arg_offsets[i]);
    }
    return Literal(std::move(head), std::move(args));
  }

  Term parse_term() {
    skip_ws();
    char c = peek();
    if (c == '$') {
      std::size_t start = pos_;
      ++pos_;
      std::string rest = read_token();
      return Term::slot(std::string(text_.substr(start, pos_ - start)));
    }
    if (c == '+' || c == '-' || c == '.' ||
        std::isdigit(static_cast<unsigned char>(c)))
      return Term::number(read_number());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      std::string tok = read_token();
      skip_ws();
      if (peek() == '(') {
        pos_ = start;  // re-parse as a literal so errors carry offsets
        return Term::literal(parse_literal());
      }
      if (std::isupper(static_cast<unsigned char>(tok[0])))
        return Term::identifier(std::move(tok));
      return Term::variable(std::move(tok));
    }
    fail("expected term", pos_);
  }

  std::string_view text_;
  const Registry& reg_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Literal parse_literal(std::string_view text, const Registry& reg) {
  if (text.empty()) throw ParseError("empty input", 0);
  return detail::LiteralParser(text, reg).parse();
}

inline Literal parse_literal(std::string_view text) {
  return parse_literal(text, builtin_registry());
}

}  // namespace symgeo
