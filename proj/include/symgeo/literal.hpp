// Term and Literal: the recursive term language every other component
// speaks.  A literal is a predicate head applied to arguments; arguments
// are identifiers, numbers, variables, pattern slots, or nested literals.
// Values are immutable after construction and cheap to copy (nested
// literals are shared).

#pragma once

#include <array>
#include <charconv>
#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace symgeo {

class Literal;
using LiteralPtr = std::shared_ptr<const Literal>;

// Shortest decimal form that round-trips through a double.
inline std::string format_number(double v) {
  if (v == 0.0) return "0";
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), end);
}

class Term {
 public:
  enum class Kind { number, variable, identifier, slot, literal };

  static Term number(double v) { return Term(Kind::number, "", v, nullptr); }
  static Term variable(std::string name) {
    return Term(Kind::variable, std::move(name), 0.0, nullptr);
  }
  static Term identifier(std::string name) {
    return Term(Kind::identifier, std::move(name), 0.0, nullptr);
  }
  static Term slot(std::string name) {
    return Term(Kind::slot, std::move(name), 0.0, nullptr);
  }
  static Term literal(Literal lit);
  static Term literal(LiteralPtr lit) {
    return Term(Kind::literal, "", 0.0, std::move(lit));
  }

  Kind kind() const { return kind_; }
  bool is_number() const { return kind_ == Kind::number; }
  bool is_variable() const { return kind_ == Kind::variable; }
  bool is_identifier() const { return kind_ == Kind::identifier; }
  bool is_slot() const { return kind_ == Kind::slot; }
  bool is_literal() const { return kind_ == Kind::literal; }

  double as_number() const { return num_; }
  // Name of a variable/identifier/slot (slots keep their leading '$').
  const std::string& text() const { return text_; }
  const Literal& as_literal() const { return *lit_; }
  const LiteralPtr& literal_ptr() const { return lit_; }

  bool is_ground() const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  Term(Kind k, std::string t, double n, LiteralPtr l)
      : kind_(k), text_(std::move(t)), num_(n), lit_(std::move(l)) {}

  Kind kind_;
  std::string text_;
  double num_ = 0.0;
  LiteralPtr lit_;
};

class Literal {
 public:
  Literal() = default;
  Literal(std::string head, std::vector<Term> args)
      : head_(std::move(head)), args_(std::move(args)) {}

  const std::string& head() const { return head_; }
  const std::vector<Term>& args() const { return args_; }
  std::size_t arity() const { return args_.size(); }
  const Term& arg(std::size_t i) const { return args_[i]; }

  bool is_ground() const {
    for (const auto& a : args_)
      if (!a.is_ground()) return false;
    return true;
  }

  Literal with_args(std::vector<Term> args) const {
    return Literal(head_, std::move(args));
  }

  friend bool operator==(const Literal& a, const Literal& b);
  friend std::strong_ordering operator<=>(const Literal& a, const Literal& b);

 private:
  std::string head_;
  std::vector<Term> args_;
};

inline Term Term::literal(Literal lit) {
  return Term(Kind::literal, "", 0.0,
              std::make_shared<const Literal>(std::move(lit)));
}

inline bool Term::is_ground() const {
  if (kind_ == Kind::slot) return false;
  if (kind_ == Kind::literal) return lit_->is_ground();
  return true;
}

inline std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  switch (a.kind_) {
    case Term::Kind::number: {
      if (a.num_ < b.num_) return std::strong_ordering::less;
      if (a.num_ > b.num_) return std::strong_ordering::greater;
      return std::strong_ordering::equal;
    }
    case Term::Kind::variable:
    case Term::Kind::identifier:
    case Term::Kind::slot:
      return a.text_ <=> b.text_;
    case Term::Kind::literal:
      return *a.lit_ <=> *b.lit_;
  }
  return std::strong_ordering::equal;
}

inline bool operator==(const Term& a, const Term& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

inline std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
  if (auto c = a.head_ <=> b.head_; c != std::strong_ordering::equal) return c;
  if (auto c = a.args_.size() <=> b.args_.size();
      c != std::strong_ordering::equal)
    return c;
  for (std::size_t i = 0; i < a.args_.size(); ++i)
    if (auto c = a.args_[i] <=> b.args_[i]; c != std::strong_ordering::equal)
      return c;
  return std::strong_ordering::equal;
}

inline bool operator==(const Literal& a, const Literal& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

inline void serialize_term(const Term& t, std::string& out);

// Canonical textual form: head(arg,arg,...), no whitespace.
inline void serialize_literal(const Literal& l, std::string& out) {
  out += l.head();
  out += '(';
  bool first = true;
  for (const auto& a : l.args()) {
    if (!first) out += ',';
    first = false;
    serialize_term(a, out);
  }
  out += ')';
}

inline void serialize_term(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::number: out += format_number(t.as_number()); break;
    case Term::Kind::variable:
    case Term::Kind::identifier:
    case Term::Kind::slot: out += t.text(); break;
    case Term::Kind::literal: serialize_literal(t.as_literal(), out); break;
  }
}

inline std::string serialize_literal(const Literal& l) {
  std::string out;
  serialize_literal(l, out);
  return out;
}

inline std::string serialize_term(const Term& t) {
  std::string out;
  serialize_term(t, out);
  return out;
}

// Collects every predicate head appearing in the tree, outermost first.
inline void collect_heads(const Literal& l, std::vector<std::string>& out) {
  out.push_back(l.head());
  for (const auto& a : l.args())
    if (a.is_literal()) collect_heads(a.as_literal(), out);
}

}  // namespace symgeo
