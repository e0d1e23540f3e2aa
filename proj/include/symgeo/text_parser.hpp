// Rule-based text parser: an ordered table of sentence patterns turns
// English problem statements into literals.  Sentences are split into
// clauses; each clause is matched against the rules in priority order;
// every accepted match instantiates one or more literal templates.  Spans
// consumed by a higher-priority match are unavailable to later rules, and
// leftover content produces warnings instead of failures.
//
// Arithmetic phrases ("2x + 3", "sqrt 19") are handled by a small infix
// sub-grammar producing Add/Mul/Sub/Div/Pow/SqrtOf/... literals.

#pragma once

#include <cctype>
#include <fstream>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "symgeo/normalize.hpp"
#include "symgeo/parse.hpp"
#include "symgeo/validate.hpp"

namespace symgeo {

// --- infix expression sub-grammar ---------------------------------------

namespace detail {

class InfixParser {
 public:
  explicit InfixParser(std::string_view text) : text_(text) {}

  // Returns a numeric-valued Term; throws std::runtime_error on failure.
  Term parse() {
    Term t = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw std::runtime_error("trailing input in expression");
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Term expr() {
    Term acc = term();
    while (true) {
      char c = peek();
      if (c == '+' || c == '-') {
        ++pos_;
        Term rhs = term();
        acc = Term::literal(Literal(c == '+' ? "Add" : "Sub",
                                    {std::move(acc), std::move(rhs)}));
      } else {
        return acc;
      }
    }
  }

  Term term() {
    Term acc = factor();
    while (true) {
      char c = peek();
      if (c == '*' || c == '/') {
        ++pos_;
        Term rhs = factor();
        acc = Term::literal(Literal(c == '*' ? "Mul" : "Div",
                                    {std::move(acc), std::move(rhs)}));
      } else if (c == '(' || std::isdigit(static_cast<unsigned char>(c)) ||
                 std::isalpha(static_cast<unsigned char>(c))) {
        // implicit multiplication: 2x, 2(x+1), x y
        Term rhs = factor();
        acc = Term::literal(Literal("Mul", {std::move(acc), std::move(rhs)}));
      } else {
        return acc;
      }
    }
  }

  Term factor() {
    char c = peek();
    if (c == '-') {
      ++pos_;
      Term inner = factor();
      return Term::literal(
          Literal("Mul", {Term::number(-1), std::move(inner)}));
    }
    return power();
  }

  Term power() {
    Term base = atom();
    if (peek() == '^') {
      ++pos_;
      Term exp = factor();
      return Term::literal(Literal("Pow", {std::move(base), std::move(exp)}));
    }
    return base;
  }

  Term atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Term inner = expr();
      if (peek() != ')') throw std::runtime_error("unbalanced parentheses");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '.'))
        ++pos_;
      double v = 0;
      auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
      if (res.ec != std::errc()) throw std::runtime_error("bad number");
      return Term::number(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isalpha(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      std::string word(text_.substr(start, pos_ - start));
      static const std::map<std::string, std::string> funcs = {
          {"sqrt", "SqrtOf"}, {"sin", "SinOf"},  {"cos", "CosOf"},
          {"tan", "TanOf"},   {"cot", "CotOf"},  {"half", "HalfOf"}};
      auto fit = funcs.find(word);
      if (fit != funcs.end()) {
        Term arg = peek() == '(' ? atom() : power();
        return Term::literal(Literal(fit->second, {std::move(arg)}));
      }
      if (word == "pi") return Term::variable("pi");
      if (word.size() == 1 && std::islower(static_cast<unsigned char>(word[0])))
        return Term::variable(word);
      throw std::runtime_error("unknown word in expression: " + word);
    }
    throw std::runtime_error("expected expression");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Parses an infix arithmetic phrase into a numeric term.
inline Term parse_infix_expression(std::string_view text) {
  return detail::InfixParser(text).parse();
}

// --- rule table ----------------------------------------------------------

struct TemplateRule {
  std::string id;
  int priority = 0;
  std::string pattern_text;
  std::regex pattern;
  std::vector<std::string> productions;
};

struct TextParseResult {
  std::vector<Literal> literals;
  std::vector<std::string> warnings;
};

class TextRuleTable {
 public:
  static TextRuleTable from_json(const nlohmann::json& j,
                                 const Registry& reg = builtin_registry());
  static TextRuleTable load(const std::string& path,
                            const Registry& reg = builtin_registry()) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open rule table: " + path);
    nlohmann::json j;
    in >> j;
    return from_json(j, reg);
  }

  const std::vector<TemplateRule>& rules() const { return rules_; }
  const std::vector<std::string>& diagram_only() const { return diagram_only_; }
  const std::vector<std::string>& expression_heads() const {
    return expression_heads_;
  }

  TextParseResult parse_text(const std::string& problem_text) const;

 private:
  const Registry* reg_ = nullptr;
  std::vector<TemplateRule> rules_;
  std::vector<std::string> diagram_only_;
  std::vector<std::string> expression_heads_;
};

namespace detail {

// Unicode and LaTeX markers normalized to plain words the rules match.
inline std::string preprocess_text(const std::string& raw) {
  std::string s = raw;
  auto replace_all = [&](const std::string& from, const std::string& to) {
    std::size_t at = 0;
    while ((at = s.find(from, at)) != std::string::npos) {
      s.replace(at, from.size(), to);
      at += to.size();
    }
  };
  replace_all("∠", " angle ");      // ∠
  replace_all("△", " triangle ");   // △
  replace_all("Δ", " triangle ");   // Δ
  replace_all("∥", " parallel ");   // ∥
  replace_all("⊥", " perpendicular ");  // ⊥
  replace_all("≅", " congruent ");  // ≅
  replace_all("∼", " similar ");    // ∼
  replace_all("⊙", " circle ");     // ⊙
  replace_all("∘", " degrees ");    // ∘
  replace_all("°", " degrees ");    // °
  replace_all("π", " pi ");         // π
  replace_all("√", " sqrt ");       // √
  replace_all("−", "-");            // −

  s = std::regex_replace(
      s, std::regex(R"(\\frac\s*\{([^{}]*)\}\s*\{([^{}]*)\})"), "(($1)/($2))");
  s = std::regex_replace(s, std::regex(R"(\\widehat\s*\{([^{}]*)\})"),
                         " arc $1 ");
  s = std::regex_replace(s, std::regex(R"(\^\s*\{?\\circ\}?)"), " degrees ");
  replace_all("\\angle", " angle ");
  replace_all("\\triangle", " triangle ");
  replace_all("\\parallel", " parallel ");
  replace_all("\\perp", " perpendicular ");
  replace_all("\\cong", " congruent ");
  replace_all("\\sim", " similar ");
  replace_all("\\odot", " circle ");
  replace_all("\\pi", " pi ");
  replace_all("\\sqrt", " sqrt ");
  replace_all("\\cdot", "*");
  replace_all("\\times", "*");
  replace_all("$", "");
  replace_all("{", "(");
  replace_all("}", ")");

  // Number words.
  static const std::vector<std::pair<const char*, const char*>> words = {
      {"twelve", "12"}, {"eleven", "11"}, {"ten", "10"}, {"nine", "9"},
      {"eight", "8"},   {"seven", "7"},   {"six", "6"},  {"five", "5"},
      {"four", "4"},    {"three", "3"},   {"two", "2"},  {"one", "1"},
      {"twice", "2 times"}};
  for (const auto& [w, d] : words)
    s = std::regex_replace(s, std::regex(std::string("\\b") + w + "\\b",
                                         std::regex::icase),
                           d);
  // Units after a number carry no information for the solver.
  s = std::regex_replace(
      s,
      std::regex(R"((\d(?:\.\d+)?)\s*(degrees?|units?|centimeters?|)"
                 R"(millimeters?|meters?|inches|inch|feet|foot|yards?|)"
                 R"(cm|mm|ft|yd|in)\b)",
      std::regex::icase),
      "$1");
  // Collapse whitespace.
  s = std::regex_replace(s, std::regex("[ \t\r\n]+"), " ");
  return s;
}

inline std::vector<std::string> split_sentences(const std::string& text) {
  std::vector<std::string> sentences;
  std::string cur;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    bool decimal_point =
        c == '.' && !cur.empty() &&
        std::isdigit(static_cast<unsigned char>(cur.back())) &&
        i + 1 < text.size() &&
        std::isdigit(static_cast<unsigned char>(text[i + 1]));
    if ((c == '.' && !decimal_point) || c == '?' || c == '!' || c == ';') {
      if (!cur.empty()) sentences.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) sentences.push_back(cur);

  std::vector<std::string> out;
  for (const auto& s : sentences) {
    std::size_t b = s.find_first_not_of(' ');
    std::size_t e = s.find_last_not_of(' ');
    if (b != std::string::npos) out.push_back(s.substr(b, e - b + 1));
  }
  return out;
}

// Sub-pattern an %E% placeholder expands to: a lazily matched arithmetic
// phrase ended by a comma, a coordinating word, or the end of the sentence.
inline const char* expression_subpattern() {
  return "([0-9a-z.(][0-9a-z.+*/^() -]*?)(?=,| and\\b| then\\b|$)";
}

inline bool is_stopword(const std::string& w) {
  static const std::set<std::string> stop = {
      "in",  "the", "a",    "an",   "of",   "is",  "are", "if",   "then",
      "and", "for", "with", "at",   "on",   "to",  "as",  "its",  "it",
      "has", "have", "that", "what", "which", "shown", "below", "given",
      "figure", "use", "round", "nearest", "tenth", "answer", "each", "all",
      "find"};
  std::string lower;
  for (char c : w) lower += static_cast<char>(std::tolower(c));
  return stop.count(lower) > 0;
}

}  // namespace detail

inline TextRuleTable TextRuleTable::from_json(const nlohmann::json& j,
                                              const Registry& reg) {
  TextRuleTable t;
  t.reg_ = &reg;
  if (j.contains("diagram_only"))
    t.diagram_only_ = j["diagram_only"].get<std::vector<std::string>>();
  if (j.contains("expression_heads"))
    t.expression_heads_ =
        j["expression_heads"].get<std::vector<std::string>>();
  std::set<std::string> ids;
  for (const auto& jr : j.at("rules")) {
    TemplateRule r;
    r.id = jr.at("id").get<std::string>();
    if (!ids.insert(r.id).second)
      throw std::runtime_error("duplicate text rule id: " + r.id);
    r.priority = jr.at("priority").get<int>();
    r.pattern_text = jr.at("pattern").get<std::string>();
    std::string expanded = r.pattern_text;
    std::size_t at;
    while ((at = expanded.find("%E%")) != std::string::npos)
      expanded.replace(at, 3, detail::expression_subpattern());
    r.pattern = std::regex(expanded);
    r.productions = jr.at("productions").get<std::vector<std::string>>();
    t.rules_.push_back(std::move(r));
  }
  std::stable_sort(t.rules_.begin(), t.rules_.end(),
                   [](const TemplateRule& a, const TemplateRule& b) {
                     return a.priority < b.priority;
                   });
  return t;
}

inline TextParseResult TextRuleTable::parse_text(
    const std::string& problem_text) const {
  TextParseResult out;
  std::string text = detail::preprocess_text(problem_text);
  std::set<std::string> emitted;

  auto instantiate = [&](const std::string& tmpl, const std::smatch& m,
                         std::vector<std::string>& warnings) {
    std::string built;
    for (std::size_t i = 0; i < tmpl.size(); ++i) {
      if (tmpl[i] != '{') {
        built += tmpl[i];
        continue;
      }
      std::size_t close = tmpl.find('}', i);
      if (close == std::string::npos) {
        warnings.push_back("bad production template: " + tmpl);
        return;
      }
      std::string spec = tmpl.substr(i + 1, close - i - 1);
      i = close;
      std::string kind = "raw";
      std::size_t colon = spec.find(':');
      if (colon != std::string::npos) {
        kind = spec.substr(colon + 1);
        spec = spec.substr(0, colon);
      }
      int group = std::stoi(spec);
      if (group >= static_cast<int>(m.size())) {
        warnings.push_back("capture group " + spec + " missing");
        return;
      }
      std::string cap = m[group].str();
      if (kind == "raw" || kind == "num") {
        std::size_t b = cap.find_first_not_of(' ');
        std::size_t e = cap.find_last_not_of(' ');
        built += b == std::string::npos ? cap : cap.substr(b, e - b + 1);
      } else if (kind == "pts") {
        std::string pts;
        for (char c : cap) {
          if (std::isspace(static_cast<unsigned char>(c))) continue;
          if (!std::isupper(static_cast<unsigned char>(c))) {
            warnings.push_back("expected point letters in '" + cap + "'");
            return;
          }
          if (!pts.empty()) pts += ',';
          pts += c;
        }
        built += pts;
      } else if (kind == "expr") {
        try {
          built += serialize_term(parse_infix_expression(cap));
        } catch (const std::exception& e) {
          warnings.push_back("unparseable expression '" + cap +
                             "': " + e.what());
          return;
        }
      } else {
        warnings.push_back("unknown capture kind: " + kind);
        return;
      }
    }
    try {
      Literal lit = normalize_literal(parse_literal(built, *reg_), *reg_);
      auto rep = validate_literal(lit, *reg_);
      if (!rep.ok()) {
        warnings.push_back("rule produced invalid literal " + built + ": " +
                           rep.issues.front().message);
        return;
      }
      std::string key = serialize_literal(lit);
      if (emitted.insert(key).second) out.literals.push_back(std::move(lit));
    } catch (const std::exception& e) {
      warnings.push_back("rule produced unparsable literal " + built + ": " +
                         e.what());
    }
  };

  for (const std::string& clause : detail::split_sentences(text)) {
    std::vector<bool> consumed(clause.size(), false);
    for (const auto& rule : rules_) {
      auto begin = std::sregex_iterator(clause.begin(), clause.end(),
                                        rule.pattern);
      for (auto it = begin; it != std::sregex_iterator(); ++it) {
        const std::smatch& m = *it;
        std::size_t from = static_cast<std::size_t>(m.position(0));
        std::size_t len = static_cast<std::size_t>(m.length(0));
        bool overlap = false;
        for (std::size_t k = from; k < from + len && k < consumed.size(); ++k)
          if (consumed[k]) overlap = true;
        if (overlap) continue;
        for (const auto& prod : rule.productions)
          instantiate(prod, m, out.warnings);
        for (std::size_t k = from; k < from + len && k < consumed.size(); ++k)
          consumed[k] = true;
      }
    }
    // Leftover content that is not a stopword becomes a warning span.
    std::string leftover;
    std::string word;
    bool significant = false;
    for (std::size_t k = 0; k <= clause.size(); ++k) {
      char c = k < clause.size() ? clause[k] : ' ';
      if (k < clause.size() && !consumed[k] &&
          (std::isalnum(static_cast<unsigned char>(c)))) {
        word += c;
      } else {
        if (word.size() > 1 && !detail::is_stopword(word)) significant = true;
        if (!word.empty()) leftover += (leftover.empty() ? "" : " ") + word;
        word.clear();
      }
    }
    if (significant)
      out.warnings.push_back("unmatched span in sentence: \"" + clause + "\"");
  }
  return out;
}

// Fraction of problems whose parsed literal multiset equals the normalized
// ground truth.
struct AnnotatedText {
  std::string text;
  std::vector<Literal> expected;
};

inline double parser_accuracy(const TextRuleTable& table,
                              const std::vector<AnnotatedText>& problems,
                              const Registry& reg = builtin_registry()) {
  if (problems.empty())
    throw std::invalid_argument("parser_accuracy: empty problem set");
  int hits = 0;
  for (const auto& p : problems) {
    auto got = table.parse_text(p.text);
    std::multiset<std::string> a, b;
    for (const auto& l : got.literals) a.insert(serialize_literal(l));
    for (const auto& l : p.expected)
      b.insert(serialize_literal(normalize_literal(l, reg)));
    if (a == b) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(problems.size());
}

}  // namespace symgeo
