// Theorem knowledge base.  Each theorem is a conditional rule: one or more
// clauses of premise patterns and conclusion templates, all written in the
// literal language.  Rules are split into a lower-order set (conclusions
// restricted to addition/subtraction over measures) and a higher-order set
// (products, powers, roots, trigonometry allowed).

#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "symgeo/relation_set.hpp"

namespace symgeo {

enum class OrderClass { lower, higher };

inline const char* to_string(OrderClass c) {
  return c == OrderClass::lower ? "lower" : "higher";
}

struct TheoremClause {
  std::vector<Literal> premise;
  std::vector<Literal> conclusions;
};

struct TheoremRule {
  int id = 0;
  std::string name;
  OrderClass order = OrderClass::lower;
  std::vector<TheoremClause> clauses;
};

struct KnowledgeBase {
  std::vector<TheoremRule> lower;   // KB1
  std::vector<TheoremRule> higher;  // KB2
  std::vector<std::string> warnings;

  std::vector<const TheoremRule*> all() const {
    std::vector<const TheoremRule*> out;
    for (const auto& r : lower) out.push_back(&r);
    for (const auto& r : higher) out.push_back(&r);
    std::sort(out.begin(), out.end(),
              [](const TheoremRule* a, const TheoremRule* b) {
                return a->id < b->id;
              });
    return out;
  }

  const TheoremRule* find(int id) const {
    for (const auto& r : lower)
      if (r.id == id) return &r;
    for (const auto& r : higher)
      if (r.id == id) return &r;
    return nullptr;
  }

  std::size_t size() const { return lower.size() + higher.size(); }
};

class KbError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Numeric heads allowed in lower-order conclusions.
inline bool lower_order_head_ok(const std::string& h) {
  return h == "Equals" || h == "Add" || h == "SumOf" || h == "Sub";
}

inline bool numeric_operator_head(const std::string& h) {
  static const std::set<std::string> ops = {
      "Add", "SumOf", "Sub", "Mul", "Div", "Pow",     "SquareOf",
      "SqrtOf", "HalfOf", "RatioOf", "AverageOf", "SinOf", "CosOf",
      "TanOf", "CotOf", "Equals"};
  return ops.count(h) > 0;
}

inline void check_lower_order_term(const Term& t, int rule_id) {
  if (!t.is_literal()) return;
  const Literal& l = t.as_literal();
  if (numeric_operator_head(l.head()) && !lower_order_head_ok(l.head()))
    throw KbError("rule " + std::to_string(rule_id) +
                  ": lower-order conclusion uses operator '" + l.head() +
                  "' outside {+,-}");
  for (const auto& a : l.args()) check_lower_order_term(a, rule_id);
}

}  // namespace detail

// Validates one rule: slot coverage, pattern well-formedness, and the
// operator restriction on lower-order conclusions.
inline void validate_rule(const TheoremRule& rule, const Registry& reg) {
  if (rule.clauses.empty())
    throw KbError("rule " + std::to_string(rule.id) + ": no clauses");
  for (const auto& clause : rule.clauses) {
    if (clause.premise.empty())
      throw KbError("rule " + std::to_string(rule.id) + ": empty premise");
    std::set<std::string> premise_slots;
    auto collect_slots = [](const Literal& l, std::set<std::string>& out) {
      std::vector<const Literal*> stack{&l};
      while (!stack.empty()) {
        const Literal* cur = stack.back();
        stack.pop_back();
        for (const auto& a : cur->args()) {
          if (a.is_slot()) out.insert(a.text());
          if (a.is_literal()) stack.push_back(&a.as_literal());
        }
      }
    };
    for (const auto& p : clause.premise) {
      auto rep = validate_pattern(p, reg);
      if (!rep.ok())
        throw KbError("rule " + std::to_string(rule.id) +
                      ": malformed premise " + serialize_literal(p) + ": " +
                      rep.issues.front().message);
      collect_slots(p, premise_slots);
    }
    for (const auto& c : clause.conclusions) {
      auto rep = validate_pattern(c, reg);
      if (!rep.ok())
        throw KbError("rule " + std::to_string(rule.id) +
                      ": malformed conclusion " + serialize_literal(c) +
                      ": " + rep.issues.front().message);
      std::set<std::string> concl_slots;
      collect_slots(c, concl_slots);
      for (const auto& s : concl_slots)
        if (!premise_slots.count(s))
          throw KbError("rule " + std::to_string(rule.id) + ": conclusion " +
                        serialize_literal(c) + " uses unbound slot " + s);
      if (rule.order == OrderClass::lower) {
        if (c.head() == "Equals")
          for (const auto& a : c.args())
            detail::check_lower_order_term(a, rule.id);
      }
    }
  }
}

// Loads a knowledge base from its JSON form, validating every rule and
// partitioning it by order class.
inline KnowledgeBase load_kb_json(const nlohmann::json& j,
                                  const Registry& reg = builtin_registry()) {
  KnowledgeBase kb;
  if (!j.contains("rules") || !j["rules"].is_array())
    throw KbError("knowledge base file has no 'rules' array");
  if (j["rules"].empty())
    kb.warnings.push_back("knowledge base is empty");
  std::set<int> ids;
  for (const auto& jr : j["rules"]) {
    TheoremRule rule;
    rule.id = jr.at("id").get<int>();
    if (!ids.insert(rule.id).second)
      throw KbError("duplicate rule id " + std::to_string(rule.id));
    rule.name = jr.at("name").get<std::string>();
    std::string order = jr.at("order").get<std::string>();
    if (order == "lower")
      rule.order = OrderClass::lower;
    else if (order == "higher")
      rule.order = OrderClass::higher;
    else
      throw KbError("rule " + std::to_string(rule.id) +
                    ": unknown order class '" + order + "'");
    for (const auto& jc : jr.at("clauses")) {
      TheoremClause clause;
      for (const auto& p : jc.at("premise"))
        clause.premise.push_back(parse_literal(p.get<std::string>(), reg));
      for (const auto& c : jc.at("conclusions"))
        clause.conclusions.push_back(parse_literal(c.get<std::string>(), reg));
      rule.clauses.push_back(std::move(clause));
    }
    validate_rule(rule, reg);
    if (rule.order == OrderClass::lower)
      kb.lower.push_back(std::move(rule));
    else
      kb.higher.push_back(std::move(rule));
  }
  auto by_id = [](const TheoremRule& a, const TheoremRule& b) {
    return a.id < b.id;
  };
  std::sort(kb.lower.begin(), kb.lower.end(), by_id);
  std::sort(kb.higher.begin(), kb.higher.end(), by_id);
  return kb;
}

inline KnowledgeBase load_kb(const std::string& path,
                             const Registry& reg = builtin_registry()) {
  std::ifstream in(path);
  if (!in) throw KbError("cannot open knowledge base file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw KbError(std::string("malformed knowledge base file: ") + e.what());
  }
  return load_kb_json(j, reg);
}

// Applies one theorem across all premise bindings of all clauses.
// Clauses run in order and later clauses see earlier additions, so a rule
// can normalize a relation and then use it within one application.
inline bool apply_theorem(const TheoremRule& rule, RelationSet& r) {
  bool changed = false;
  std::string context = "rule " + std::to_string(rule.id) + " [" + rule.name + "]";
  for (const auto& clause : rule.clauses) {
    auto bindings = r.match_premise(clause.premise);
    for (const auto& b : bindings)
      changed |= r.add_conclusion(clause.conclusions, b, context);
  }
  if (changed) r.expand_definitions();
  return changed;
}

}  // namespace symgeo
