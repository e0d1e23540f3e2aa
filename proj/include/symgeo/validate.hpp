// Structural validation of literals against the registry.  Violations are
// reported as data, not thrown: callers that assemble literals from rules
// or datasets inspect the report and quarantine offenders.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "symgeo/literal.hpp"
#include "symgeo/parse.hpp"
#include "symgeo/registry.hpp"

namespace symgeo {

enum class IssueCode {
  unknown_predicate,
  arity_mismatch,
  sort_mismatch,
  not_ground,
  bad_number,
};

struct ValidationIssue {
  IssueCode code;
  std::string path;  // e.g. "Equals/arg1/Line"
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

namespace detail {

inline void validate_rec(const Literal& l, const Registry& reg,
                         bool require_ground, const std::string& path,
                         ValidationReport& rep) {
  const Predicate* pred = reg.find(l.head());
  std::string here = path.empty() ? l.head() : path + "/" + l.head();
  if (!pred) {
    rep.issues.push_back({IssueCode::unknown_predicate, here,
                          "unknown predicate '" + l.head() + "'"});
    return;
  }
  const Form* form = pred->form_for_arity(l.arity());
  if (!form) {
    std::string allowed;
    for (const auto& f : pred->forms) {
      if (!allowed.empty()) allowed += "/";
      allowed += std::to_string(f.min_arity);
      if (f.max_arity < 0)
        allowed += "+";
      else if (f.max_arity != f.min_arity)
        allowed += ".." + std::to_string(f.max_arity);
    }
    rep.issues.push_back({IssueCode::arity_mismatch, here,
                          l.head() + " applied to " +
                              std::to_string(l.arity()) +
                              " arguments (expects " + allowed + ")"});
    // Still descend so nested problems surface too.
    for (std::size_t i = 0; i < l.arity(); ++i)
      if (l.arg(i).is_literal())
        validate_rec(l.arg(i).as_literal(), reg, require_ground,
                     here + "/arg" + std::to_string(i + 1), rep);
    return;
  }
  for (std::size_t i = 0; i < l.arity(); ++i) {
    const Term& a = l.arg(i);
    std::string apath = here + "/arg" + std::to_string(i + 1);
    Sort s = form->sort_at(i, l.arity());
    if (a.is_slot()) {
      if (require_ground)
        rep.issues.push_back({IssueCode::not_ground, apath,
                              "pattern slot '" + a.text() +
                                  "' in ground literal"});
      continue;
    }
    Term checked = a;
    if (a.is_variable() && sort_is_name_position(s))
      checked = Term::identifier(a.text());
    if (!sort_accepts(s, checked, reg))
      rep.issues.push_back(
          {IssueCode::sort_mismatch, apath,
           "argument " + std::to_string(i + 1) + " of " + l.head() +
               " violates sort " + to_string(s)});
    if (a.is_number() && !std::isfinite(a.as_number()))
      rep.issues.push_back(
          {IssueCode::bad_number, apath, "non-finite number"});
    if (a.is_literal())
      validate_rec(a.as_literal(), reg, require_ground, apath, rep);
  }
}

}  // namespace detail

// Pattern-mode validation: slots allowed anywhere.
inline ValidationReport validate_pattern(const Literal& l,
                                         const Registry& reg) {
  ValidationReport rep;
  detail::validate_rec(l, reg, /*require_ground=*/false, "", rep);
  return rep;
}

// Ground-mode validation: additionally flags pattern slots.
inline ValidationReport validate_literal(const Literal& l,
                                         const Registry& reg) {
  ValidationReport rep;
  detail::validate_rec(l, reg, /*require_ground=*/true, "", rep);
  return rep;
}

inline ValidationReport validate_literal(const Literal& l) {
  return validate_literal(l, builtin_registry());
}

}  // namespace symgeo
