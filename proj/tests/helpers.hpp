// Shared test utilities: a random well-formed literal generator driven by
// the registry, a generator for small matching instances, and a brute-force
// premise-matching oracle that implements the binding contract directly
// (enumerate injective identifier substitutions, keep those whose
// instantiated premise lies in the set after normalization, deduplicate per
// instantiated-premise class keeping the lexicographically smallest).

#pragma once

#include <set>
#include <string>
#include <vector>

#include "symgeo/relation_set.hpp"
#include "symgeo/rng.hpp"

namespace symgeo::testing {

inline std::string random_point(Rng& rng) {
  return std::string(1, static_cast<char>('A' + rng.below(8)));
}

inline Literal random_shape_literal(Rng& rng, int depth);

inline Term random_numeric_term(Rng& rng, int depth) {
  switch (rng.below(depth > 0 ? 4 : 2)) {
    case 0: {
      double v = static_cast<double>(static_cast<int>(rng.below(200))) - 100;
      if (rng.below(3) == 0) v += 0.5;
      return Term::number(v);
    }
    case 1: {
      const char* vars[] = {"x", "y", "z"};
      return Term::variable(vars[rng.below(3)]);
    }
    case 2: {
      // measurable attribute over a shape
      const char* heads[] = {"LengthOf", "MeasureOf", "AreaOf", "RadiusOf"};
      std::string h = heads[rng.below(4)];
      Literal inner = h == "MeasureOf"
                          ? Literal("Angle", {Term::identifier(random_point(rng)),
                                              Term::identifier(random_point(rng)),
                                              Term::identifier(random_point(rng))})
                          : (h == "LengthOf"
                                 ? Literal("Line",
                                           {Term::identifier(random_point(rng)),
                                            Term::identifier(random_point(rng))})
                                 : Literal("Circle",
                                           {Term::identifier(random_point(rng))}));
      return Term::literal(Literal(h, {Term::literal(std::move(inner))}));
    }
    default: {
      const char* ops[] = {"Add", "Mul", "Sub", "Div", "SumOf"};
      std::string h = ops[rng.below(5)];
      return Term::literal(Literal(h, {random_numeric_term(rng, depth - 1),
                                       random_numeric_term(rng, depth - 1)}));
    }
  }
}

inline Literal random_shape_literal(Rng& rng, int depth) {
  (void)depth;
  switch (rng.below(7)) {
    case 0:
      return Literal("Line", {Term::identifier(random_point(rng)),
                              Term::identifier(random_point(rng))});
    case 1:
      return Literal("Angle", {Term::identifier(random_point(rng)),
                               Term::identifier(random_point(rng)),
                               Term::identifier(random_point(rng))});
    case 2:
      return Literal("Triangle", {Term::identifier(random_point(rng)),
                                  Term::identifier(random_point(rng)),
                                  Term::identifier(random_point(rng))});
    case 3:
      return Literal("Circle", {Term::identifier(random_point(rng))});
    case 4:
      return Literal("Arc", {Term::identifier(random_point(rng)),
                             Term::identifier(random_point(rng))});
    case 5:
      return Literal("Quadrilateral", {Term::identifier(random_point(rng)),
                                       Term::identifier(random_point(rng)),
                                       Term::identifier(random_point(rng)),
                                       Term::identifier(random_point(rng))});
    default:
      return Literal("Shape", {Term::identifier(random_point(rng))});
  }
}

// A random well-formed ground literal for one registry predicate.
inline Term term_for_sort(Sort s, Rng& rng, int depth) {
  switch (s) {
    case Sort::point: return Term::identifier(random_point(rng));
    case Sort::name:
      return rng.below(2) ? Term::identifier(random_point(rng))
                          : Term::number(static_cast<double>(rng.below(5)));
    case Sort::line_ref:
      return Term::literal(Literal("Line", {Term::identifier(random_point(rng)),
                                            Term::identifier(random_point(rng))}));
    case Sort::angle_ref:
      return Term::literal(
          Literal("Angle", {Term::identifier(random_point(rng)),
                            Term::identifier(random_point(rng)),
                            Term::identifier(random_point(rng))}));
    case Sort::circle_ref:
      return Term::literal(Literal("Circle", {Term::identifier(random_point(rng))}));
    case Sort::arc_ref:
      return Term::literal(Literal("Arc", {Term::identifier(random_point(rng)),
                                           Term::identifier(random_point(rng))}));
    case Sort::triangle_ref:
      return Term::literal(
          Literal("Triangle", {Term::identifier(random_point(rng)),
                               Term::identifier(random_point(rng)),
                               Term::identifier(random_point(rng))}));
    case Sort::quad_ref:
    case Sort::trapezoid_ref: {
      std::string head = s == Sort::trapezoid_ref ? "Trapezoid" : "Rectangle";
      return Term::literal(Literal(head, {Term::identifier(random_point(rng)),
                                          Term::identifier(random_point(rng)),
                                          Term::identifier(random_point(rng)),
                                          Term::identifier(random_point(rng))}));
    }
    case Sort::polygon_ref:
      return Term::literal(
          Literal("Triangle", {Term::identifier(random_point(rng)),
                               Term::identifier(random_point(rng)),
                               Term::identifier(random_point(rng))}));
    case Sort::shape_ref:
    case Sort::measurable_ref:
      return Term::literal(random_shape_literal(rng, depth));
    case Sort::numeric: return random_numeric_term(rng, depth);
    case Sort::any: return random_numeric_term(rng, depth);
  }
  return Term::identifier("A");
}

inline Literal random_literal_for(const Predicate& pred, Rng& rng,
                                  int depth = 2) {
  const Form& form = pred.forms[rng.below(pred.forms.size())];
  std::size_t arity;
  if (form.max_arity < 0) {
    arity = static_cast<std::size_t>(form.min_arity + rng.below(3));
  } else {
    arity = static_cast<std::size_t>(
        form.min_arity +
        rng.below(static_cast<std::uint64_t>(form.max_arity - form.min_arity) +
                  1));
  }
  std::vector<Term> args;
  for (std::size_t i = 0; i < arity; ++i)
    args.push_back(term_for_sort(form.sort_at(i, arity), rng, depth - 1));
  // Congruent/Similar pair up polygons of the same head and arity.
  if (pred.symmetry == Symmetry::joint_pair) {
    Term first = term_for_sort(Sort::polygon_ref, rng, depth - 1);
    const Literal& fl = first.as_literal();
    std::vector<Term> second_args;
    for (std::size_t i = 0; i < fl.arity(); ++i)
      second_args.push_back(Term::identifier(random_point(rng)));
    args = {first, Term::literal(fl.with_args(std::move(second_args)))};
  }
  return Literal(pred.name, std::move(args));
}

inline Literal random_literal(Rng& rng,
                              const Registry& reg = builtin_registry()) {
  const auto& preds = reg.predicates();
  return random_literal_for(preds[rng.below(preds.size())], rng);
}

// --- brute-force matching oracle -------------------------------------------

inline void collect_slot_names(const Literal& l, std::set<std::string>& out) {
  for (const auto& a : l.args()) {
    if (a.is_slot()) out.insert(a.text());
    if (a.is_literal()) collect_slot_names(a.as_literal(), out);
  }
}

inline void collect_identifiers(const Literal& l, std::set<std::string>& out) {
  for (const auto& a : l.args()) {
    if (a.is_identifier()) out.insert(a.text());
    if (a.is_literal()) collect_identifiers(a.as_literal(), out);
  }
}

inline std::vector<Binding> brute_force_match(
    const std::vector<Literal>& premise, const RelationSet& r) {
  const Registry& reg = r.registry();
  std::set<std::string> slot_set;
  for (const auto& p : premise) collect_slot_names(p, slot_set);
  std::vector<std::string> slots(slot_set.begin(), slot_set.end());
  std::set<std::string> ident_set;
  for (const auto& l : r.literals()) collect_identifiers(l, ident_set);
  std::vector<std::string> idents(ident_set.begin(), ident_set.end());

  std::vector<Binding> found;
  std::vector<int> choice(slots.size(), -1);
  std::function<void(std::size_t)> dfs = [&](std::size_t k) {
    if (k == slots.size()) {
      Binding b;
      for (std::size_t i = 0; i < slots.size(); ++i)
        b.slots.emplace(slots[i], Term::identifier(idents[choice[i]]));
      for (const auto& p : premise) {
        bool missing = false;
        Literal inst = detail::substitute_literal(p, b, &missing);
        if (missing || !r.contains(inst)) return;
      }
      found.push_back(std::move(b));
      return;
    }
    for (std::size_t i = 0; i < idents.size(); ++i) {
      bool taken = false;
      for (std::size_t prev = 0; prev < k; ++prev)
        if (choice[prev] == static_cast<int>(i)) taken = true;
      if (taken) continue;  // injective
      choice[k] = static_cast<int>(i);
      dfs(k + 1);
      choice[k] = -1;
    }
  };
  dfs(0);

  std::sort(found.begin(), found.end());
  std::vector<Binding> out;
  std::set<std::string> seen;
  for (auto& b : found) {
    std::vector<std::string> inst;
    for (const auto& p : premise) {
      bool missing = false;
      Literal il = detail::substitute_literal(p, b, &missing);
      inst.push_back(serialize_literal(normalize_literal(il, reg)));
    }
    std::sort(inst.begin(), inst.end());
    std::string key;
    for (auto& s : inst) key += s + ";";
    if (seen.insert(key).second) out.push_back(std::move(b));
  }
  return out;
}

// Random small matching instance: a relation set over a small identifier
// pool plus premise patterns obtained by abstracting some identifiers of
// member literals into shared slots.
struct MatchInstance {
  std::vector<Literal> ground;
  std::vector<Literal> premise;
};

inline MatchInstance random_match_instance(Rng& rng) {
  MatchInstance inst;
  auto pt = [&] {
    return Term::identifier(std::string(1, static_cast<char>('A' + rng.below(5))));
  };
  std::size_t n = 3 + rng.below(6);  // |R| <= 8
  for (std::size_t i = 0; i < n; ++i) {
    switch (rng.below(8)) {
      case 0: inst.ground.emplace_back("Line", std::vector<Term>{pt(), pt()}); break;
      case 1:
        inst.ground.emplace_back("Angle", std::vector<Term>{pt(), pt(), pt()});
        break;
      case 2:
        inst.ground.emplace_back("Triangle",
                                 std::vector<Term>{pt(), pt(), pt()});
        break;
      case 3:
        inst.ground.emplace_back("Circle", std::vector<Term>{pt()});
        break;
      case 4:
        inst.ground.emplace_back(
            "PointLiesOnLine",
            std::vector<Term>{pt(), Term::literal(Literal(
                                        "Line", std::vector<Term>{pt(), pt()}))});
        break;
      case 5:
        inst.ground.emplace_back(
            "PointLiesOnCircle",
            std::vector<Term>{pt(), Term::literal(Literal(
                                        "Circle", std::vector<Term>{pt()}))});
        break;
      case 6:
        inst.ground.emplace_back(
            "Parallel",
            std::vector<Term>{
                Term::literal(Literal("Line", std::vector<Term>{pt(), pt()})),
                Term::literal(Literal("Line", std::vector<Term>{pt(), pt()}))});
        break;
      default:
        inst.ground.emplace_back("Quadrilateral",
                                 std::vector<Term>{pt(), pt(), pt(), pt()});
        break;
    }
  }
  // Abstract a few identifiers into slots, consistently across the premise.
  std::size_t m = 1 + rng.below(3);  // premise length <= 3
  std::set<std::string> chosen_idents;
  std::map<std::string, std::string> to_slot;
  std::vector<Literal> picked;
  for (std::size_t i = 0; i < m; ++i)
    picked.push_back(inst.ground[rng.below(inst.ground.size())]);
  std::set<std::string> occurring;
  for (const auto& l : picked) collect_identifiers(l, occurring);
  int slot_no = 1;
  for (const auto& id : occurring)
    if (rng.below(2)) to_slot[id] = "$" + std::to_string(slot_no++);
  std::function<Literal(const Literal&)> abstract = [&](const Literal& l) {
    std::vector<Term> args;
    for (const auto& a : l.args()) {
      if (a.is_identifier() && to_slot.count(a.text()))
        args.push_back(Term::slot(to_slot[a.text()]));
      else if (a.is_literal())
        args.push_back(Term::literal(abstract(a.as_literal())));
      else
        args.push_back(a);
    }
    return Literal(l.head(), std::move(args));
  };
  for (const auto& l : picked) inst.premise.push_back(abstract(l));
  return inst;
}

}  // namespace symgeo::testing
