// The relation set: the solver's world state.  Holds canonicalized ground
// literals plus the mirrored equation system over measurable terms, with
// monotone growth (nothing is ever removed).  Also provides premise
// matching (pattern unification modulo argument symmetry) and definitional
// expansion of shapes into their constituents.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "symgeo/algebra.hpp"
#include "symgeo/equation_solver.hpp"
#include "symgeo/normalize.hpp"
#include "symgeo/parse.hpp"
#include "symgeo/validate.hpp"

namespace symgeo {

class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RuleInstantiationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A substitution from pattern slots to ground terms.  Distinct slots bind
// distinct terms (injective).
struct Binding {
  std::map<std::string, Term> slots;

  bool bind(const std::string& slot, const Term& value) {
    auto it = slots.find(slot);
    if (it != slots.end()) return it->second == value;
    for (const auto& [s, v] : slots)
      if (v == value) return false;  // injectivity
    slots.emplace(slot, value);
    return true;
  }

  const Term* lookup(const std::string& slot) const {
    auto it = slots.find(slot);
    return it == slots.end() ? nullptr : &it->second;
  }

  std::string repr() const {
    std::string out;
    for (const auto& [s, v] : slots) {
      if (!out.empty()) out += ",";
      out += s + "=" + serialize_term(v);
    }
    return out;
  }

  friend bool operator<(const Binding& a, const Binding& b) {
    return a.slots < b.slots;
  }
  friend bool operator==(const Binding& a, const Binding& b) {
    return a.slots == b.slots;
  }
};

namespace detail {

inline bool has_slots(const Term& t) { return !t.is_ground(); }

inline Term substitute_term(const Term& t, const Binding& b, bool* missing);

inline Literal substitute_literal(const Literal& l, const Binding& b,
                                  bool* missing) {
  std::vector<Term> args;
  args.reserve(l.arity());
  for (const auto& a : l.args()) args.push_back(substitute_term(a, b, missing));
  return Literal(l.head(), std::move(args));
}

inline Term substitute_term(const Term& t, const Binding& b, bool* missing) {
  if (t.is_slot()) {
    if (const Term* v = b.lookup(t.text())) return *v;
    if (missing) *missing = true;
    return t;
  }
  if (t.is_literal())
    return Term::literal(substitute_literal(t.as_literal(), b, missing));
  return t;
}

// Strict structural unification of a pattern against one concrete spelling.
inline bool unify_exact(const Term& pat, const Term& ground, Binding& b);

inline bool unify_exact(const Literal& pat, const Literal& ground,
                        Binding& b) {
  if (pat.head() != ground.head() || pat.arity() != ground.arity())
    return false;
  for (std::size_t i = 0; i < pat.arity(); ++i)
    if (!unify_exact(pat.arg(i), ground.arg(i), b)) return false;
  return true;
}

inline bool unify_exact(const Term& pat, const Term& ground, Binding& b) {
  if (pat.is_slot()) return b.bind(pat.text(), ground);
  if (pat.kind() != ground.kind()) {
    // A pattern identifier can stand for the same point written with or
    // without a Point(...) wrapper; spellings already canonicalize that.
    return false;
  }
  if (pat.is_literal()) return unify_exact(pat.as_literal(), ground.as_literal(), b);
  return pat == ground;
}

}  // namespace detail

// Unify a pattern literal against a ground literal modulo the ground
// literal's argument symmetry.  Extensions of `base` are appended to `out`.
inline void unify_literal(const Literal& pattern, const Literal& ground,
                          const Binding& base, const Registry& reg,
                          std::vector<Binding>& out) {
  for (const auto& sp : spellings(ground, reg)) {
    Binding b = base;
    if (detail::unify_exact(pattern, sp, b)) out.push_back(std::move(b));
  }
}

struct VarInfo {
  std::string name;  // serialized canonical term
  VarDomain domain;
};

// Measurable-term table with union-find over equated terms.
class VarTable {
 public:
  int ensure(const std::string& name, VarDomain dom) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(vars_.size());
    vars_.push_back({name, dom});
    parent_.push_back(id);
    index_.emplace(name, id);
    return id;
  }

  std::optional<int> lookup(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  int find(int id) const {
    while (parent_[id] != id) id = parent_[id];
    return id;
  }

  void merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);  // keep the older id as representative
    parent_[b] = a;
    // Domains intersect on the representative.
    vars_[a].domain.lo = std::max(vars_[a].domain.lo, vars_[b].domain.lo);
    vars_[a].domain.hi = std::min(vars_[a].domain.hi, vars_[b].domain.hi);
  }

  int size() const { return static_cast<int>(vars_.size()); }
  const VarInfo& info(int id) const { return vars_[id]; }
  const std::map<std::string, int>& index() const { return index_; }

 private:
  std::vector<VarInfo> vars_;
  std::vector<int> parent_;
  std::map<std::string, int> index_;
};

inline VarDomain domain_for_term(const Term& t) {
  if (t.is_variable()) return VarDomain::free();
  if (!t.is_literal()) return VarDomain::free();
  const std::string& h = t.as_literal().head();
  if (h == "MeasureOf") {
    const Term& a = t.as_literal().arg(0);
    if (a.is_literal() && a.as_literal().head() == "Arc")
      return VarDomain::arc_deg();
    if (a.is_literal() && a.as_literal().head() == "Angle")
      return VarDomain::angle_deg();
    return VarDomain::free();
  }
  static const std::set<std::string> positive = {
      "LengthOf",  "AreaOf",       "PerimeterOf",     "RadiusOf",
      "DiameterOf", "CircumferenceOf", "AltitudeOf",  "HypotenuseOf",
      "SideOf",    "WidthOf",      "HeightOf",        "LegOf",
      "BaseOf",    "MedianOf",     "ScaleFactorOf"};
  if (positive.count(h)) return VarDomain::positive();
  return VarDomain::free();
}

class RelationSet {
 public:
  explicit RelationSet(const Registry& reg = builtin_registry())
      : reg_(&reg) {}

  const Registry& registry() const { return *reg_; }
  const std::set<Literal>& literals() const { return literals_; }
  const std::vector<Literal>& equations() const { return equations_; }
  const VarTable& vars() const { return vars_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  bool contains(const Literal& l) const {
    return literals_.count(normalize_literal(l, *reg_)) > 0;
  }

  // Inserts a normalized copy of `l`; returns true when the set grew.
  // Throws std::invalid_argument if the literal is not well-formed.
  bool insert(const Literal& l) {
    Literal n = normalize_literal(l, *reg_);
    auto rep = validate_literal(n, *reg_);
    if (!rep.ok())
      throw std::invalid_argument("invalid literal " + serialize_literal(n) +
                                  ": " + rep.issues.front().message);
    return insert_normalized(n);
  }

  // Lenient insert used by definitional expansion: invalid instantiations
  // are skipped with a warning instead of thrown.
  bool insert_lenient(const Literal& l) {
    Literal n = normalize_literal(l, *reg_);
    auto rep = validate_literal(n, *reg_);
    if (!rep.ok()) {
      warnings_.push_back("skipped ill-formed literal " +
                          serialize_literal(n));
      return false;
    }
    return insert_normalized(n);
  }

  int ensure_var(const Term& t) {
    Term n = t.is_literal()
                 ? Term::literal(normalize_literal(t.as_literal(), *reg_))
                 : t;
    return vars_.ensure(serialize_term(n), domain_for_term(n));
  }

  std::optional<int> var_of(const Term& t) const {
    Term n = t.is_literal()
                 ? Term::literal(normalize_literal(t.as_literal(), *reg_))
                 : t;
    auto id = vars_.lookup(serialize_term(n));
    if (!id) return std::nullopt;
    return vars_.find(*id);
  }

  // Registers the goal term: a measurable term maps onto its variable; an
  // arithmetic expression gets a synthetic variable tied by an equation.
  int register_goal(const Term& goal) {
    register_measurables(goal);
    if (is_measurable_term(goal, *reg_)) return ensure_var(goal);
    int gid = vars_.ensure("goal:" + serialize_term(goal), VarDomain::free());
    goal_exprs_.emplace_back(gid, goal);
    return gid;
  }

  // Sorted, human-readable dump: literals first, then mirrored equations.
  std::string dump() const {
    std::ostringstream out;
    for (const auto& l : literals_) out << serialize_literal(l) << "\n";
    std::vector<std::string> eqs;
    for (const auto& e : equations_) eqs.push_back(serialize_literal(e));
    std::sort(eqs.begin(), eqs.end());
    out << "-- equations --\n";
    for (const auto& e : eqs) out << e << "\n";
    return out.str();
  }

  std::size_t literal_count() const { return literals_.size(); }
  std::size_t equation_count() const { return equations_.size(); }

  // --- solving -----------------------------------------------------------

  SolveResult solve(const Term& goal) const {
    int num = vars_.size();
    std::vector<VarDomain> domains(static_cast<std::size_t>(num));
    for (int i = 0; i < num; ++i) domains[i] = vars_.info(vars_.find(i)).domain;

    auto resolve = [this](const Term& t) -> int {
      Term n = t.is_literal()
                   ? Term::literal(normalize_literal(t.as_literal(), *reg_))
                   : t;
      auto id = vars_.lookup(serialize_term(n));
      if (!id)
        throw std::logic_error("unregistered measurable term: " +
                               serialize_term(n));
      return vars_.find(*id);
    };

    std::vector<SystemEquation> sys;
    for (const auto& eq : equations_) {
      Expr lhs = compile_numeric(eq.arg(0), *reg_, resolve);
      Expr rhs = compile_numeric(eq.arg(1), *reg_, resolve);
      sys.push_back({Expr::sub(std::move(lhs), std::move(rhs)),
                     serialize_literal(eq)});
    }
    for (const auto& [gid, gterm] : goal_exprs_) {
      Expr e = compile_numeric(gterm, *reg_, resolve);
      sys.push_back({Expr::sub(Expr::variable(vars_.find(gid)), std::move(e)),
                     "goal:" + serialize_term(gterm)});
    }

    int goal_var = -1;
    if (is_measurable_term(goal, *reg_)) {
      auto id = var_of(goal);
      if (!id)
        throw std::logic_error("goal term not registered: " +
                               serialize_term(goal));
      goal_var = *id;
    } else {
      auto id = vars_.lookup("goal:" + serialize_term(goal));
      if (!id)
        throw std::logic_error("goal expression not registered: " +
                               serialize_term(goal));
      goal_var = vars_.find(*id);
    }
    return solve_system(sys, domains, goal_var, num);
  }

  // Residuals of every fully-determined equation under an assignment.
  double max_satisfied_residual(const std::vector<double>& assignment) const {
    double worst = 0;
    auto resolve = [this](const Term& t) -> int {
      Term n = t.is_literal()
                   ? Term::literal(normalize_literal(t.as_literal(), *reg_))
                   : t;
      auto id = vars_.lookup(serialize_term(n));
      return id ? vars_.find(*id) : -1;
    };
    for (const auto& eq : equations_) {
      Expr r = Expr::sub(compile_numeric(eq.arg(0), *reg_, resolve),
                         compile_numeric(eq.arg(1), *reg_, resolve));
      std::set<int> vars;
      collect_vars(r, vars);
      bool determined = true;
      for (int v : vars)
        if (v < 0 || v >= static_cast<int>(assignment.size()) ||
            std::isnan(assignment[v]))
          determined = false;
      if (!determined) continue;
      double res = std::fabs(eval_expr(r, assignment));
      if (!std::isnan(res)) worst = std::max(worst, res);
    }
    return worst;
  }

  // --- matching ----------------------------------------------------------

  // All bindings under which every premise literal instantiates (modulo
  // symmetry) to a member of the set.  Bindings are deduplicated per
  // instantiated-premise class keeping the lexicographically smallest, and
  // returned in lexicographic order.
  std::vector<Binding> match_premise(const std::vector<Literal>& premise) const {
    std::vector<Binding> found;
    Binding empty;
    match_rec(premise, 0, empty, found);
    std::sort(found.begin(), found.end());
    std::vector<Binding> out;
    std::set<std::string> seen;
    for (auto& b : found) {
      std::vector<std::string> inst;
      for (const auto& p : premise) {
        bool missing = false;
        Literal il = detail::substitute_literal(p, b, &missing);
        inst.push_back(serialize_literal(normalize_literal(il, *reg_)));
      }
      std::sort(inst.begin(), inst.end());
      std::string key;
      for (auto& s : inst) key += s + ";";
      if (seen.insert(key).second) out.push_back(std::move(b));
    }
    return out;
  }

  // Adds instantiated conclusions under `binding`.  Returns true when the
  // set changed.  Structural template errors (unknown predicate, arity)
  // throw RuleInstantiationError tagged with `context`; sort violations
  // caused by label-valued bindings skip the literal.
  bool add_conclusion(const std::vector<Literal>& conclusions,
                      const Binding& binding, const std::string& context) {
    bool changed = false;
    for (const auto& c : conclusions) {
      bool missing = false;
      Literal inst = detail::substitute_literal(c, binding, &missing);
      if (missing)
        throw RuleInstantiationError(context + ": conclusion " +
                                     serialize_literal(c) +
                                     " has unbound slots");
      Literal n = normalize_literal(inst, *reg_);
      auto rep = validate_literal(n, *reg_);
      if (!rep.ok()) {
        bool structural = false;
        for (const auto& issue : rep.issues)
          if (issue.code == IssueCode::unknown_predicate ||
              issue.code == IssueCode::arity_mismatch ||
              issue.code == IssueCode::not_ground)
            structural = true;
        if (structural)
          throw RuleInstantiationError(context + ": ill-formed conclusion " +
                                       serialize_literal(n) + ": " +
                                       rep.issues.front().message);
        continue;  // label-dependent sort mismatch: not applicable here
      }
      changed |= insert_normalized(n);
    }
    return changed;
  }

  // --- definitional expansion ---------------------------------------------

  // Fixpoint of shape-definition rules plus hoisting of ground shape
  // literals mentioned inside other literals.  Idempotent; only adds.
  bool expand_definitions();

 private:
  struct DefRule {
    std::vector<Literal> premise;
    std::vector<Literal> conclusions;
  };
  static const std::vector<DefRule>& definition_rules(const Registry& reg);

  void match_rec(const std::vector<Literal>& premise, std::size_t i,
                 const Binding& b, std::vector<Binding>& out) const {
    if (i == premise.size()) {
      out.push_back(b);
      return;
    }
    bool missing = false;
    Literal pat = detail::substitute_literal(premise[i], b, &missing);
    if (!missing) {
      if (contains(pat)) match_rec(premise, i + 1, b, out);
      return;
    }
    for (const auto& g : literals_) {
      if (g.head() != pat.head() || g.arity() != pat.arity()) continue;
      std::vector<Binding> exts;
      unify_literal(pat, g, b, *reg_, exts);
      std::sort(exts.begin(), exts.end());
      exts.erase(std::unique(exts.begin(), exts.end()), exts.end());
      for (const auto& e : exts) match_rec(premise, i + 1, e, out);
    }
  }

  bool insert_normalized(const Literal& n) {
    auto [it, added] = literals_.insert(n);
    if (!added) return false;
    register_measurables_in_literal(n);
    if (n.head() == "Equals") {
      std::string key = serialize_literal(n);
      if (equation_keys_.insert(key).second) {
        equations_.push_back(n);
        if (is_measurable_term(n.arg(0), *reg_) &&
            is_measurable_term(n.arg(1), *reg_)) {
          int a = ensure_var(n.arg(0));
          int b = ensure_var(n.arg(1));
          vars_.merge(a, b);
        }
      }
    }
    return true;
  }

  void register_measurables(const Term& t) {
    if (is_measurable_term(t, *reg_)) ensure_var(t);
    if (t.is_literal())
      for (const auto& a : t.as_literal().args()) register_measurables(a);
  }

  void register_measurables_in_literal(const Literal& l) {
    for (const auto& a : l.args()) register_measurables(a);
  }

  // Ground shape literals nested anywhere inside `l` (candidates for
  // hoisting into the set).
  void nested_shapes(const Literal& l, std::vector<Literal>& out) const {
    for (const auto& a : l.args()) {
      if (!a.is_literal()) continue;
      const Literal& sub = a.as_literal();
      const Predicate* p = reg_->find(sub.head());
      if (p && p->category == Category::shape && sub.is_ground() &&
          sub.head() != "Point")
        out.push_back(sub);
      nested_shapes(sub, out);
    }
  }

  const Registry* reg_;
  std::set<Literal> literals_;
  std::vector<Literal> equations_;
  std::set<std::string> equation_keys_;
  VarTable vars_;
  std::vector<std::pair<int, Term>> goal_exprs_;
  std::vector<std::string> warnings_;

  friend RelationSet init_relation_set(const std::vector<Literal>&,
                                       const Registry&);
};

// --- definition table ------------------------------------------------------

inline const std::vector<RelationSet::DefRule>& RelationSet::definition_rules(
    const Registry& reg) {
  struct Spec {
    const char* premise;
    std::vector<const char*> conclusions;
  };
  // Shape definitions: constituents plus defining constraints.
  static const std::vector<Spec> specs = {
      {"Line($1,$2)", {"Point($1)", "Point($2)"}},
      {"Angle($1,$2,$3)",
       {"Point($1)", "Point($2)", "Point($3)", "Line($1,$2)", "Line($2,$3)"}},
      {"Triangle($1,$2,$3)",
       {"Point($1)", "Point($2)", "Point($3)", "Line($1,$2)", "Line($2,$3)",
        "Line($3,$1)"}},
      {"Quadrilateral($1,$2,$3,$4)",
       {"Point($1)", "Point($2)", "Point($3)", "Point($4)", "Line($1,$2)",
        "Line($2,$3)", "Line($3,$4)", "Line($4,$1)"}},
      {"Parallelogram($1,$2,$3,$4)",
       {"Quadrilateral($1,$2,$3,$4)", "Parallel(Line($1,$2),Line($3,$4))",
        "Parallel(Line($2,$3),Line($4,$1))"}},
      {"Rectangle($1,$2,$3,$4)",
       {"Parallelogram($1,$2,$3,$4)", "RightAngle(Angle($1,$2,$3))",
        "RightAngle(Angle($2,$3,$4))", "RightAngle(Angle($3,$4,$1))",
        "RightAngle(Angle($4,$1,$2))",
        "Equals(MeasureOf(Angle($1,$2,$3)),90)",
        "Equals(MeasureOf(Angle($2,$3,$4)),90)",
        "Equals(MeasureOf(Angle($3,$4,$1)),90)",
        "Equals(MeasureOf(Angle($4,$1,$2)),90)"}},
      {"Rhombus($1,$2,$3,$4)",
       {"Parallelogram($1,$2,$3,$4)",
        "Equals(LengthOf(Line($1,$2)),LengthOf(Line($2,$3)))",
        "Equals(LengthOf(Line($2,$3)),LengthOf(Line($3,$4)))",
        "Equals(LengthOf(Line($3,$4)),LengthOf(Line($4,$1)))"}},
      {"Square($1,$2,$3,$4)",
       {"Rectangle($1,$2,$3,$4)", "Rhombus($1,$2,$3,$4)"}},
      {"Trapezoid($1,$2,$3,$4)", {"Quadrilateral($1,$2,$3,$4)"}},
      {"Kite($1,$2,$3,$4)", {"Quadrilateral($1,$2,$3,$4)"}},
      {"Pentagon($1,$2,$3,$4,$5)",
       {"Point($1)", "Point($2)", "Point($3)", "Point($4)", "Point($5)",
        "Line($1,$2)", "Line($2,$3)", "Line($3,$4)", "Line($4,$5)",
        "Line($5,$1)"}},
      {"Hexagon($1,$2,$3,$4,$5,$6)",
       {"Line($1,$2)", "Line($2,$3)", "Line($3,$4)", "Line($4,$5)",
        "Line($5,$6)", "Line($6,$1)"}},
      {"Heptagon($1,$2,$3,$4,$5,$6,$7)",
       {"Line($1,$2)", "Line($2,$3)", "Line($3,$4)", "Line($4,$5)",
        "Line($5,$6)", "Line($6,$7)", "Line($7,$1)"}},
      {"Octagon($1,$2,$3,$4,$5,$6,$7,$8)",
       {"Line($1,$2)", "Line($2,$3)", "Line($3,$4)", "Line($4,$5)",
        "Line($5,$6)", "Line($6,$7)", "Line($7,$8)", "Line($8,$1)"}},
      {"Sector($1,$2,$3)",
       {"Point($1)", "Point($2)", "Point($3)", "Line($1,$2)", "Line($1,$3)",
        "Angle($2,$1,$3)"}},
      {"Arc($1,$2)", {"Point($1)", "Point($2)"}},
      {"Regular(Triangle($1,$2,$3))", {"Equilateral(Triangle($1,$2,$3))"}},
      {"Regular(Quadrilateral($1,$2,$3,$4))", {"Square($1,$2,$3,$4)"}},
      {"Regular(Pentagon($1,$2,$3,$4,$5))",
       {"Equals(MeasureOf(Angle($1,$2,$3)),108)",
        "Equals(MeasureOf(Angle($2,$3,$4)),108)",
        "Equals(MeasureOf(Angle($3,$4,$5)),108)",
        "Equals(MeasureOf(Angle($4,$5,$1)),108)",
        "Equals(MeasureOf(Angle($5,$1,$2)),108)",
        "Equals(LengthOf(Line($1,$2)),LengthOf(Line($2,$3)))",
        "Equals(LengthOf(Line($2,$3)),LengthOf(Line($3,$4)))",
        "Equals(LengthOf(Line($3,$4)),LengthOf(Line($4,$5)))",
        "Equals(LengthOf(Line($4,$5)),LengthOf(Line($5,$1)))"}},
      {"Regular(Hexagon($1,$2,$3,$4,$5,$6))",
       {"Equals(MeasureOf(Angle($1,$2,$3)),120)",
        "Equals(MeasureOf(Angle($2,$3,$4)),120)",
        "Equals(MeasureOf(Angle($3,$4,$5)),120)",
        "Equals(MeasureOf(Angle($4,$5,$6)),120)",
        "Equals(MeasureOf(Angle($5,$6,$1)),120)",
        "Equals(MeasureOf(Angle($6,$1,$2)),120)",
        "Equals(LengthOf(Line($1,$2)),LengthOf(Line($2,$3)))",
        "Equals(LengthOf(Line($2,$3)),LengthOf(Line($3,$4)))",
        "Equals(LengthOf(Line($3,$4)),LengthOf(Line($4,$5)))",
        "Equals(LengthOf(Line($4,$5)),LengthOf(Line($5,$6)))",
        "Equals(LengthOf(Line($5,$6)),LengthOf(Line($6,$1)))"}},
      {"Equilateral(Polygon($1,$2,$3))", {"Equilateral(Triangle($1,$2,$3))"}},
      // Betweenness: a point on a segment splits it additively.
      {"PointLiesOnLine($0,Line($1,$2))",
       {"Point($0)", "Line($1,$0)", "Line($0,$2)",
        "Equals(SumOf(LengthOf(Line($1,$0)),LengthOf(Line($0,$2))),"
        "LengthOf(Line($1,$2)))"}},
      {"PointLiesOnCircle($1,Circle($0))", {"Point($1)"}},
      {"IntersectAt(Line($1,$2),Line($3,$4),$5)",
       {"PointLiesOnLine($5,Line($1,$2))", "PointLiesOnLine($5,Line($3,$4))"}},
      {"IntersectAt(Line($1,$2),Line($3,$4),Line($5,$6),$7)",
       {"PointLiesOnLine($7,Line($1,$2))", "PointLiesOnLine($7,Line($3,$4))",
        "PointLiesOnLine($7,Line($5,$6))"}},
      {"IsMidpointOf($0,Line($1,$2))",
       {"PointLiesOnLine($0,Line($1,$2))",
        "Equals(LengthOf(Line($1,$0)),LengthOf(Line($0,$2)))"}},
      {"IsDiameterOf(Line($1,$2),Circle($0))",
       {"PointLiesOnCircle($1,Circle($0))", "PointLiesOnCircle($2,Circle($0))",
        "PointLiesOnLine($0,Line($1,$2))",
        "Equals(LengthOf(Line($1,$2)),DiameterOf(Circle($0)))"}},
      {"IsRadiusOf(Line($0,$1),Circle($0))",
       {"PointLiesOnCircle($1,Circle($0))"}},
      {"IsChordOf(Line($1,$2),Circle($0))",
       {"PointLiesOnCircle($1,Circle($0))",
        "PointLiesOnCircle($2,Circle($0))"}},
      {"InscribedIn(Triangle($1,$2,$3),Circle($0))",
       {"PointLiesOnCircle($1,Circle($0))", "PointLiesOnCircle($2,Circle($0))",
        "PointLiesOnCircle($3,Circle($0))"}},
      {"InscribedIn(Quadrilateral($1,$2,$3,$4),Circle($0))",
       {"PointLiesOnCircle($1,Circle($0))", "PointLiesOnCircle($2,Circle($0))",
        "PointLiesOnCircle($3,Circle($0))",
        "PointLiesOnCircle($4,Circle($0))"}},
      {"CircumscribedTo(Circle($0),Triangle($1,$2,$3))",
       {"InscribedIn(Triangle($1,$2,$3),Circle($0))"}},
      {"CircumscribedTo(Circle($0),Quadrilateral($1,$2,$3,$4))",
       {"InscribedIn(Quadrilateral($1,$2,$3,$4),Circle($0))"}},
      {"IsAltitudeOf(Line($1,$4),Triangle($1,$2,$3))",
       {"PointLiesOnLine($4,Line($2,$3))",
        "Perpendicular(Line($1,$4),Line($4,$2))",
        "Perpendicular(Line($1,$4),Line($4,$3))",
        "Equals(LengthOf(Line($1,$4)),AltitudeOf(Triangle($1,$2,$3)))"}},
      {"IsHypotenuseOf(Line($1,$2),Triangle($1,$2,$3))",
       {"RightAngle(Angle($1,$3,$2))",
        "Equals(LengthOf(Line($1,$2)),HypotenuseOf(Triangle($1,$2,$3)))"}},
      {"BisectsAngle(Line($1,$2),Angle($3,$1,$4))",
       {"Equals(MeasureOf(Angle($3,$1,$2)),MeasureOf(Angle($2,$1,$4)))"}},
  };

  static const std::vector<DefRule> rules = [&] {
    std::vector<DefRule> out;
    for (const auto& s : specs) {
      DefRule r;
      r.premise.push_back(parse_literal(s.premise, reg));
      for (const char* c : s.conclusions)
        r.conclusions.push_back(parse_literal(c, reg));
      out.push_back(std::move(r));
    }
    return out;
  }();
  return rules;
}

inline bool RelationSet::expand_definitions() {
  bool ever_changed = false;
  bool changed = true;
  while (changed) {
    changed = false;
    // Hoist shape literals mentioned inside other literals.
    std::vector<Literal> hoist;
    for (const auto& l : literals_) nested_shapes(l, hoist);
    for (const auto& h : hoist)
      if (!contains(h)) changed |= insert_lenient(h);
    // Apply definition rules.
    for (const auto& def : definition_rules(*reg_)) {
      auto bindings = match_premise(def.premise);
      for (const auto& b : bindings) {
        for (const auto& c : def.conclusions) {
          bool missing = false;
          Literal inst = detail::substitute_literal(c, b, &missing);
          if (missing) continue;
          changed |= insert_lenient(inst);
        }
      }
    }
    ever_changed |= changed;
  }
  return ever_changed;
}

// R0 from parsed literals.  Throws InconsistencyError when two direct
// numeric bindings contradict each other.
inline RelationSet init_relation_set(
    const std::vector<Literal>& literals,
    const Registry& reg = builtin_registry()) {
  RelationSet r(reg);
  for (const auto& l : literals) r.insert(l);
  // Detect directly contradictory numeric bindings.
  std::map<int, double> bound;
  for (const auto& eq : r.equations()) {
    const Term* num = nullptr;
    const Term* term = nullptr;
    if (eq.arg(0).is_number() && !eq.arg(1).is_number()) {
      num = &eq.arg(0);
      term = &eq.arg(1);
    } else if (eq.arg(1).is_number() && !eq.arg(0).is_number()) {
      num = &eq.arg(1);
      term = &eq.arg(0);
    } else {
      continue;
    }
    if (!is_measurable_term(*term, reg)) continue;
    auto id = r.var_of(*term);
    if (!id) continue;
    double v = num->as_number();
    auto [it, fresh] = bound.emplace(*id, v);
    if (!fresh && std::fabs(it->second - v) >
                      1e-9 * std::max(1.0, std::fabs(v)))
      throw InconsistencyError(
          "contradictory bindings for " + serialize_term(*term) + ": " +
          format_number(it->second) + " vs " + format_number(v));
  }
  return r;
}

// Spec-level convenience aliases.
inline RelationSet expand_definitions(RelationSet r) {
  r.expand_definitions();
  return r;
}

inline SolveResult solve_equations(const RelationSet& r, const Term& goal) {
  return r.solve(goal);
}

}  // namespace symgeo
