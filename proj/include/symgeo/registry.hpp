// Predicate registry: the 91 predicates of the geometry language, their
// argument sorts per arity form, category, argument-symmetry class used by
// canonicalization, and the value kind of the literal when used as a term.
//
// The registry is the single authority consulted by the parser, the
// validator and the normalizer.  A copy is shipped as data/predicates.json
// so the language definition can be audited without reading code.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "symgeo/literal.hpp"

namespace symgeo {

enum class Category {
  shape,
  unary_attribute,
  general_attribute,
  binary_relation,
  is_x_of_relation,
  numeric,
};

inline const char* to_string(Category c) {
  switch (c) {
    case Category::shape: return "shape";
    case Category::unary_attribute: return "unary-attribute";
    case Category::general_attribute: return "general-attribute";
    case Category::binary_relation: return "binary-relation";
    case Category::is_x_of_relation: return "is-x-of-relation";
    case Category::numeric: return "numeric";
  }
  return "?";
}

// Argument sorts.  A sort names the set of terms acceptable at a position.
enum class Sort {
  point,      // uppercase identifier naming a point (or a Point(...) wrapper)
  name,       // identifier or small integer label: Line(m), Angle(1), Circle(O)
  line_ref,   // Line literal
  angle_ref,  // Angle literal
  circle_ref, // Circle literal
  arc_ref,    // Arc literal
  triangle_ref,   // Triangle literal
  quad_ref,       // quadrilateral-family literal
  trapezoid_ref,  // Trapezoid literal
  polygon_ref,    // polygon-family literal (triangle and up)
  shape_ref,      // any shape literal, or an identifier/label naming one
  measurable_ref, // angle/arc/shape literal or label (argument of MeasureOf)
  numeric,    // number, variable, or a numeric-valued literal
  any,        // anything
};

inline const char* to_string(Sort s) {
  switch (s) {
    case Sort::point: return "point";
    case Sort::name: return "name";
    case Sort::line_ref: return "line";
    case Sort::angle_ref: return "angle";
    case Sort::circle_ref: return "circle";
    case Sort::arc_ref: return "arc";
    case Sort::triangle_ref: return "triangle";
    case Sort::quad_ref: return "quadrilateral";
    case Sort::trapezoid_ref: return "trapezoid";
    case Sort::polygon_ref: return "polygon";
    case Sort::shape_ref: return "shape";
    case Sort::measurable_ref: return "measurable";
    case Sort::numeric: return "numeric";
    case Sort::any: return "any";
  }
  return "?";
}

// Argument-order symmetry of a ground literal; drives canonicalization and
// match-time spelling enumeration.
enum class Symmetry {
  none,          // argument order is meaningful
  sort_args,     // fully commutative: sort arguments
  middle_fixed,  // Angle(A,B,C): vertex stays, endpoints may swap
  cycle,         // polygon vertex list: canonical under rotation+reflection
  joint_pair,    // Congruent/Similar: transform both polygons together
  lines_then_point,  // IntersectAt: line arguments commute, point stays last
};

inline const char* to_string(Symmetry s) {
  switch (s) {
    case Symmetry::none: return "none";
    case Symmetry::sort_args: return "sort";
    case Symmetry::middle_fixed: return "middle-fixed";
    case Symmetry::cycle: return "cycle";
    case Symmetry::joint_pair: return "joint-pair";
    case Symmetry::lines_then_point: return "lines-then-point";
  }
  return "?";
}

// What the literal denotes when it appears as an argument of another
// literal.
enum class ValueKind { statement, numeric_value, point_value, shape_value };

inline const char* to_string(ValueKind v) {
  switch (v) {
    case ValueKind::statement: return "statement";
    case ValueKind::numeric_value: return "numeric";
    case ValueKind::point_value: return "point";
    case ValueKind::shape_value: return "shape";
  }
  return "?";
}

// One accepted argument shape.  Fixed forms list one sort per position.
// Variadic forms repeat `rest` between `prefix` and `suffix`.
struct Form {
  int min_arity = 0;
  int max_arity = 0;  // -1 = unbounded
  std::vector<Sort> prefix;
  std::optional<Sort> rest;
  std::vector<Sort> suffix;

  static Form fixed(std::vector<Sort> sorts) {
    Form f;
    f.min_arity = f.max_arity = static_cast<int>(sorts.size());
    f.prefix = std::move(sorts);
    return f;
  }
  static Form variadic(int min, Sort rest, std::vector<Sort> suffix = {}) {
    Form f;
    f.min_arity = min;
    f.max_arity = -1;
    f.rest = rest;
    f.suffix = std::move(suffix);
    return f;
  }

  bool accepts_arity(std::size_t n) const {
    if (static_cast<int>(n) < min_arity) return false;
    if (max_arity >= 0 && static_cast<int>(n) > max_arity) return false;
    return true;
  }

  // Sort expected at position i of an n-argument application.
  Sort sort_at(std::size_t i, std::size_t n) const {
    if (i < prefix.size()) return prefix[i];
    std::size_t from_end = n - 1 - i;
    if (from_end < suffix.size())
      return suffix[suffix.size() - 1 - from_end];
    return rest.value_or(Sort::any);
  }
};

struct Predicate {
  std::string name;
  Category category = Category::shape;
  ValueKind value = ValueKind::statement;
  Symmetry symmetry = Symmetry::none;
  std::vector<Form> forms;
  std::vector<std::string> templates;  // documentation patterns

  const Form* form_for_arity(std::size_t n) const {
    for (const auto& f : forms)
      if (f.accepts_arity(n)) return &f;
    return nullptr;
  }
};

class Registry {
 public:
  static Registry builtin();

  const Predicate* find(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? nullptr : &preds_[it->second];
  }
  const Predicate& require(const std::string& name) const {
    const Predicate* p = find(name);
    if (!p) throw std::runtime_error("unknown predicate: " + name);
    return *p;
  }
  const std::vector<Predicate>& predicates() const { return preds_; }

  std::size_t count(Category c) const {
    std::size_t n = 0;
    for (const auto& p : preds_)
      if (p.category == c) ++n;
    return n;
  }

  void add(Predicate p) {
    if (by_name_.count(p.name))
      throw std::runtime_error("duplicate predicate: " + p.name);
    by_name_[p.name] = preds_.size();
    preds_.push_back(std::move(p));
  }

 private:
  std::vector<Predicate> preds_;
  std::map<std::string, std::size_t> by_name_;
};

// Process-wide default registry (read-only after first use).
inline const Registry& builtin_registry() {
  static const Registry reg = Registry::builtin();
  return reg;
}

namespace detail {

inline void add_vertex_shape(Registry& r, const std::string& name, int n,
                             std::vector<std::string> templates,
                             Symmetry sym = Symmetry::cycle) {
  Predicate p;
  p.name = name;
  p.category = Category::shape;
  p.value = ValueKind::shape_value;
  p.symmetry = sym;
  std::vector<Sort> pts(static_cast<std::size_t>(n), Sort::point);
  p.forms.push_back(Form::fixed(std::move(pts)));
  p.forms.push_back(Form::fixed({Sort::name}));
  p.templates = std::move(templates);
  r.add(std::move(p));
}

inline void add_unary_attr(Registry& r, const std::string& name, Sort arg,
                           std::string templ) {
  Predicate p;
  p.name = name;
  p.category = Category::unary_attribute;
  p.value = ValueKind::statement;
  p.forms.push_back(Form::fixed({arg}));
  p.templates.push_back(std::move(templ));
  r.add(std::move(p));
}

inline void add_general_attr(Registry& r, const std::string& name,
                             std::vector<Sort> args, ValueKind value,
                             std::string templ) {
  Predicate p;
  p.name = name;
  p.category = Category::general_attribute;
  p.value = value;
  p.forms.push_back(Form::fixed(std::move(args)));
  p.templates.push_back(std::move(templ));
  r.add(std::move(p));
}

inline void add_relation(Registry& r, Category cat, const std::string& name,
                         std::vector<Sort> args, std::string templ,
                         Symmetry sym = Symmetry::none) {
  Predicate p;
  p.name = name;
  p.category = cat;
  p.value = ValueKind::statement;
  p.symmetry = sym;
  p.forms.push_back(Form::fixed(std::move(args)));
  p.templates.push_back(std::move(templ));
  r.add(std::move(p));
}

inline void add_numeric_fn(Registry& r, const std::string& name, Form form,
                           std::string templ, Symmetry sym = Symmetry::none,
                           ValueKind value = ValueKind::numeric_value) {
  Predicate p;
  p.name = name;
  p.category = Category::numeric;
  p.value = value;
  p.symmetry = sym;
  p.forms.push_back(std::move(form));
  p.templates.push_back(std::move(templ));
  r.add(std::move(p));
}

}  // namespace detail

inline Registry Registry::builtin() {
  using namespace detail;
  Registry r;

  // --- geometric shapes (20) ---
  {
    Predicate p;
    p.name = "Point";
    p.category = Category::shape;
    p.value = ValueKind::point_value;
    p.forms.push_back(Form::fixed({Sort::point}));
    p.templates = {"Point(A)", "Point($)"};
    r.add(std::move(p));
  }
  {
    Predicate p;
    p.name = "Line";
    p.category = Category::shape;
    p.value = ValueKind::shape_value;
    p.symmetry = Symmetry::sort_args;
    p.forms.push_back(Form::fixed({Sort::point, Sort::point}));
    p.forms.push_back(Form::fixed({Sort::name}));
    p.templates = {"Line(A,B)", "Line(m)", "Line($)"};
    r.add(std::move(p));
  }
  {
    Predicate p;
    p.name = "Angle";
    p.category = Category::shape;
    p.value = ValueKind::shape_value;
    p.symmetry = Symmetry::middle_fixed;
    p.forms.push_back(Form::fixed({Sort::point, Sort::point, Sort::point}));
    p.forms.push_back(Form::fixed({Sort::name}));
    p.templates = {"Angle(A,B,C)", "Angle(A)", "Angle(1)", "Angle($)"};
    r.add(std::move(p));
  }
  add_vertex_shape(r, "Triangle", 3,
                   {"Triangle(A,B,C)", "Triangle($)", "Triangle($1,$2,$3)"},
                   Symmetry::sort_args);
  add_vertex_shape(r, "Quadrilateral", 4,
                   {"Quadrilateral(A,B,C,D)", "Quadrilateral(1)",
                    "Quadrilateral($)"});
  add_vertex_shape(r, "Parallelogram", 4,
                   {"Parallelogram(A,B,C,D)", "Parallelogram(1)",
                    "Parallelogram($)"});
  add_vertex_shape(r, "Square", 4, {"Square(A,B,C,D)", "Square(1)", "Square($)"});
  add_vertex_shape(r, "Rectangle", 4,
                   {"Rectangle(A,B,C,D)", "Rectangle(1)", "Rectangle($)"});
  add_vertex_shape(r, "Rhombus", 4,
                   {"Rhombus(A,B,C,D)", "Rhombus(1)", "Rhombus($)"});
  add_vertex_shape(r, "Trapezoid", 4,
                   {"Trapezoid(A,B,C,D)", "Trapezoid(1)", "Trapezoid($)"});
  add_vertex_shape(r, "Kite", 4, {"Kite(A,B,C,D)", "Kite(1)", "Kite($)"});
  {
    Predicate p;
    p.name = "Polygon";
    p.category = Category::shape;
    p.value = ValueKind::shape_value;
    p.symmetry = Symmetry::cycle;
    p.forms.push_back(Form::variadic(3, Sort::point));
    p.forms.push_back(Form::fixed({Sort::name}));
    p.templates = {"Polygon($)"};
    r.add(std::move(p));
  }
  add_vertex_shape(r, "Pentagon", 5, {"Pentagon(A,B,C,D,E)", "Pentagon($)"});
  add_vertex_shape(r, "Hexagon", 6, {"Hexagon(A,B,C,D,E,F)", "Hexagon($)"});
  add_vertex_shape(r, "Heptagon", 7,
                   {"Heptagon(A,B,C,D,E,F,G)", "Heptagon($)"});
  add_vertex_shape(r, "Octagon", 8,
                   {"Octagon(A,B,C,D,E,F,G,H)", "Octagon($)"});
  {
    Predicate p;
    p.name = "Circle";
    p.category = Category::shape;
    p.value = ValueKind::shape_value;
    p.forms.push_back(Form::fixed({Sort::name}));
    p.templates = {"Circle(A)", "Circle(1)", "Circle($)"};
    r.add(std::move(p));
  }
  {
    Predicate p;
    p.name = "Arc";
    p.category = Category::shape;
    p.value = ValueKind::shape_value;
    p.symmetry = Symmetry::middle_fixed;  // 2-point form sorts, 3-point keeps middle
    p.forms.push_back(Form::fixed({Sort::point, Sort::point}));
    p.forms.push_back(Form::fixed({Sort::point, Sort::point, Sort::point}));
    p.forms.push_back(Form::fixed({Sort::name}));
    p.templates = {"Arc(A,B)", "Arc(A,B,C)", "Arc($)"};
    r.add(std::move(p));
  }
  {
    Predicate p;
    p.name = "Sector";
    p.category = Category::shape;
    p.value = ValueKind::shape_value;
    p.forms.push_back(Form::fixed({Sort::point, Sort::point, Sort::point}));
    p.forms.push_back(Form::fixed({Sort::name}));
    p.templates = {"Sector(O,A,B)", "Sector($)"};
    r.add(std::move(p));
  }
  {
    Predicate p;
    p.name = "Shape";
    p.category = Category::shape;
    p.value = ValueKind::shape_value;
    p.forms.push_back(Form::fixed({Sort::name}));
    p.templates = {"Shape($)"};
    r.add(std::move(p));
  }

  // --- unary geometric attributes (9) ---
  add_unary_attr(r, "RightAngle", Sort::angle_ref, "RightAngle(Angle($))");
  add_unary_attr(r, "Right", Sort::triangle_ref, "Right(Triangle($))");
  add_unary_attr(r, "Isosceles", Sort::polygon_ref, "Isosceles(Polygon($))");
  add_unary_attr(r, "Equilateral", Sort::polygon_ref,
                 "Equilateral(Polygon($))");
  add_unary_attr(r, "Regular", Sort::polygon_ref, "Regular(Polygon($))");
  add_unary_attr(r, "Red", Sort::shape_ref, "Red(Shape($))");
  add_unary_attr(r, "Blue", Sort::shape_ref, "Blue(Shape($))");
  add_unary_attr(r, "Green", Sort::shape_ref, "Green(Shape($))");
  add_unary_attr(r, "Shaded", Sort::shape_ref, "Shaded(Shape($))");

  // --- general geometric attributes (17) ---
  add_general_attr(r, "AreaOf", {Sort::shape_ref}, ValueKind::numeric_value,
                   "AreaOf(A)");
  add_general_attr(r, "PerimeterOf", {Sort::shape_ref},
                   ValueKind::numeric_value, "PerimeterOf(A)");
  add_general_attr(r, "RadiusOf", {Sort::shape_ref}, ValueKind::numeric_value,
                   "RadiusOf(A)");
  add_general_attr(r, "DiameterOf", {Sort::shape_ref},
                   ValueKind::numeric_value, "DiameterOf(A)");
  add_general_attr(r, "CircumferenceOf", {Sort::shape_ref},
                   ValueKind::numeric_value, "CircumferenceOf(A)");
  add_general_attr(r, "AltitudeOf", {Sort::shape_ref},
                   ValueKind::numeric_value, "AltitudeOf(A)");
  add_general_attr(r, "HypotenuseOf", {Sort::shape_ref},
                   ValueKind::numeric_value, "HypotenuseOf(A)");
  add_general_attr(r, "SideOf", {Sort::shape_ref}, ValueKind::numeric_value,
                   "SideOf(A)");
  add_general_attr(r, "WidthOf", {Sort::shape_ref}, ValueKind::numeric_value,
                   "WidthOf(A)");
  add_general_attr(r, "HeightOf", {Sort::shape_ref}, ValueKind::numeric_value,
                   "HeightOf(A)");
  add_general_attr(r, "LegOf", {Sort::shape_ref}, ValueKind::numeric_value,
                   "LegOf(A)");
  add_general_attr(r, "BaseOf", {Sort::shape_ref}, ValueKind::numeric_value,
                   "BaseOf(A)");
  add_general_attr(r, "MedianOf", {Sort::shape_ref}, ValueKind::numeric_value,
                   "MedianOf(A)");
  add_general_attr(r, "IntersectionOf", {Sort::shape_ref, Sort::shape_ref},
                   ValueKind::point_value, "IntersectionOf(A,B)");
  add_general_attr(r, "MeasureOf", {Sort::measurable_ref},
                   ValueKind::numeric_value, "MeasureOf(A)");
  add_general_attr(r, "LengthOf", {Sort::shape_ref}, ValueKind::numeric_value,
                   "LengthOf(A)");
  add_general_attr(r, "ScaleFactorOf", {Sort::shape_ref, Sort::shape_ref},
                   ValueKind::numeric_value, "ScaleFactorOf(A,B)");

  // --- binary geometric relations (12) ---
  add_relation(r, Category::binary_relation, "PointLiesOnLine",
               {Sort::point, Sort::line_ref},
               "PointLiesOnLine(Point($),Line($1,$2))");
  add_relation(r, Category::binary_relation, "PointLiesOnCircle",
               {Sort::point, Sort::circle_ref},
               "PointLiesOnCircle(Point($),Circle($))");
  add_relation(r, Category::binary_relation, "Parallel",
               {Sort::line_ref, Sort::line_ref},
               "Parallel(Line($),Line($))", Symmetry::sort_args);
  add_relation(r, Category::binary_relation, "Perpendicular",
               {Sort::line_ref, Sort::line_ref},
               "Perpendicular(Line($),Line($))", Symmetry::sort_args);
  {
    Predicate p;
    p.name = "IntersectAt";
    p.category = Category::binary_relation;
    p.symmetry = Symmetry::lines_then_point;
    p.forms.push_back(Form::variadic(3, Sort::line_ref, {Sort::point}));
    p.templates = {"IntersectAt(Line($),Line($),Line($),Point($))"};
    r.add(std::move(p));
  }
  add_relation(r, Category::binary_relation, "BisectsAngle",
               {Sort::line_ref, Sort::angle_ref},
               "BisectsAngle(Line($),Angle($))");
  add_relation(r, Category::binary_relation, "Congruent",
               {Sort::polygon_ref, Sort::polygon_ref},
               "Congruent(Polygon($),Polygon($))", Symmetry::joint_pair);
  add_relation(r, Category::binary_relation, "Similar",
               {Sort::polygon_ref, Sort::polygon_ref},
               "Similar(Polygon($),Polygon($))", Symmetry::joint_pair);
  add_relation(r, Category::binary_relation, "Tangent",
               {Sort::line_ref, Sort::circle_ref},
               "Tangent(Line($),Circle($))");
  add_relation(r, Category::binary_relation, "Secant",
               {Sort::line_ref, Sort::circle_ref},
               "Secant(Line($),Circle($))");
  add_relation(r, Category::binary_relation, "CircumscribedTo",
               {Sort::shape_ref, Sort::shape_ref},
               "CircumscribedTo(Shape($),Shape($))");
  add_relation(r, Category::binary_relation, "InscribedIn",
               {Sort::shape_ref, Sort::shape_ref},
               "InscribedIn(Shape($),Shape($))");

  // --- A-IsXOf-B relations (15) ---
  add_relation(r, Category::is_x_of_relation, "IsMidpointOf",
               {Sort::point, Sort::line_ref},
               "IsMidpointOf(Point($),Line($))");
  add_relation(r, Category::is_x_of_relation, "IsCentroidOf",
               {Sort::point, Sort::shape_ref},
               "IsCentroidOf(Point($),Shape($))");
  add_relation(r, Category::is_x_of_relation, "IsIncenterOf",
               {Sort::point, Sort::shape_ref},
               "IsIncenterOf(Point($),Shape($))");
  add_relation(r, Category::is_x_of_relation, "IsRadiusOf",
               {Sort::line_ref, Sort::circle_ref},
               "IsRadiusOf(Line($),Circle($))");
  add_relation(r, Category::is_x_of_relation, "IsDiameterOf",
               {Sort::line_ref, Sort::circle_ref},
               "IsDiameterOf(Line($),Circle($))");
  add_relation(r, Category::is_x_of_relation, "IsMidsegmentOf",
               {Sort::line_ref, Sort::triangle_ref},
               "IsMidsegmentOf(Line($),Triangle($))");
  add_relation(r, Category::is_x_of_relation, "IsChordOf",
               {Sort::line_ref, Sort::circle_ref},
               "IsChordOf(Line($),Circle($))");
  add_relation(r, Category::is_x_of_relation, "IsSideOf",
               {Sort::line_ref, Sort::polygon_ref},
               "IsSideOf(Line($),Polygon($))");
  add_relation(r, Category::is_x_of_relation, "IsHypotenuseOf",
               {Sort::line_ref, Sort::triangle_ref},
               "IsHypotenuseOf(Line($),Triangle($))");
  add_relation(r, Category::is_x_of_relation, "IsPerpendicularBisectorOf",
               {Sort::line_ref, Sort::triangle_ref},
               "IsPerpendicularBisectorOf(Line($),Triangle($))");
  add_relation(r, Category::is_x_of_relation, "IsAltitudeOf",
               {Sort::line_ref, Sort::triangle_ref},
               "IsAltitudeOf(Line($),Triangle($))");
  add_relation(r, Category::is_x_of_relation, "IsMedianOf",
               {Sort::line_ref, Sort::quad_ref},
               "IsMedianOf(Line($),Quadrilateral($))");
  add_relation(r, Category::is_x_of_relation, "IsBaseOf",
               {Sort::line_ref, Sort::quad_ref},
               "IsBaseOf(Line($),Quadrilateral($))");
  add_relation(r, Category::is_x_of_relation, "IsDiagonalOf",
               {Sort::line_ref, Sort::quad_ref},
               "IsDiagonalOf(Line($),Quadrilateral($))");
  add_relation(r, Category::is_x_of_relation, "IsLegOf",
               {Sort::line_ref, Sort::trapezoid_ref},
               "IsLegOf(Line($),Trapezoid($))");

  // --- numeric attributes and relations (18) ---
  add_numeric_fn(r, "SinOf", Form::fixed({Sort::numeric}), "SinOf($)");
  add_numeric_fn(r, "CosOf", Form::fixed({Sort::numeric}), "CosOf($)");
  add_numeric_fn(r, "TanOf", Form::fixed({Sort::numeric}), "TanOf($)");
  add_numeric_fn(r, "CotOf", Form::fixed({Sort::numeric}), "CotOf($)");
  add_numeric_fn(r, "HalfOf", Form::fixed({Sort::numeric}), "HalfOf($)");
  add_numeric_fn(r, "SquareOf", Form::fixed({Sort::numeric}), "SquareOf($)");
  add_numeric_fn(r, "SqrtOf", Form::fixed({Sort::numeric}), "SqrtOf($)");
  {
    Predicate p;
    p.name = "RatioOf";
    p.category = Category::numeric;
    p.value = ValueKind::numeric_value;
    p.forms.push_back(Form::fixed({Sort::numeric}));
    p.forms.push_back(Form::fixed({Sort::numeric, Sort::numeric}));
    p.templates = {"RatioOf($)", "RatioOf($1,$2)"};
    r.add(std::move(p));
  }
  add_numeric_fn(r, "SumOf", Form::variadic(2, Sort::numeric),
                 "SumOf($1,$2)", Symmetry::sort_args);
  add_numeric_fn(r, "AverageOf", Form::variadic(2, Sort::numeric),
                 "AverageOf($1,$2)", Symmetry::sort_args);
  add_numeric_fn(r, "Add", Form::variadic(2, Sort::numeric),
                 "Add($1,$2)", Symmetry::sort_args);
  add_numeric_fn(r, "Mul", Form::variadic(2, Sort::numeric),
                 "Mul($1,$2)", Symmetry::sort_args);
  add_numeric_fn(r, "Sub", Form::variadic(2, Sort::numeric),
                 "Sub($1,$2)");
  add_numeric_fn(r, "Div", Form::variadic(2, Sort::numeric),
                 "Div($1,$2)");
  add_numeric_fn(r, "Pow", Form::fixed({Sort::numeric, Sort::numeric}),
                 "Pow($1,$2)");
  add_numeric_fn(r, "Equals", Form::fixed({Sort::numeric, Sort::numeric}),
                 "Equals($1,$2)", Symmetry::sort_args,
                 ValueKind::statement);
  add_numeric_fn(r, "Find", Form::fixed({Sort::numeric}), "Find($)",
                 Symmetry::none, ValueKind::statement);
  add_numeric_fn(r, "UseTheorem", Form::fixed({Sort::name}),
                 "UseTheorem(A_B_C)", Symmetry::none, ValueKind::statement);

  return r;
}

// Polygon-family heads whose point-form arguments name vertices in order.
inline bool is_vertex_polygon_head(const std::string& head) {
  static const std::vector<std::string> heads = {
      "Triangle", "Quadrilateral", "Parallelogram", "Square", "Rectangle",
      "Rhombus",  "Trapezoid",     "Kite",          "Polygon", "Pentagon",
      "Hexagon",  "Heptagon",      "Octagon"};
  return std::find(heads.begin(), heads.end(), head) != heads.end();
}

inline bool is_quad_family_head(const std::string& head) {
  static const std::vector<std::string> heads = {
      "Quadrilateral", "Parallelogram", "Square",
      "Rectangle",     "Rhombus",       "Trapezoid", "Kite"};
  return std::find(heads.begin(), heads.end(), head) != heads.end();
}

}  // namespace symgeo
