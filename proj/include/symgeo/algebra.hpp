// Numeric expression trees compiled from literals.  Measurable terms
// (LengthOf(Line(A,B)), MeasureOf(Angle(A,B,C)), ...) become algebra
// variables; arithmetic heads become operators.  Trigonometric operators
// take degrees.

#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symgeo/literal.hpp"
#include "symgeo/registry.hpp"

namespace symgeo {

inline constexpr double kPi = 3.141592653589793;
inline constexpr double kDegToRad = kPi / 180.0;

struct Expr {
  enum class Op { constant, var, add, mul, pow, sin, cos, tan, cot };

  Op op = Op::constant;
  double value = 0.0;  // constant
  int var = -1;        // var
  std::vector<Expr> kids;

  static Expr constant(double v) {
    Expr e;
    e.op = Op::constant;
    e.value = v;
    return e;
  }
  static Expr variable(int id) {
    Expr e;
    e.op = Op::var;
    e.var = id;
    return e;
  }
  static Expr add(std::vector<Expr> kids) {
    Expr e;
    e.op = Op::add;
    e.kids = std::move(kids);
    return e;
  }
  static Expr mul(std::vector<Expr> kids) {
    Expr e;
    e.op = Op::mul;
    e.kids = std::move(kids);
    return e;
  }
  static Expr pow(Expr base, Expr exp) {
    Expr e;
    e.op = Op::pow;
    e.kids = {std::move(base), std::move(exp)};
    return e;
  }
  static Expr fn(Op op, Expr kid) {
    Expr e;
    e.op = op;
    e.kids = {std::move(kid)};
    return e;
  }
  static Expr neg(Expr kid) {
    return mul({constant(-1.0), std::move(kid)});
  }
  static Expr sub(Expr a, Expr b) {
    return add({std::move(a), neg(std::move(b))});
  }
  static Expr div(Expr a, Expr b) {
    return mul({std::move(a), pow(std::move(b), constant(-1.0))});
  }
};

// Evaluation over a (possibly partial) assignment; NaN when a needed
// variable is unbound or the operation leaves the real domain.
inline double eval_expr(const Expr& e, const std::vector<double>& values) {
  switch (e.op) {
    case Expr::Op::constant: return e.value;
    case Expr::Op::var:
      return (e.var >= 0 && e.var < static_cast<int>(values.size()))
                 ? values[e.var]
                 : std::nan("");
    case Expr::Op::add: {
      double s = 0;
      for (const auto& k : e.kids) s += eval_expr(k, values);
      return s;
    }
    case Expr::Op::mul: {
      double p = 1;
      for (const auto& k : e.kids) p *= eval_expr(k, values);
      return p;
    }
    case Expr::Op::pow: {
      double b = eval_expr(e.kids[0], values);
      double x = eval_expr(e.kids[1], values);
      if (std::isnan(b) || std::isnan(x)) return std::nan("");
      if (b < 0 && x != std::floor(x)) return std::nan("");
      if (b == 0 && x < 0) return std::nan("");
      return std::pow(b, x);
    }
    case Expr::Op::sin: return std::sin(eval_expr(e.kids[0], values) * kDegToRad);
    case Expr::Op::cos: return std::cos(eval_expr(e.kids[0], values) * kDegToRad);
    case Expr::Op::tan: return std::tan(eval_expr(e.kids[0], values) * kDegToRad);
    case Expr::Op::cot: {
      double t = std::tan(eval_expr(e.kids[0], values) * kDegToRad);
      return t == 0 ? std::nan("") : 1.0 / t;
    }
  }
  return std::nan("");
}

inline void collect_vars(const Expr& e, std::set<int>& out) {
  if (e.op == Expr::Op::var) out.insert(e.var);
  for (const auto& k : e.kids) collect_vars(k, out);
}

inline void collect_constants(const Expr& e, std::vector<double>& out) {
  if (e.op == Expr::Op::constant) out.push_back(e.value);
  for (const auto& k : e.kids) collect_constants(k, out);
}

// Largest intermediate magnitude reached while evaluating; used to scale
// residual tolerances.
inline double eval_scale(const Expr& e, const std::vector<double>& values) {
  double here = std::fabs(eval_expr(e, values));
  if (std::isnan(here)) here = 0;
  double m = std::max(1.0, here);
  for (const auto& k : e.kids) m = std::max(m, eval_scale(k, values));
  return m;
}

// Affine view of an expression under an assignment of known variables:
// expr == constant + sum coeff_i * var_i.  Empty optional when the
// expression is not affine in its unknowns.
struct AffineForm {
  double constant = 0.0;
  std::map<int, double> coeffs;

  bool is_constant() const { return coeffs.empty(); }
};

inline std::optional<AffineForm> to_affine(const Expr& e,
                                           const std::vector<double>& known) {
  auto known_value = [&](int v) -> std::optional<double> {
    if (v >= 0 && v < static_cast<int>(known.size()) && !std::isnan(known[v]))
      return known[v];
    return std::nullopt;
  };
  switch (e.op) {
    case Expr::Op::constant:
      return AffineForm{e.value, {}};
    case Expr::Op::var: {
      if (auto v = known_value(e.var)) return AffineForm{*v, {}};
      AffineForm f;
      f.coeffs[e.var] = 1.0;
      return f;
    }
    case Expr::Op::add: {
      AffineForm acc;
      for (const auto& k : e.kids) {
        auto f = to_affine(k, known);
        if (!f) return std::nullopt;
        acc.constant += f->constant;
        for (auto& [v, c] : f->coeffs) acc.coeffs[v] += c;
      }
      // Cancelled terms (x - x) must not survive as zero coefficients.
      for (auto it = acc.coeffs.begin(); it != acc.coeffs.end();)
        it = std::fabs(it->second) < 1e-12 ? acc.coeffs.erase(it) : ++it;
      return acc;
    }
    case Expr::Op::mul: {
      AffineForm acc{1.0, {}};
      for (const auto& k : e.kids) {
        auto f = to_affine(k, known);
        if (!f) return std::nullopt;
        if (f->is_constant()) {
          acc.constant *= f->constant;
          for (auto& [v, c] : acc.coeffs) c *= f->constant;
        } else if (acc.is_constant()) {
          double scale = acc.constant;
          acc = *f;
          acc.constant *= scale;
          for (auto& [v, c] : acc.coeffs) c *= scale;
        } else {
          return std::nullopt;  // product of two unknowns
        }
      }
      return acc;
    }
    case Expr::Op::pow: {
      auto b = to_affine(e.kids[0], known);
      auto x = to_affine(e.kids[1], known);
      if (!b || !x || !x->is_constant()) return std::nullopt;
      if (b->is_constant()) {
        double v = std::pow(b->constant, x->constant);
        if (!std::isfinite(v)) return std::nullopt;
        return AffineForm{v, {}};
      }
      if (x->constant == 1.0) return b;
      return std::nullopt;
    }
    case Expr::Op::sin:
    case Expr::Op::cos:
    case Expr::Op::tan:
    case Expr::Op::cot: {
      auto a = to_affine(e.kids[0], known);
      if (!a || !a->is_constant()) return std::nullopt;
      Expr tmp = e;
      tmp.kids[0] = Expr::constant(a->constant);
      double v = eval_expr(tmp, {});
      if (!std::isfinite(v)) return std::nullopt;
      return AffineForm{v, {}};
    }
  }
  return std::nullopt;
}

// --- compilation from literals ----------------------------------------

class VarTable;  // defined in relation_set.hpp

// Maps a measurable term or named variable to an algebra variable id.
using VarResolver = std::function<int(const Term&)>;

// Compiles a numeric-valued term into an Expr.  `resolve` is consulted for
// named variables and measurable literals (anything this compiler does not
// interpret arithmetically).
inline Expr compile_numeric(const Term& t, const Registry& reg,
                            const VarResolver& resolve) {
  if (t.is_number()) return Expr::constant(t.as_number());
  if (t.is_variable()) {
    if (t.text() == "pi") return Expr::constant(kPi);
    return Expr::variable(resolve(t));
  }
  if (t.is_identifier() || t.is_slot())
    throw std::runtime_error("cannot compile non-numeric term: " +
                             serialize_term(t));
  const Literal& l = t.as_literal();
  const std::string& h = l.head();
  auto kid = [&](std::size_t i) {
    return compile_numeric(l.arg(i), reg, resolve);
  };
  auto kids = [&]() {
    std::vector<Expr> out;
    for (std::size_t i = 0; i < l.arity(); ++i) out.push_back(kid(i));
    return out;
  };
  if (h == "Add" || h == "SumOf") return Expr::add(kids());
  if (h == "Mul") return Expr::mul(kids());
  if (h == "Sub") {
    std::vector<Expr> out{kid(0)};
    for (std::size_t i = 1; i < l.arity(); ++i) out.push_back(Expr::neg(kid(i)));
    return Expr::add(std::move(out));
  }
  if (h == "Div") {
    Expr acc = kid(0);
    for (std::size_t i = 1; i < l.arity(); ++i)
      acc = Expr::div(std::move(acc), kid(i));
    return acc;
  }
  if (h == "Pow") return Expr::pow(kid(0), kid(1));
  if (h == "SquareOf") return Expr::pow(kid(0), Expr::constant(2));
  if (h == "SqrtOf") return Expr::pow(kid(0), Expr::constant(0.5));
  if (h == "HalfOf") return Expr::mul({Expr::constant(0.5), kid(0)});
  if (h == "AverageOf") {
    Expr sum = Expr::add(kids());
    return Expr::mul(
        {Expr::constant(1.0 / static_cast<double>(l.arity())), std::move(sum)});
  }
  if (h == "RatioOf") {
    if (l.arity() == 1) return kid(0);
    return Expr::div(kid(0), kid(1));
  }
  if (h == "SinOf") return Expr::fn(Expr::Op::sin, kid(0));
  if (h == "CosOf") return Expr::fn(Expr::Op::cos, kid(0));
  if (h == "TanOf") return Expr::fn(Expr::Op::tan, kid(0));
  if (h == "CotOf") return Expr::fn(Expr::Op::cot, kid(0));
  // Measurable attribute (LengthOf, MeasureOf, AreaOf, ...): a variable.
  return Expr::variable(resolve(t));
}

// A reference to a measurable attribute literal (rather than arithmetic).
inline bool is_measurable_term(const Term& t, const Registry& reg) {
  if (!t.is_literal()) return t.is_variable() && t.text() != "pi";
  const Predicate* p = reg.find(t.as_literal().head());
  if (!p || p->value != ValueKind::numeric_value) return false;
  return p->category == Category::general_attribute;
}

}  // namespace symgeo
