// Numeric soundness oracle for the theorem knowledge base.  Each rule
// clause has a registered sampler producing random planar configurations
// that satisfy the premise; every conclusion is then evaluated directly
// from coordinates and must hold to within a small residual.  The
// evaluation path here is coordinate geometry only and shares nothing with
// the equation solver.

#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symgeo/rng.hpp"
#include "symgeo/theorem.hpp"

namespace symgeo {

struct Pt {
  double x = 0, y = 0;
};

inline Pt operator+(Pt a, Pt b) { return {a.x + b.x, a.y + b.y}; }
inline Pt operator-(Pt a, Pt b) { return {a.x - b.x, a.y - b.y}; }
inline Pt operator*(double s, Pt a) { return {s * a.x, s * a.y}; }

inline double dist(Pt a, Pt b) { return std::hypot(a.x - b.x, a.y - b.y); }

inline double angle_deg(Pt a, Pt v, Pt b) {
  double ux = a.x - v.x, uy = a.y - v.y;
  double wx = b.x - v.x, wy = b.y - v.y;
  double nu = std::hypot(ux, uy), nw = std::hypot(wx, wy);
  if (nu == 0 || nw == 0) return std::nan("");
  double c = (ux * wx + uy * wy) / (nu * nw);
  c = std::clamp(c, -1.0, 1.0);
  return std::acos(c) / kDegToRad;
}

// A sampled planar configuration keyed by the rule's slot names.
struct GeomSample {
  std::map<std::string, Pt> points;
  std::map<std::string, double> circle_radius;  // keyed by the center slot
};

namespace detail {

struct GeomEval {
  const GeomSample& s;
  const Registry& reg;

  Pt point(const Term& t) const {
    if (t.is_slot() || t.is_identifier()) {
      auto it = s.points.find(t.text());
      if (it == s.points.end())
        throw std::runtime_error("sampler provides no point for " + t.text());
      return it->second;
    }
    throw std::runtime_error("expected point term, got " + serialize_term(t));
  }

  std::pair<Pt, double> circle(const Term& t) const {
    if (!t.is_literal() || t.as_literal().head() != "Circle")
      throw std::runtime_error("expected Circle(...), got " +
                               serialize_term(t));
    const Term& label = t.as_literal().arg(0);
    auto it = s.circle_radius.find(label.text());
    if (it == s.circle_radius.end())
      throw std::runtime_error("sampler provides no circle for " +
                               label.text());
    return {point(label), it->second};
  }

  // Circle through two named points (for arc terms without an explicit
  // circle argument): the unique registered circle containing both.
  std::pair<Pt, double> circle_through(Pt a, Pt b) const {
    for (const auto& [label, r] : s.circle_radius) {
      Pt c = s.points.at(label);
      if (std::fabs(dist(c, a) - r) < 1e-7 * std::max(1.0, r) &&
          std::fabs(dist(c, b) - r) < 1e-7 * std::max(1.0, r))
        return {c, r};
    }
    throw std::runtime_error("no sampled circle passes through both points");
  }

  std::vector<Pt> vertices(const Literal& l) const {
    std::vector<Pt> out;
    for (const auto& a : l.args()) out.push_back(point(a));
    return out;
  }

  static double shoelace(const std::vector<Pt>& vs) {
    double acc = 0;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const Pt& a = vs[i];
      const Pt& b = vs[(i + 1) % vs.size()];
      acc += a.x * b.y - b.x * a.y;
    }
    return std::fabs(acc) * 0.5;
  }

  static double perimeter(const std::vector<Pt>& vs) {
    double acc = 0;
    for (std::size_t i = 0; i < vs.size(); ++i)
      acc += dist(vs[i], vs[(i + 1) % vs.size()]);
    return acc;
  }

  double central_angle(Pt c, Pt a, Pt b) const { return angle_deg(a, c, b); }

  double value(const Term& t) const {
    if (t.is_number()) return t.as_number();
    if (t.is_variable()) {
      if (t.text() == "pi") return kPi;
      throw std::runtime_error("free variable in geometric conclusion");
    }
    if (!t.is_literal())
      throw std::runtime_error("cannot evaluate term " + serialize_term(t));
    const Literal& l = t.as_literal();
    const std::string& h = l.head();

    auto kid = [&](std::size_t i) { return value(l.arg(i)); };
    if (h == "Add" || h == "SumOf") {
      double acc = 0;
      for (std::size_t i = 0; i < l.arity(); ++i) acc += kid(i);
      return acc;
    }
    if (h == "Mul") {
      double acc = 1;
      for (std::size_t i = 0; i < l.arity(); ++i) acc *= kid(i);
      return acc;
    }
    if (h == "Sub") {
      double acc = kid(0);
      for (std::size_t i = 1; i < l.arity(); ++i) acc -= kid(i);
      return acc;
    }
    if (h == "Div") {
      double acc = kid(0);
      for (std::size_t i = 1; i < l.arity(); ++i) acc /= kid(i);
      return acc;
    }
    if (h == "Pow") return std::pow(kid(0), kid(1));
    if (h == "SqrtOf") return std::sqrt(kid(0));
    if (h == "SquareOf") return kid(0) * kid(0);
    if (h == "HalfOf") return 0.5 * kid(0);
    if (h == "AverageOf") {
      double acc = 0;
      for (std::size_t i = 0; i < l.arity(); ++i) acc += kid(i);
      return acc / static_cast<double>(l.arity());
    }
    if (h == "RatioOf")
      return l.arity() == 1 ? kid(0) : kid(0) / kid(1);
    if (h == "SinOf") return std::sin(kid(0) * kDegToRad);
    if (h == "CosOf") return std::cos(kid(0) * kDegToRad);
    if (h == "TanOf") return std::tan(kid(0) * kDegToRad);
    if (h == "CotOf") return 1.0 / std::tan(kid(0) * kDegToRad);

    if (h == "LengthOf") {
      const Term& a = l.arg(0);
      if (a.is_literal() && a.as_literal().head() == "Line") {
        const Literal& ln = a.as_literal();
        return dist(point(ln.arg(0)), point(ln.arg(1)));
      }
      if (a.is_literal() && a.as_literal().head() == "Arc") {
        const Literal& arc = a.as_literal();
        Pt p = point(arc.arg(0)), q = point(arc.arg(1));
        auto [c, r] = circle_through(p, q);
        return central_angle(c, p, q) / 360.0 * 2 * kPi * r;
      }
    }
    if (h == "MeasureOf") {
      const Term& a = l.arg(0);
      if (a.is_literal() && a.as_literal().head() == "Angle") {
        const Literal& an = a.as_literal();
        return angle_deg(point(an.arg(0)), point(an.arg(1)),
                         point(an.arg(2)));
      }
      if (a.is_literal() && a.as_literal().head() == "Arc") {
        const Literal& arc = a.as_literal();
        Pt p = point(arc.arg(0)), q = point(arc.arg(1));
        auto [c, r] = circle_through(p, q);
        (void)r;
        return central_angle(c, p, q);
      }
    }
    if (h == "AreaOf") {
      const Term& a = l.arg(0);
      if (a.is_literal()) {
        const Literal& sh = a.as_literal();
        if (sh.head() == "Circle") {
          auto [c, r] = circle(a);
          (void)c;
          return kPi * r * r;
        }
        if (sh.head() == "Sector") {
          Pt o = point(sh.arg(0));
          Pt p = point(sh.arg(1)), q = point(sh.arg(2));
          double r = dist(o, p);
          return central_angle(o, p, q) / 360.0 * kPi * r * r;
        }
        if (is_vertex_polygon_head(sh.head())) return shoelace(vertices(sh));
      }
    }
    if (h == "PerimeterOf") {
      const Term& a = l.arg(0);
      if (a.is_literal() && is_vertex_polygon_head(a.as_literal().head()))
        return perimeter(vertices(a.as_literal()));
    }
    if (h == "CircumferenceOf") {
      auto [c, r] = circle(l.arg(0));
      (void)c;
      return 2 * kPi * r;
    }
    if (h == "RadiusOf") {
      auto [c, r] = circle(l.arg(0));
      (void)c;
      return r;
    }
    if (h == "DiameterOf") {
      auto [c, r] = circle(l.arg(0));
      (void)c;
      return 2 * r;
    }
    if (h == "ScaleFactorOf") {
      const Literal& p = l.arg(0).as_literal();
      const Literal& q = l.arg(1).as_literal();
      return dist(point(p.arg(0)), point(p.arg(1))) /
             dist(point(q.arg(0)), point(q.arg(1)));
    }
    if (h == "HeightOf") {
      // Distance between the two parallel sides (first and third) of the
      // quad; valid for the trapezoid clause's sampled configurations.
      const Literal& q = l.arg(0).as_literal();
      Pt a = point(q.arg(0)), b = point(q.arg(1)), c = point(q.arg(2));
      double len = dist(a, b);
      return std::fabs((b.x - a.x) * (a.y - c.y) - (a.x - c.x) * (b.y - a.y)) /
             len;
    }
    throw std::runtime_error("cannot evaluate geometric term " +
                             serialize_literal(l));
  }

  // Residual of a conclusion literal; nullopt when the literal kind has no
  // numeric check (plain relational facts).
  std::optional<double> residual(const Literal& c) const {
    const std::string& h = c.head();
    if (h == "Equals") return std::fabs(value(c.arg(0)) - value(c.arg(1)));
    if (h == "RightAngle") {
      const Literal& an = c.arg(0).as_literal();
      return std::fabs(angle_deg(point(an.arg(0)), point(an.arg(1)),
                                 point(an.arg(2))) -
                       90.0);
    }
    if (h == "Perpendicular" || h == "Parallel") {
      const Literal& l1 = c.arg(0).as_literal();
      const Literal& l2 = c.arg(1).as_literal();
      Pt a = point(l1.arg(0)), b = point(l1.arg(1));
      Pt p = point(l2.arg(0)), q = point(l2.arg(1));
      double ux = b.x - a.x, uy = b.y - a.y;
      double vx = q.x - p.x, vy = q.y - p.y;
      double nu = std::hypot(ux, uy), nv = std::hypot(vx, vy);
      if (h == "Perpendicular")
        return std::fabs(ux * vx + uy * vy) / (nu * nv);
      return std::fabs(ux * vy - uy * vx) / (nu * nv);
    }
    return std::nullopt;  // structural literal, nothing numeric to check
  }
};

}  // namespace detail

using ClauseSampler = std::function<GeomSample(Rng&)>;

struct SoundnessReport {
  int rule_id = 0;
  std::string rule_name;
  int trials = 0;
  double max_residual = 0;
  bool pass = false;
  std::vector<std::string> notes;
};

// Registered samplers for the shipped knowledge base, keyed by rule id and
// clause index.  Samplers avoid near-degenerate configurations so residuals
// reflect rule correctness, not conditioning.
inline const std::map<std::pair<int, int>, ClauseSampler>& kb_samplers() {
  static const std::map<std::pair<int, int>, ClauseSampler> table = [] {
    std::map<std::pair<int, int>, ClauseSampler> t;

    auto rand_pt = [](Rng& rng) -> Pt {
      return {rng.uniform(-10, 10), rng.uniform(-10, 10)};
    };
    auto triangle = [rand_pt](Rng& rng) {
      // Rejection-sample a well-conditioned triangle.
      while (true) {
        Pt a = rand_pt(rng), b = rand_pt(rng), c = rand_pt(rng);
        double m = std::min({angle_deg(b, a, c), angle_deg(a, b, c),
                             angle_deg(a, c, b)});
        if (dist(a, b) > 1 && dist(b, c) > 1 && dist(a, c) > 1 && m > 8)
          return std::array<Pt, 3>{a, b, c};
      }
    };
    auto rotate = [](Pt p, double deg) -> Pt {
      double r = deg * kDegToRad;
      return {p.x * std::cos(r) - p.y * std::sin(r),
              p.x * std::sin(r) + p.y * std::cos(r)};
    };
    auto on_circle = [](Pt c, double r, double deg) -> Pt {
      return {c.x + r * std::cos(deg * kDegToRad),
              c.y + r * std::sin(deg * kDegToRad)};
    };
    auto convex_ngon = [rand_pt, on_circle](Rng& rng, int n) {
      Pt c = rand_pt(rng);
      double r = rng.uniform(2, 6);
      std::vector<double> angles;
      while (true) {
        angles.clear();
        for (int i = 0; i < n; ++i) angles.push_back(rng.uniform(0, 360));
        std::sort(angles.begin(), angles.end());
        bool ok = true;
        for (int i = 0; i < n; ++i) {
          double gap = (i + 1 < n ? angles[i + 1] : angles[0] + 360) - angles[i];
          if (gap < 15 || gap > 175) ok = false;
        }
        if (ok) break;
      }
      std::vector<Pt> out;
      for (double a : angles) out.push_back(on_circle(c, r, a));
      return out;
    };

    // 1: Triangle Angle Sum
    t[{1, 0}] = [triangle](Rng& rng) {
      auto tr = triangle(rng);
      return GeomSample{{{"$1", tr[0]}, {"$2", tr[1]}, {"$3", tr[2]}}, {}};
    };
    // 2: Congruent Triangles (rigid transform, maybe reflected)
    t[{2, 0}] = [triangle, rotate](Rng& rng) {
      auto tr = triangle(rng);
      double ang = rng.uniform(0, 360);
      Pt shift{rng.uniform(-5, 5), rng.uniform(-5, 5)};
      bool reflect = rng.below(2) == 1;
      GeomSample s;
      s.points = {{"$1", tr[0]}, {"$2", tr[1]}, {"$3", tr[2]}};
      const char* slots[3] = {"$4", "$5", "$6"};
      for (int i = 0; i < 3; ++i) {
        Pt p = tr[i];
        if (reflect) p.y = -p.y;
        s.points[slots[i]] = rotate(p, ang) + shift;
      }
      return s;
    };
    // 3: Isosceles (both clauses share the configuration)
    auto isosceles = [rotate](Rng& rng) {
      Pt apex{rng.uniform(-5, 5), rng.uniform(-5, 5)};
      double leg = rng.uniform(2, 8);
      double open = rng.uniform(20, 150);
      double base_dir = rng.uniform(0, 360);
      Pt u = rotate({leg, 0}, base_dir - open / 2);
      Pt w = rotate({leg, 0}, base_dir + open / 2);
      return GeomSample{
          {{"$1", apex}, {"$2", apex + u}, {"$3", apex + w}}, {}};
    };
    t[{3, 0}] = isosceles;
    t[{3, 1}] = isosceles;
    // 4: Equilateral
    t[{4, 0}] = [rotate](Rng& rng) {
      Pt a{rng.uniform(-5, 5), rng.uniform(-5, 5)};
      double side = rng.uniform(2, 8);
      double dir = rng.uniform(0, 360);
      Pt b = a + rotate({side, 0}, dir);
      Pt c = a + rotate({side, 0}, dir + 60);
      return GeomSample{{{"$1", a}, {"$2", b}, {"$3", c}}, {}};
    };
    // 5.0: linear pair  5.1: vertical angles
    t[{5, 0}] = [rotate](Rng& rng) {
      Pt a{rng.uniform(-8, 8), rng.uniform(-8, 8)};
      double dir = rng.uniform(0, 360);
      double len = rng.uniform(4, 10);
      Pt b = a + rotate({len, 0}, dir);
      double c0 = rng.uniform(0.2, 0.8);
      Pt c = a + c0 * (b - a);
      double off = rng.uniform(15, 165);
      if (rng.below(2)) off = -off;
      Pt d = c + rotate({rng.uniform(2, 6), 0}, dir + off);
      return GeomSample{{{"$0", c}, {"$1", a}, {"$2", b}, {"$3", d}}, {}};
    };
    t[{5, 1}] = [rotate](Rng& rng) {
      Pt x{rng.uniform(-8, 8), rng.uniform(-8, 8)};
      double d1 = rng.uniform(0, 360);
      double d2 = d1 + rng.uniform(20, 160);
      double r1 = rng.uniform(2, 6), r2 = rng.uniform(2, 6);
      double r3 = rng.uniform(2, 6), r4 = rng.uniform(2, 6);
      return GeomSample{{{"$0", x},
                         {"$1", x + rotate({r1, 0}, d1)},
                         {"$2", x + rotate({r2, 0}, d1 + 180)},
                         {"$3", x + rotate({r3, 0}, d2)},
                         {"$4", x + rotate({r4, 0}, d2 + 180)}},
                        {}};
    };
    // 6: co-interior angles at an endpoint transversal
    t[{6, 0}] = [rotate](Rng& rng) {
      Pt a{rng.uniform(-8, 8), rng.uniform(-8, 8)};
      double dir = rng.uniform(0, 360);
      Pt u = rotate({1, 0}, dir);
      Pt b = a + rng.uniform(3, 8) * u;
      double off = rng.uniform(25, 155);
      if (rng.below(2)) off = -off;
      Pt c = a + rotate({rng.uniform(2, 7), 0}, dir + off);
      Pt d = c + rng.uniform(3, 8) * u;  // same direction as a->b
      return GeomSample{{{"$1", a}, {"$2", b}, {"$3", c}, {"$4", d}}, {}};
    };
    // 7: polygon interior angle sums
    for (int ci = 0; ci < 5; ++ci) {
      int n = 4 + ci;
      t[{7, ci}] = [convex_ngon, n](Rng& rng) {
        auto vs = convex_ngon(rng, n);
        GeomSample s;
        for (int i = 0; i < n; ++i)
          s.points["$" + std::to_string(i + 1)] = vs[i];
        return s;
      };
    }
    // 8: parallelogram
    auto parallelogram = [rotate](Rng& rng) {
      Pt a{rng.uniform(-8, 8), rng.uniform(-8, 8)};
      double d1 = rng.uniform(0, 360);
      double d2 = d1 + (rng.below(2) ? 1 : -1) * rng.uniform(25, 155);
      Pt u = rotate({rng.uniform(2, 7), 0}, d1);
      Pt v = rotate({rng.uniform(2, 7), 0}, d2);
      return GeomSample{
          {{"$1", a}, {"$2", a + u}, {"$3", a + u + v}, {"$4", a + v}}, {}};
    };
    t[{8, 0}] = parallelogram;
    // 9.0: point on circle; 9.1: circle only
    t[{9, 0}] = [rand_pt, on_circle](Rng& rng) {
      Pt o = rand_pt(rng);
      double r = rng.uniform(1, 8);
      GeomSample s;
      s.points["$0"] = o;
      s.points["$1"] = on_circle(o, r, rng.uniform(0, 360));
      s.circle_radius["$0"] = r;
      return s;
    };
    t[{9, 1}] = [rand_pt](Rng& rng) {
      Pt o = rand_pt(rng);
      GeomSample s;
      s.points["$0"] = o;
      s.circle_radius["$0"] = rng.uniform(1, 8);
      return s;
    };
    // 10.0: central angle = arc; 10.1: sector variant
    auto central = [rand_pt, on_circle](Rng& rng) {
      Pt o = rand_pt(rng);
      double r = rng.uniform(1, 8);
      double a1 = rng.uniform(0, 360);
      double span = rng.uniform(15, 165);
      GeomSample s;
      s.points["$0"] = o;
      s.points["$1"] = on_circle(o, r, a1);
      s.points["$2"] = on_circle(o, r, a1 + span);
      s.circle_radius["$0"] = r;
      return s;
    };
    t[{10, 0}] = central;
    t[{10, 1}] = central;
    // 11.0: inscribed angle (vertex on the major arc); 11.1: Thales
    t[{11, 0}] = [rand_pt, on_circle](Rng& rng) {
      Pt o = rand_pt(rng);
      double r = rng.uniform(1, 8);
      double a1 = rng.uniform(0, 360);
      double span = rng.uniform(20, 160);
      double v = a1 + span + rng.uniform(15, 360 - span - 30);
      GeomSample s;
      s.points["$0"] = o;
      s.points["$1"] = on_circle(o, r, a1);
      s.points["$2"] = on_circle(o, r, a1 + span);
      s.points["$3"] = on_circle(o, r, v);
      s.circle_radius["$0"] = r;
      return s;
    };
    t[{11, 1}] = [rand_pt, on_circle](Rng& rng) {
      Pt o = rand_pt(rng);
      double r = rng.uniform(1, 8);
      double a1 = rng.uniform(0, 360);
      GeomSample s;
      s.points["$0"] = o;
      s.points["$1"] = on_circle(o, r, a1);
      s.points["$2"] = on_circle(o, r, a1 + 180);
      s.points["$3"] = on_circle(o, r, a1 + rng.uniform(20, 160) *
                                              (rng.below(2) ? 1 : -1));
      s.circle_radius["$0"] = r;
      return s;
    };
    // 12: right-angle clauses
    auto right_corner = [rotate](Rng& rng) {
      Pt v{rng.uniform(-8, 8), rng.uniform(-8, 8)};
      double dir = rng.uniform(0, 360);
      Pt a = v + rotate({rng.uniform(2, 7), 0}, dir);
      Pt b = v + rotate({rng.uniform(2, 7), 0}, dir + 90);
      return std::array<Pt, 3>{a, v, b};
    };
    t[{12, 0}] = [right_corner](Rng& rng) {
      auto c = right_corner(rng);
      return GeomSample{{{"$1", c[0]}, {"$2", c[1]}, {"$3", c[2]}}, {}};
    };
    t[{12, 1}] = [right_corner](Rng& rng) {
      auto c = right_corner(rng);
      return GeomSample{{{"$1", c[0]}, {"$2", c[1]}, {"$3", c[2]}}, {}};
    };
    t[{12, 2}] = [rotate](Rng& rng) {
      Pt x{rng.uniform(-8, 8), rng.uniform(-8, 8)};
      double dir = rng.uniform(0, 360);
      GeomSample s;
      s.points["$5"] = x;
      s.points["$1"] = x + rotate({rng.uniform(2, 6), 0}, dir);
      s.points["$2"] = x + rotate({rng.uniform(2, 6), 0}, dir + 180);
      s.points["$3"] = x + rotate({rng.uniform(2, 6), 0}, dir + 90);
      s.points["$4"] = x + rotate({rng.uniform(2, 6), 0}, dir + 270);
      return s;
    };
    t[{12, 3}] = [rand_pt, on_circle, rotate](Rng& rng) {
      Pt o = rand_pt(rng);
      double r = rng.uniform(1, 8);
      double a1 = rng.uniform(0, 360);
      Pt touch = on_circle(o, r, a1);
      Pt along = rotate({rng.uniform(2, 7), 0}, a1 + 90);
      GeomSample s;
      s.points["$0"] = o;
      s.points["$1"] = touch;
      s.points["$2"] = touch + along;
      s.circle_radius["$0"] = r;
      return s;
    };
    // 13: Pythagorean theorem (right angle at $2)
    t[{13, 0}] = [right_corner](Rng& rng) {
      auto c = right_corner(rng);
      return GeomSample{{{"$1", c[0]}, {"$2", c[1]}, {"$3", c[2]}}, {}};
    };
    // 14/15: arbitrary triangle
    t[{14, 0}] = t[{1, 0}];
    t[{15, 0}] = t[{1, 0}];
    // 16.0: similar triangles; 16.1: similar quadrilaterals
    t[{16, 0}] = [triangle, rotate](Rng& rng) {
      auto tr = triangle(rng);
      double k = rng.uniform(0.3, 3.0);
      double ang = rng.uniform(0, 360);
      Pt shift{rng.uniform(-5, 5), rng.uniform(-5, 5)};
      bool reflect = rng.below(2) == 1;
      GeomSample s;
      s.points = {{"$1", tr[0]}, {"$2", tr[1]}, {"$3", tr[2]}};
      const char* slots[3] = {"$4", "$5", "$6"};
      for (int i = 0; i < 3; ++i) {
        Pt p = tr[i];
        if (reflect) p.y = -p.y;
        s.points[slots[i]] = rotate(k * p, ang) + shift;
      }
      return s;
    };
    t[{16, 1}] = [convex_ngon, rotate](Rng& rng) {
      auto vs = convex_ngon(rng, 4);
      double k = rng.uniform(0.3, 3.0);
      double ang = rng.uniform(0, 360);
      Pt shift{rng.uniform(-5, 5), rng.uniform(-5, 5)};
      GeomSample s;
      for (int i = 0; i < 4; ++i) {
        s.points["$" + std::to_string(i + 1)] = vs[i];
        s.points["$" + std::to_string(i + 5)] = rotate(k * vs[i], ang) + shift;
      }
      return s;
    };
    // 17: mensuration clauses
    t[{17, 0}] = t[{1, 0}];
    t[{17, 1}] = [rotate](Rng& rng) {  // square
      Pt a{rng.uniform(-8, 8), rng.uniform(-8, 8)};
      double side = rng.uniform(2, 7);
      double dir = rng.uniform(0, 360);
      Pt u = rotate({side, 0}, dir);
      Pt v = rotate({side, 0}, dir + 90);
      return GeomSample{
          {{"$1", a}, {"$2", a + u}, {"$3", a + u + v}, {"$4", a + v}}, {}};
    };
    t[{17, 2}] = [rotate](Rng& rng) {  // rectangle
      Pt a{rng.uniform(-8, 8), rng.uniform(-8, 8)};
      double w = rng.uniform(2, 7), h = rng.uniform(2, 7);
      double dir = rng.uniform(0, 360);
      Pt u = rotate({w, 0}, dir);
      Pt v = rotate({h, 0}, dir + 90);
      return GeomSample{
          {{"$1", a}, {"$2", a + u}, {"$3", a + u + v}, {"$4", a + v}}, {}};
    };
    t[{17, 3}] = parallelogram;
    t[{17, 4}] = [rotate](Rng& rng) {  // trapezoid, $1$2 parallel to $3$4
      Pt a{rng.uniform(-8, 8), rng.uniform(-8, 8)};
      double dir = rng.uniform(0, 360);
      Pt u = rotate({1, 0}, dir);
      Pt n = rotate({1, 0}, dir + 90);
      double b1 = rng.uniform(3, 8);
      double h = rng.uniform(2, 6);
      double off = rng.uniform(-2, 2);
      double b2 = rng.uniform(2, 7);
      Pt b = a + b1 * u;
      Pt c = a + (off + b2) * u + h * n;
      Pt d = a + off * u + h * n;
      return GeomSample{{{"$1", a}, {"$2", b}, {"$3", c}, {"$4", d}}, {}};
    };
    t[{17, 5}] = t[{9, 1}];
    t[{17, 6}] = central;
    t[{17, 7}] = central;

    return t;
  }();
  return table;
}

// Runs `trials` seeded coordinate trials per clause of `rule` and reports
// the worst residual across every checkable conclusion.
inline SoundnessReport check_soundness(
    const TheoremRule& rule, int trials, std::uint64_t seed,
    const Registry& reg = builtin_registry(),
    const std::map<std::pair<int, int>, ClauseSampler>& samplers =
        kb_samplers()) {
  SoundnessReport rep;
  rep.rule_id = rule.id;
  rep.rule_name = rule.name;
  rep.trials = trials;
  for (std::size_t ci = 0; ci < rule.clauses.size(); ++ci) {
    auto it = samplers.find({rule.id, static_cast<int>(ci)});
    if (it == samplers.end())
      throw std::runtime_error("no sampler registered for rule " +
                               std::to_string(rule.id) + " clause " +
                               std::to_string(ci));
    Rng rng(seed ^ (0x9E37ull * (rule.id * 131 + ci + 1)));
    for (int trial = 0; trial < trials; ++trial) {
      GeomSample sample = it->second(rng);
      detail::GeomEval ev{sample, reg};
      for (const auto& c : rule.clauses[ci].conclusions) {
        auto r = ev.residual(c);
        if (r && *r > rep.max_residual) rep.max_residual = *r;
      }
    }
  }
  rep.pass = rep.max_residual < 1e-6;
  return rep;
}

}  // namespace symgeo
