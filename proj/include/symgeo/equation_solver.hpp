// Equation-system solver used to extract goal values from a relation set.
//
// Strategy: symbolic linear elimination first (Gaussian elimination over
// residuals that are affine in their unknowns), then constraint
// propagation with exhaustive univariate root isolation inside variable
// domains, and finally seeded multi-start damped Gauss-Newton over the
// remaining nonlinear core.  A goal is reported solved only if every
// surviving route agrees on a single in-domain value.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symgeo/algebra.hpp"
#include "symgeo/rng.hpp"

namespace symgeo {

struct VarDomain {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double v) const { return v > lo && v < hi; }

  static VarDomain positive() { return {0.0, std::numeric_limits<double>::infinity()}; }
  static VarDomain angle_deg() { return {0.0, 180.0}; }
  static VarDomain arc_deg() { return {0.0, 360.0}; }
  static VarDomain free() { return {}; }
};

struct SystemEquation {
  Expr residual;        // == 0
  std::string source;   // serialized Equals literal, for traces
};

enum class SolveStatus {
  solved,
  undetermined,        // system does not pin the goal down
  multiple_solutions,  // more than one in-domain value survives
  inconsistent,        // no assignment satisfies the system
};

struct SolveResult {
  SolveStatus status = SolveStatus::undetermined;
  std::optional<double> value;
  // Values for every variable the solver managed to determine (NaN =
  // unknown).  Used for trace verification.
  std::vector<double> assignment;

  bool solved() const { return status == SolveStatus::solved; }
};

namespace detail {

constexpr double kResidualTol = 1e-6;
constexpr double kPivotTol = 1e-11;

struct LinearRow {
  std::map<int, double> coeffs;
  double rhs = 0.0;  // sum coeffs*vars == rhs
};

// Gaussian elimination; appends newly determined values to `known`.
// Returns false on inconsistency.
inline bool eliminate_linear(std::vector<LinearRow> rows,
                             std::vector<double>& known, bool& progress) {
  // Normalize rows against already-known values.
  for (auto& row : rows) {
    for (auto it = row.coeffs.begin(); it != row.coeffs.end();) {
      double v = known[it->first];
      if (!std::isnan(v)) {
        row.rhs -= it->second * v;
        it = row.coeffs.erase(it);
      } else {
        ++it;
      }
    }
  }
  std::vector<LinearRow> active;
  for (auto& row : rows) {
    double scale = std::fabs(row.rhs);
    for (auto& [v, c] : row.coeffs) scale = std::max(scale, std::fabs(c));
    if (row.coeffs.empty()) {
      if (std::fabs(row.rhs) > kResidualTol * std::max(1.0, scale))
        return false;
      continue;
    }
    active.push_back(std::move(row));
  }

  // Forward elimination with max-coefficient pivoting.
  std::size_t r = 0;
  while (r < active.size()) {
    // Pick pivot: largest |coeff| in remaining rows.
    std::size_t best_row = r;
    int best_var = -1;
    double best_mag = 0;
    for (std::size_t i = r; i < active.size(); ++i)
      for (auto& [v, c] : active[i].coeffs)
        if (std::fabs(c) > best_mag) {
          best_mag = std::fabs(c);
          best_row = i;
          best_var = v;
        }
    if (best_var < 0 || best_mag < kPivotTol) break;
    std::swap(active[r], active[best_row]);
    double pc = active[r].coeffs[best_var];
    for (std::size_t i = 0; i < active.size(); ++i) {
      if (i == r) continue;
      auto it = active[i].coeffs.find(best_var);
      if (it == active[i].coeffs.end()) continue;
      double f = it->second / pc;
      active[i].coeffs.erase(it);
      for (auto& [v, c] : active[r].coeffs) {
        if (v == best_var) continue;
        double nc = active[i].coeffs[v] - f * c;
        if (std::fabs(nc) < kPivotTol)
          active[i].coeffs.erase(v);
        else
          active[i].coeffs[v] = nc;
      }
      active[i].rhs -= f * active[r].rhs;
    }
    ++r;
  }

  for (auto& row : active) {
    if (row.coeffs.empty()) {
      double scale = std::max(1.0, std::fabs(row.rhs));
      if (std::fabs(row.rhs) > kResidualTol * scale) return false;
      continue;
    }
    if (row.coeffs.size() == 1) {
      auto [v, c] = *row.coeffs.begin();
      if (std::fabs(c) < kPivotTol) continue;
      double val = row.rhs / c;
      if (std::isnan(known[v])) {
        known[v] = val;
        progress = true;
      } else if (std::fabs(known[v] - val) >
                 kResidualTol * std::max(1.0, std::fabs(val))) {
        return false;
      }
    }
  }
  return true;
}

// All roots of a univariate residual inside (lo, hi), isolated by a dense
// scan plus bisection, refined by Newton.
inline std::vector<double> univariate_roots(
    const Expr& residual, int var, std::vector<double> values,
    const VarDomain& dom, double magnitude_hint) {
  double lo = dom.lo, hi = dom.hi;
  double window = std::max(10.0 * magnitude_hint, 1000.0);
  if (!std::isfinite(lo)) lo = -window;
  if (!std::isfinite(hi)) hi = window;
  if (std::isfinite(dom.lo)) hi = std::min(hi, dom.lo + 10 * window);
  if (std::isfinite(dom.hi)) lo = std::max(lo, dom.hi - 10 * window);
  if (hi <= lo) return {};

  auto f = [&](double x) {
    values[var] = x;
    return eval_expr(residual, values);
  };
  auto newton_polish = [&](double x0) -> std::optional<double> {
    double x = x0;
    for (int it = 0; it < 60; ++it) {
      double fx = f(x);
      if (std::isnan(fx)) return std::nullopt;
      double h = 1e-7 * std::max(1.0, std::fabs(x));
      double d = (f(x + h) - f(x - h)) / (2 * h);
      if (std::isnan(d) || std::fabs(d) < 1e-300) break;
      double nx = x - fx / d;
      if (!std::isfinite(nx)) break;
      if (std::fabs(nx - x) < 1e-13 * std::max(1.0, std::fabs(nx))) {
        x = nx;
        break;
      }
      x = nx;
    }
    double fx = f(x);
    values[var] = x;
    double scale = eval_scale(residual, values);
    if (!std::isnan(fx) && std::fabs(fx) <= kResidualTol * scale &&
        x > dom.lo && x < dom.hi)
      return x;
    return std::nullopt;
  };

  const int kGrid = 2048;
  double eps = (hi - lo) * 1e-9;
  std::vector<double> roots;
  auto push_root = [&](double r) {
    for (double e : roots)
      if (std::fabs(e - r) <= 1e-6 * std::max(1.0, std::fabs(r))) return;
    roots.push_back(r);
  };

  double prev_x = lo + eps;
  double prev_f = f(prev_x);
  double best_abs = std::numeric_limits<double>::infinity();
  double best_x = prev_x;
  for (int i = 1; i <= kGrid; ++i) {
    double x = lo + eps + (hi - lo - 2 * eps) * i / kGrid;
    double fx = f(x);
    if (!std::isnan(fx) && std::fabs(fx) < best_abs) {
      best_abs = std::fabs(fx);
      best_x = x;
    }
    if (!std::isnan(prev_f) && !std::isnan(fx) &&
        ((prev_f < 0 && fx > 0) || (prev_f > 0 && fx < 0) || prev_f == 0)) {
      // Bisection on [prev_x, x].
      double a = prev_x, b = x, fa = prev_f;
      for (int it = 0; it < 100; ++it) {
        double m = 0.5 * (a + b);
        double fm = f(m);
        if (std::isnan(fm)) break;
        if ((fa < 0 && fm <= 0) || (fa > 0 && fm >= 0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      if (auto r = newton_polish(0.5 * (a + b))) push_root(*r);
    }
    prev_x = x;
    prev_f = fx;
  }
  // Tangency (double root): polish from the |f| minimum as well.
  if (auto r = newton_polish(best_x)) push_root(*r);
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Damped Gauss-Newton on the full residual vector from one start point.
inline std::optional<std::vector<double>> gauss_newton(
    const std::vector<const Expr*>& residuals, const std::vector<int>& vars,
    const std::vector<VarDomain>& domains, std::vector<double> values,
    std::vector<double> start) {
  const std::size_t n = vars.size();
  const std::size_t m = residuals.size();
  auto fill = [&](const std::vector<double>& x) {
    for (std::size_t j = 0; j < n; ++j) values[vars[j]] = x[j];
  };
  auto residual_vec = [&](const std::vector<double>& x,
                          std::vector<double>& out) -> bool {
    fill(x);
    out.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      out[i] = eval_expr(*residuals[i], values);
      if (std::isnan(out[i])) return false;
    }
    return true;
  };
  auto norm2 = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return s;
  };

  std::vector<double> x = std::move(start);
  std::vector<double> fx;
  if (!residual_vec(x, fx)) return std::nullopt;
  double lambda = 1e-3;

  for (int iter = 0; iter < 120; ++iter) {
    // Numeric Jacobian.
    std::vector<std::vector<double>> J(m, std::vector<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
      double h = 1e-6 * std::max(1.0, std::fabs(x[j]));
      auto xp = x;
      xp[j] += h;
      std::vector<double> fp;
      if (!residual_vec(xp, fp)) {
        xp[j] = x[j] - h;
        if (!residual_vec(xp, fp)) return std::nullopt;
        for (std::size_t i = 0; i < m; ++i) J[i][j] = (fx[i] - fp[i]) / h;
        continue;
      }
      for (std::size_t i = 0; i < m; ++i) J[i][j] = (fp[i] - fx[i]) / h;
    }
    // Normal equations (JtJ + lambda I) d = -Jt f, solved by LU.
    std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
    std::vector<double> b(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        b[j] -= J[i][j] * fx[i];
        for (std::size_t k = 0; k <= j; ++k) A[j][k] += J[i][j] * J[i][k];
      }
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) A[j][k] = A[k][j];
      A[j][j] += lambda * (1.0 + A[j][j]);
    }
    // LU with partial pivoting.
    std::vector<double> d = b;
    {
      std::vector<std::vector<double>> M = A;
      std::vector<int> piv(n);
      bool singular = false;
      for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t rr = c + 1; rr < n; ++rr)
          if (std::fabs(M[rr][c]) > std::fabs(M[p][c])) p = rr;
        if (std::fabs(M[p][c]) < 1e-300) {
          singular = true;
          break;
        }
        std::swap(M[c], M[p]);
        std::swap(d[c], d[p]);
        for (std::size_t rr = c + 1; rr < n; ++rr) {
          double f = M[rr][c] / M[c][c];
          for (std::size_t cc = c; cc < n; ++cc) M[rr][cc] -= f * M[c][cc];
          d[rr] -= f * d[c];
        }
      }
      if (singular) {
        lambda *= 10;
        if (lambda > 1e8) return std::nullopt;
        continue;
      }
      for (std::size_t c = n; c-- > 0;) {
        for (std::size_t cc = c + 1; cc < n; ++cc) d[c] -= M[c][cc] * d[cc];
        d[c] /= M[c][c];
      }
    }
    auto xn = x;
    for (std::size_t j = 0; j < n; ++j) {
      xn[j] += d[j];
      // Keep iterates strictly inside open domains.
      const VarDomain& dm = domains[vars[j]];
      if (std::isfinite(dm.lo) && xn[j] <= dm.lo)
        xn[j] = dm.lo + 1e-9 * std::max(1.0, std::fabs(dm.lo));
      if (std::isfinite(dm.hi) && xn[j] >= dm.hi)
        xn[j] = dm.hi - 1e-9 * std::max(1.0, std::fabs(dm.hi));
    }
    std::vector<double> fn;
    if (!residual_vec(xn, fn)) {
      lambda *= 10;
      if (lambda > 1e8) return std::nullopt;
      continue;
    }
    if (norm2(fn) < norm2(fx)) {
      x = std::move(xn);
      fx = std::move(fn);
      lambda = std::max(lambda * 0.3, 1e-9);
      double step = 0;
      for (double v : d) step = std::max(step, std::fabs(v));
      if (step < 1e-12) break;
    } else {
      lambda *= 10;
      if (lambda > 1e8) break;
    }
  }

  fill(x);
  for (std::size_t i = 0; i < m; ++i) {
    double fi = eval_expr(*residuals[i], values);
    double scale = eval_scale(*residuals[i], values);
    if (std::isnan(fi) || std::fabs(fi) > kResidualTol * scale)
      return std::nullopt;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const VarDomain& dm = domains[vars[j]];
    if (!dm.contains(x[j])) return std::nullopt;
    // A solution hugging an open bound is a degenerate configuration the
    // clamping walked into, not a real root.
    double margin = 1e-4;
    if (std::isfinite(dm.lo) && x[j] - dm.lo < margin) return std::nullopt;
    if (std::isfinite(dm.hi) && dm.hi - x[j] < margin) return std::nullopt;
  }
  return x;
}

}  // namespace detail

// Solves the system for `goal_var`.  `num_vars` is the variable-id bound;
// `domains` is indexed by variable id.
inline SolveResult solve_system(const std::vector<SystemEquation>& equations,
                                const std::vector<VarDomain>& domains,
                                int goal_var, int num_vars) {
  using namespace detail;
  SolveResult result;
  result.assignment.assign(static_cast<std::size_t>(num_vars),
                           std::nan(""));
  std::vector<double>& known = result.assignment;

  // Magnitude hint for root-scan windows.
  double magnitude = 1.0;
  for (const auto& eq : equations) {
    std::vector<double> cs;
    collect_constants(eq.residual, cs);
    for (double c : cs) magnitude = std::max(magnitude, std::fabs(c));
  }

  bool progress = true;
  while (progress) {
    progress = false;

    // Linear phase.
    std::vector<LinearRow> rows;
    for (const auto& eq : equations) {
      auto aff = to_affine(eq.residual, known);
      if (!aff) continue;
      LinearRow row;
      row.rhs = -aff->constant;
      row.coeffs = aff->coeffs;
      rows.push_back(std::move(row));
    }
    if (!eliminate_linear(std::move(rows), known, progress)) {
      result.status = SolveStatus::inconsistent;
      return result;
    }

    if (progress) continue;

    // Univariate nonlinear phase: equations with exactly one unknown.
    // Affine residuals were already handled by elimination (a residual that
    // cancels to a constant has no root structure worth scanning).
    for (const auto& eq : equations) {
      if (to_affine(eq.residual, known)) continue;
      std::set<int> vars;
      collect_vars(eq.residual, vars);
      std::vector<int> unknown;
      for (int v : vars)
        if (std::isnan(known[v])) unknown.push_back(v);
      if (unknown.size() != 1) continue;
      int v = unknown[0];
      double known_mag = magnitude;
      for (double kv : known)
        if (!std::isnan(kv)) known_mag = std::max(known_mag, std::fabs(kv));
      auto roots = univariate_roots(eq.residual, v, known, domains[v],
                                    known_mag);
      if (roots.empty()) {
        // Constant-free equation with no root in domain: inconsistent.
        result.status = SolveStatus::inconsistent;
        return result;
      }
      if (roots.size() == 1) {
        known[v] = roots[0];
        progress = true;
      } else if (v == goal_var) {
        // Check whether other equations disambiguate; conservatively filter
        // roots through every equation where v is the sole unknown.
        std::vector<double> survivors;
        for (double r : roots) {
          auto trial = known;
          trial[v] = r;
          bool ok = true;
          for (const auto& other : equations) {
            std::set<int> ovars;
            collect_vars(other.residual, ovars);
            bool only_v = true;
            for (int ov : ovars)
              if (ov != v && std::isnan(known[ov])) only_v = false;
            if (!only_v || !ovars.count(v)) continue;
            double fr = eval_expr(other.residual, trial);
            double scale = eval_scale(other.residual, trial);
            if (std::isnan(fr) || std::fabs(fr) > kResidualTol * scale) {
              ok = false;
              break;
            }
          }
          if (ok) survivors.push_back(r);
        }
        if (survivors.size() == 1) {
          known[v] = survivors[0];
          progress = true;
        } else if (survivors.size() > 1) {
          result.status = SolveStatus::multiple_solutions;
          return result;
        } else {
          result.status = SolveStatus::inconsistent;
          return result;
        }
      }
    }

    // Verify fully-determined equations.
    for (const auto& eq : equations) {
      std::set<int> vars;
      collect_vars(eq.residual, vars);
      bool all_known = true;
      for (int v : vars)
        if (std::isnan(known[v])) all_known = false;
      if (!all_known) continue;
      double r = eval_expr(eq.residual, known);
      double scale = eval_scale(eq.residual, known);
      if (!std::isnan(r) && std::fabs(r) > kResidualTol * scale) {
        result.status = SolveStatus::inconsistent;
        return result;
      }
    }
  }

  if (goal_var >= 0 && !std::isnan(known[goal_var])) {
    result.status = SolveStatus::solved;
    result.value = known[goal_var];
    return result;
  }

  // Multi-start Gauss-Newton over the connected unknown core.
  std::vector<const Expr*> residuals;
  std::set<int> unknown_set;
  for (const auto& eq : equations) {
    std::set<int> vars;
    collect_vars(eq.residual, vars);
    bool has_unknown = false;
    for (int v : vars)
      if (std::isnan(known[v])) has_unknown = true;
    if (has_unknown) {
      residuals.push_back(&eq.residual);
      for (int v : vars)
        if (std::isnan(known[v])) unknown_set.insert(v);
    }
  }
  if (goal_var < 0 || !unknown_set.count(goal_var) || residuals.empty() ||
      unknown_set.size() > 30) {
    result.status = SolveStatus::undetermined;
    return result;
  }
  std::vector<int> vars(unknown_set.begin(), unknown_set.end());

  auto candidates_for = [&](int v) {
    const VarDomain& d = domains[v];
    std::vector<double> c;
    if (d.lo == 0.0 && d.hi == 180.0)
      c = {30, 45, 60, 90, 120, 150};
    else if (d.lo == 0.0 && d.hi == 360.0)
      c = {45, 90, 180, 270};
    else if (d.lo == 0.0)
      c = {1, 3, 10, 40, 100, 400};
    else
      c = {0, 1, -1, 10, -10, 100};
    return c;
  };

  // Deterministic scattered starts: correlated or symmetric starts would
  // let a symmetric system collapse every run onto one spurious point.
  std::vector<std::vector<double>> solutions;
  const int kStarts = 24;
  Rng start_rng(0x5EEDCAFEF00Dull);
  for (int s = 0; s < kStarts; ++s) {
    std::vector<double> start(vars.size());
    for (std::size_t j = 0; j < vars.size(); ++j) {
      auto cand = candidates_for(vars[j]);
      double base = cand[start_rng.below(cand.size())];
      start[j] = base * (0.8 + 0.4 * start_rng.uniform());
    }
    auto sol = detail::gauss_newton(residuals, vars, domains, known, start);
    if (sol) solutions.push_back(*sol);
  }
  if (solutions.empty()) {
    result.status = SolveStatus::undetermined;
    return result;
  }
  std::size_t gidx =
      std::find(vars.begin(), vars.end(), goal_var) - vars.begin();
  double gv = solutions[0][gidx];
  for (const auto& s : solutions)
    if (std::fabs(s[gidx] - gv) > 1e-6 * std::max(1.0, std::fabs(gv))) {
      result.status = SolveStatus::multiple_solutions;
      return result;
    }
  for (std::size_t j = 0; j < vars.size(); ++j)
    known[vars[j]] = solutions[0][j];
  result.status = SolveStatus::solved;
  result.value = gv;
  return result;
}

}  // namespace symgeo
