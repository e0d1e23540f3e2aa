// Canonicalization of literals.  Every symmetry-equivalent spelling of a
// ground literal maps to one representative:
//
//   Line(B,A)            -> Line(A,B)           endpoints sorted
//   Angle(C,B,A)         -> Angle(A,B,C)        vertex fixed, ends sorted
//   Triangle(C,A,B)      -> Triangle(A,B,C)     vertex set sorted
//   Quadrilateral(BCDA)  -> minimal rotation/reflection of the cycle
//   Add(y,x,3)           -> Add(3,x,y)          commutative args sorted
//   Congruent(P,Q)       -> joint minimum: the same vertex transform is
//                           applied to both polygons so positional
//                           correspondence is preserved
//   PointLiesOnLine(Point(A),...) -> PointLiesOnLine(A,...)
//
// `spellings` enumerates the orbit of a ground literal under the same
// groups; premise matching uses it so patterns match modulo symmetry.

#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "symgeo/literal.hpp"
#include "symgeo/registry.hpp"

namespace symgeo {

Literal normalize_literal(const Literal& l, const Registry& reg);

namespace detail {

inline Term normalize_term(const Term& t, const Registry& reg) {
  if (t.is_literal()) return Term::literal(normalize_literal(t.as_literal(), reg));
  return t;
}

inline bool term_less(const Term& a, const Term& b) { return a < b; }

// Rotations and reflections of a vertex cycle, as index permutations.
inline std::vector<std::vector<std::size_t>> dihedral_perms(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<std::size_t> fwd(n), rev(n);
    for (std::size_t i = 0; i < n; ++i) {
      fwd[i] = (i + r) % n;
      rev[i] = (n + r - i) % n;
    }
    out.push_back(fwd);
    if (n > 2) out.push_back(rev);
  }
  return out;
}

inline std::vector<std::vector<std::size_t>> all_perms(std::size_t n) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::vector<std::vector<std::size_t>> out;
  do {
    out.push_back(idx);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

inline std::vector<Term> apply_perm(const std::vector<Term>& args,
                                    const std::vector<std::size_t>& perm) {
  std::vector<Term> out;
  out.reserve(args.size());
  for (std::size_t i : perm) out.push_back(args[i]);
  return out;
}

// Permutation group of argument positions for one head+arity, matching the
// registry's symmetry classes.  Fully-commutative heads are capped to keep
// enumeration bounded; in practice their arity stays small.
inline std::vector<std::vector<std::size_t>> symmetry_perms(
    const Predicate& pred, std::size_t n) {
  constexpr std::size_t kMaxFactorialArgs = 6;
  switch (pred.symmetry) {
    case Symmetry::none:
    case Symmetry::joint_pair:  // handled structurally, not positionally
      break;
    case Symmetry::sort_args:
      if (n >= 2 && n <= kMaxFactorialArgs) return all_perms(n);
      break;
    case Symmetry::middle_fixed:
      if (n == 2) return all_perms(2);
      if (n == 3) return {{0, 1, 2}, {2, 1, 0}};
      break;
    case Symmetry::cycle:
      if (pred.name == "Triangle") {
        if (n == 3) return all_perms(3);
      } else if (n >= 3) {
        return dihedral_perms(n);
      }
      break;
    case Symmetry::lines_then_point:
      if (n >= 3 && n - 1 <= kMaxFactorialArgs) {
        auto line_perms = all_perms(n - 1);
        std::vector<std::vector<std::size_t>> out;
        for (auto& p : line_perms) {
          p.push_back(n - 1);
          out.push_back(p);
        }
        return out;
      }
      break;
  }
  return {std::vector<std::size_t>()};  // identity marker
}

inline bool is_identity_marker(const std::vector<std::size_t>& p) {
  return p.empty();
}

inline bool all_ident_args(const Literal& l) {
  for (const auto& a : l.args())
    if (!a.is_identifier() && !a.is_slot()) return false;
  return true;
}

inline bool joint_pair_applicable(const Literal& l) {
  if (l.arity() != 2 || !l.arg(0).is_literal() || !l.arg(1).is_literal())
    return false;
  const Literal& p = l.arg(0).as_literal();
  const Literal& q = l.arg(1).as_literal();
  return p.head() == q.head() && p.arity() == q.arity() &&
         is_vertex_polygon_head(p.head()) && all_ident_args(p) &&
         all_ident_args(q) && p.arity() >= 3;
}

// Vertex transforms legal for one polygon: S3 for triangles, dihedral
// otherwise.
inline std::vector<std::vector<std::size_t>> polygon_perms(
    const std::string& head, std::size_t n) {
  if (head == "Triangle" && n == 3) return all_perms(3);
  return dihedral_perms(n);
}

// Unwraps Point(X) wrappers at point-sorted positions.
inline Term unwrap_point(const Term& t) {
  if (t.is_literal() && t.as_literal().head() == "Point" &&
      t.as_literal().arity() == 1 && t.as_literal().arg(0).is_identifier())
    return t.as_literal().arg(0);
  return t;
}

}  // namespace detail

inline Literal normalize_literal(const Literal& l, const Registry& reg) {
  using namespace detail;
  const Predicate* pred = reg.find(l.head());

  // Joint canonicalization for Congruent/Similar keeps correspondence.
  if (pred && pred->symmetry == Symmetry::joint_pair &&
      joint_pair_applicable(l)) {
    const Literal& p0 = l.arg(0).as_literal();
    const Literal& q0 = l.arg(1).as_literal();
    auto perms = polygon_perms(p0.head(), p0.arity());
    Literal best;
    bool have = false;
    for (int swap = 0; swap < 2; ++swap) {
      const Literal& p = swap ? q0 : p0;
      const Literal& q = swap ? p0 : q0;
      for (const auto& perm : perms) {
        Literal cand(l.head(),
                     {Term::literal(p.with_args(apply_perm(p.args(), perm))),
                      Term::literal(q.with_args(apply_perm(q.args(), perm)))});
        if (!have || cand < best) {
          best = std::move(cand);
          have = true;
        }
      }
    }
    return best;
  }

  std::vector<Term> args;
  args.reserve(l.arity());
  const Form* form = pred ? pred->form_for_arity(l.arity()) : nullptr;
  for (std::size_t i = 0; i < l.arity(); ++i) {
    Term a = normalize_term(l.arg(i), reg);
    if (form && form->sort_at(i, l.arity()) == Sort::point)
      a = unwrap_point(a);
    args.push_back(std::move(a));
  }
  if (!pred) return Literal(l.head(), std::move(args));

  switch (pred->symmetry) {
    case Symmetry::none:
    case Symmetry::joint_pair:
      break;
    case Symmetry::sort_args:
      std::stable_sort(args.begin(), args.end(), term_less);
      break;
    case Symmetry::middle_fixed:
      if (args.size() == 2) {
        if (args[1] < args[0]) std::swap(args[0], args[1]);
      } else if (args.size() == 3) {
        if (args[2] < args[0]) std::swap(args[0], args[2]);
      }
      break;
    case Symmetry::cycle: {
      auto perms = symmetry_perms(*pred, args.size());
      if (!(perms.size() == 1 && is_identity_marker(perms[0]))) {
        std::vector<Term> best = args;
        for (const auto& perm : perms) {
          if (is_identity_marker(perm)) continue;
          auto cand = apply_perm(args, perm);
          if (std::lexicographical_compare(cand.begin(), cand.end(),
                                           best.begin(), best.end()))
            best = std::move(cand);
        }
        args = std::move(best);
      }
      break;
    }
    case Symmetry::lines_then_point:
      if (args.size() >= 3)
        std::stable_sort(args.begin(), args.end() - 1, term_less);
      break;
  }
  return Literal(l.head(), std::move(args));
}

inline Literal normalize_literal(const Literal& l) {
  return normalize_literal(l, builtin_registry());
}

// All spellings of a ground literal that normalize to the same
// representative.  Used by the premise matcher; bounded by construction
// (shallow nesting, small arity).
inline std::vector<Literal> spellings(const Literal& l, const Registry& reg) {
  using namespace detail;
  const Predicate* pred = reg.find(l.head());

  if (pred && pred->symmetry == Symmetry::joint_pair &&
      joint_pair_applicable(l)) {
    const Literal& p0 = l.arg(0).as_literal();
    const Literal& q0 = l.arg(1).as_literal();
    auto perms = polygon_perms(p0.head(), p0.arity());
    std::vector<Literal> out;
    for (int swap = 0; swap < 2; ++swap) {
      const Literal& p = swap ? q0 : p0;
      const Literal& q = swap ? p0 : q0;
      for (const auto& perm : perms)
        out.emplace_back(
            l.head(),
            std::vector<Term>{
                Term::literal(p.with_args(apply_perm(p.args(), perm))),
                Term::literal(q.with_args(apply_perm(q.args(), perm)))});
    }
    return out;
  }

  // Spellings of each argument (recursing into nested literals).
  std::vector<std::vector<Term>> arg_options;
  for (const auto& a : l.args()) {
    std::vector<Term> opts;
    if (a.is_literal()) {
      for (auto& s : spellings(a.as_literal(), reg))
        opts.push_back(Term::literal(std::move(s)));
    } else {
      opts.push_back(a);
    }
    arg_options.push_back(std::move(opts));
  }
  std::vector<std::vector<Term>> combos{{}};
  for (const auto& opts : arg_options) {
    std::vector<std::vector<Term>> next;
    for (const auto& base : combos)
      for (const auto& o : opts) {
        auto ext = base;
        ext.push_back(o);
        next.push_back(std::move(ext));
      }
    combos = std::move(next);
    if (combos.size() > 4096) combos.resize(4096);
  }

  std::vector<Literal> out;
  auto perms =
      pred ? symmetry_perms(*pred, l.arity())
           : std::vector<std::vector<std::size_t>>{std::vector<std::size_t>()};
  for (const auto& combo : combos) {
    for (const auto& perm : perms) {
      if (is_identity_marker(perm))
        out.emplace_back(l.head(), combo);
      else
        out.emplace_back(l.head(), apply_perm(combo, perm));
    }
  }
  return out;
}

inline std::vector<Literal> spellings(const Literal& l) {
  return spellings(l, builtin_registry());
}

}  // namespace symgeo
