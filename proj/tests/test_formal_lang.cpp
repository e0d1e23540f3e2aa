#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "symgeo/normalize.hpp"
#include "symgeo/parse.hpp"
#include "symgeo/validate.hpp"

using namespace symgeo;

TEST_CASE("registry holds the full predicate table") {
  const Registry& reg = builtin_registry();
  CHECK(reg.predicates().size() == 91);
  CHECK(reg.count(Category::shape) == 20);
  CHECK(reg.count(Category::unary_attribute) == 9);
  CHECK(reg.count(Category::general_attribute) == 17);
  CHECK(reg.count(Category::binary_relation) == 12);
  CHECK(reg.count(Category::is_x_of_relation) == 15);
  CHECK(reg.count(Category::numeric) == 18);
  CHECK(reg.find("PointLiesOnLine") != nullptr);
  CHECK(reg.find("pointliesonline") == nullptr);  // names are case-sensitive
}

TEST_CASE("parse_literal on reference inputs") {
  Literal l = parse_literal("Find(AreaOf(Triangle(A,B,C)))");
  CHECK(l.head() == "Find");
  REQUIRE(l.arity() == 1);
  const Literal& area = l.arg(0).as_literal();
  CHECK(area.head() == "AreaOf");
  CHECK(area.arg(0).as_literal().head() == "Triangle");

  Literal p = parse_literal("Point(A)");
  CHECK(p.head() == "Point");
  CHECK(p.arg(0).is_identifier());
  CHECK(p.arg(0).text() == "A");

  Literal eq = parse_literal("Equals(LengthOf(Line(A,B)),x)");
  CHECK(eq.arg(0).as_literal().head() == "LengthOf");
  CHECK(eq.arg(1).is_variable());
  CHECK(eq.arg(1).text() == "x");

  // whitespace-insensitive; numbers parsed as reals
  Literal ws = parse_literal("  Equals( MeasureOf( Angle(A,B,C) ) , 41.5 )");
  CHECK(ws.arg(1).as_number() == 41.5);

  // lowercase token in a name position is an identifier, not a variable
  Literal line = parse_literal("Line(m)");
  CHECK(line.arg(0).is_identifier());
}

TEST_CASE("parse_literal failures carry byte offsets") {
  auto offset_of = [](const std::string& text) -> std::size_t {
    try {
      parse_literal(text);
    } catch (const ParseError& e) {
      return e.offset();
    }
    return static_cast<std::size_t>(-1);
  };
  CHECK(offset_of("Nonsense(A)") == 0);              // unknown predicate
  CHECK(offset_of("Triangle(A,B)") == 0);            // arity mismatch at head
  CHECK(offset_of("Equals(Line(A,B),5)") == 7);      // sort mismatch at arg
  CHECK(offset_of("Find(AreaOf(Triangle(A,B,C))") != static_cast<std::size_t>(-1));
  CHECK_THROWS_AS(parse_literal(""), ParseError);
  CHECK_THROWS_AS(parse_literal("Point(A) junk"), ParseError);
}

TEST_CASE("serialize round-trips the canonical form") {
  CHECK(serialize_literal(parse_literal("Point(A)")) == "Point(A)");
  CHECK(serialize_literal(normalize_literal(parse_literal("Line(B,A)"))) ==
        "Line(A,B)");
  CHECK(serialize_literal(parse_literal("Find(AreaOf(Triangle(A,B,C)))")) ==
        "Find(AreaOf(Triangle(A,B,C)))");
}

TEST_CASE("round-trip identity over all registry templates") {
  const Registry& reg = builtin_registry();
  int checked = 0;
  for (const auto& pred : reg.predicates()) {
    for (const auto& tmpl : pred.templates) {
      Literal l = parse_literal(tmpl, reg);
      Literal back = parse_literal(serialize_literal(l), reg);
      CHECK(back == l);
      ++checked;
    }
  }
  CHECK(checked >= 91);
}

TEST_CASE("round-trip identity on generated literals") {
  Rng rng(2024);
  for (int i = 0; i < 600; ++i) {
    Literal l = testing::random_literal(rng);
    REQUIRE(validate_literal(l).ok());
    Literal back = parse_literal(serialize_literal(l));
    CHECK(back == l);
    // Normalization is idempotent.
    Literal n = normalize_literal(l);
    CHECK(normalize_literal(n) == n);
    // ... and representatives survive the textual round trip too.
    CHECK(parse_literal(serialize_literal(n)) == n);
  }
}

TEST_CASE("normalization of symmetric spellings") {
  auto norm = [](const char* s) {
    return serialize_literal(normalize_literal(parse_literal(s)));
  };
  CHECK(norm("Line(B,A)") == "Line(A,B)");
  CHECK(norm("Angle(C,B,A)") == "Angle(A,B,C)");  // vertex stays put
  CHECK(norm("Add(y,x,3)") == "Add(3,x,y)");
  CHECK(norm("Triangle(C,A,B)") == "Triangle(A,B,C)");
  CHECK(norm("Quadrilateral(B,C,D,A)") == "Quadrilateral(A,B,C,D)");
  CHECK(norm("Quadrilateral(D,C,B,A)") == "Quadrilateral(A,B,C,D)");
  // Vertex cycles that are not rotations/reflections stay distinct.
  CHECK(norm("Quadrilateral(A,B,D,C)") != norm("Quadrilateral(A,B,C,D)"));
  // Point wrappers unwrap at point positions.
  CHECK(norm("PointLiesOnLine(Point(A),Line(C,B))") ==
        "PointLiesOnLine(A,Line(B,C))");
  // Congruent keeps positional correspondence under joint transforms.
  Literal a = normalize_literal(
      parse_literal("Congruent(Triangle(B,A,C),Triangle(E,D,F))"));
  Literal b = normalize_literal(
      parse_literal("Congruent(Triangle(A,B,C),Triangle(D,E,F))"));
  CHECK(a == b);
  Literal c = normalize_literal(
      parse_literal("Congruent(Triangle(A,B,C),Triangle(E,D,F))"));
  CHECK(c != b);  // a different correspondence is a different statement
}

TEST_CASE("normalization equivalence classes match brute-force permutation") {
  // For each symmetric head: every argument permutation in the head's
  // symmetry group maps to the same representative, anything else does not.
  struct Case {
    const char* text;
    // ground-truth group as permutations of argument indices
    std::vector<std::vector<std::size_t>> group;
  };
  auto all3 = detail::all_perms(3);
  auto all2 = detail::all_perms(2);
  std::vector<Case> cases = {
      {"Line(A,B)", all2},
      {"Arc(A,B)", all2},
      {"Equals(x,y)", all2},
      {"Angle(A,B,C)", {{0, 1, 2}, {2, 1, 0}}},
      {"Triangle(A,B,C)", all3},
      {"Add(1,x,y)", all3},
      {"Quadrilateral(A,B,C,D)", detail::dihedral_perms(4)},
      {"Parallelogram(A,B,C,D)", detail::dihedral_perms(4)},
      {"Pentagon(A,B,C,D,E)", detail::dihedral_perms(5)},
  };
  for (const auto& c : cases) {
    Literal base = parse_literal(c.text);
    Literal rep = normalize_literal(base);
    auto in_group = [&](const std::vector<std::size_t>& perm) {
      for (const auto& g : c.group)
        if (g == perm) return true;
      return false;
    };
    std::vector<std::size_t> perm(base.arity());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    do {
      Literal spelled = base.with_args(detail::apply_perm(base.args(), perm));
      bool same = normalize_literal(spelled) == rep;
      CHECK(same == in_group(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("spellings cover exactly the equivalence class") {
  Rng rng(77);
  for (int i = 0; i < 200; ++i) {
    Literal l = normalize_literal(testing::random_literal(rng));
    auto sp = spellings(l);
    CHECK(!sp.empty());
    for (const auto& s : sp) CHECK(normalize_literal(s) == l);
  }
}

TEST_CASE("validate_literal reports violations as data") {
  CHECK(validate_literal(
            parse_literal("PointLiesOnLine(Point(A),Line(B,C))"))
            .ok());

  Literal bad_arity("Triangle",
                    {Term::identifier("A"), Term::identifier("B")});
  auto rep1 = validate_literal(bad_arity);
  REQUIRE(!rep1.ok());
  CHECK(rep1.issues[0].code == IssueCode::arity_mismatch);

  Literal bad_sort(
      "Equals",
      {Term::literal(Literal("Line", {Term::identifier("A"),
                                      Term::identifier("B")})),
       Term::number(5)});
  auto rep2 = validate_literal(bad_sort);
  REQUIRE(!rep2.ok());
  CHECK(rep2.issues[0].code == IssueCode::sort_mismatch);

  Literal unknown("Frobnicate", {Term::identifier("A")});
  auto rep3 = validate_literal(unknown);
  REQUIRE(!rep3.ok());
  CHECK(rep3.issues[0].code == IssueCode::unknown_predicate);

  // Slots are fine in patterns, flagged in ground literals.
  Literal slotty = parse_literal("Triangle($1,$2,$3)");
  CHECK(validate_pattern(slotty, builtin_registry()).ok());
  CHECK(!validate_literal(slotty).ok());
}

TEST_CASE("every violation class is detected") {
  // unknown predicate / arity / sort / non-ground / non-finite number
  std::vector<Literal> bad = {
      Literal("NoSuchThing", {Term::identifier("A")}),
      Literal("Point", {Term::identifier("A"), Term::identifier("B")}),
      Literal("Find", {Term::literal(Literal(
                 "Triangle", {Term::identifier("A"), Term::identifier("B"),
                              Term::identifier("C")}))}),
      Literal("Point", {Term::slot("$1")}),
      Literal("Equals",
              {Term::number(std::numeric_limits<double>::infinity()),
               Term::number(1)}),
  };
  std::set<IssueCode> seen;
  for (const auto& l : bad) {
    auto rep = validate_literal(l);
    REQUIRE(!rep.ok());
    for (const auto& issue : rep.issues) seen.insert(issue.code);
  }
  CHECK(seen.count(IssueCode::unknown_predicate));
  CHECK(seen.count(IssueCode::arity_mismatch));
  CHECK(seen.count(IssueCode::sort_mismatch));
  CHECK(seen.count(IssueCode::not_ground));
  CHECK(seen.count(IssueCode::bad_number));
}

TEST_CASE("number formatting round-trips exactly") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    double v = (rng.uniform() - 0.5) * std::pow(10.0, double(rng.below(7)));
    Literal l("Equals", {Term::variable("x"), Term::number(v)});
    Literal back = parse_literal(serialize_literal(l));
    CHECK(back.arg(1).as_number() == v);
  }
}
