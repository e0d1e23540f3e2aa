#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "symgeo/relation_set.hpp"

using namespace symgeo;

namespace {

RelationSet make_set(const std::vector<std::string>& lits) {
  std::vector<Literal> parsed;
  for (const auto& s : lits) parsed.push_back(parse_literal(s));
  return init_relation_set(parsed);
}

std::vector<Literal> parse_all(const std::vector<std::string>& lits) {
  std::vector<Literal> out;
  for (const auto& s : lits) out.push_back(parse_literal(s));
  return out;
}

}  // namespace

TEST_CASE("init keeps the normalized input") {
  RelationSet r = make_set({"Triangle(A,B,C)"});
  CHECK(r.literal_count() == 1);
  CHECK(r.contains(parse_literal("Triangle(C,B,A)")));  // spelling-insensitive
}

TEST_CASE("Equals literals mirror into the equation store") {
  RelationSet r = make_set({"Equals(LengthOf(Line(A,B)),5)"});
  CHECK(r.equation_count() == 1);
  auto id = r.var_of(parse_literal("LengthOf(Line(B,A))").arg(0)
                         .is_literal()
                     ? Term::literal(parse_literal("LengthOf(Line(B,A))"))
                     : Term::variable("x"));
  // the measurable term got a variable with a positive domain
  auto vid = r.var_of(Term::literal(parse_literal("LengthOf(Line(A,B))")));
  REQUIRE(vid.has_value());
  CHECK(r.vars().info(*vid).domain.lo == 0.0);
  (void)id;
}

TEST_CASE("contradictory numeric bindings are rejected at init") {
  CHECK_THROWS_AS(make_set({"Equals(x,3)", "Equals(x,4)"}),
                  InconsistencyError);
}

TEST_CASE("triangle expands into its six constituents") {
  RelationSet r = make_set({"Triangle(A,B,C)"});
  r.expand_definitions();
  std::vector<std::string> expected = {
      "Line(A,B)",   "Line(A,C)",   "Line(B,C)", "Point(A)",
      "Point(B)",    "Point(C)",    "Triangle(A,B,C)"};
  std::vector<std::string> got;
  for (const auto& l : r.literals()) got.push_back(serialize_literal(l));
  CHECK(got == expected);
}

TEST_CASE("point with no definition is already at fixpoint") {
  RelationSet r = make_set({"Point(A)"});
  CHECK(!r.expand_definitions());
  CHECK(r.literal_count() == 1);
}

TEST_CASE("square expansion adds sides, right angles, and side equalities") {
  RelationSet r = make_set({"Square(A,B,C,D)"});
  r.expand_definitions();
  for (const char* pt : {"Point(A)", "Point(B)", "Point(C)", "Point(D)"})
    CHECK(r.contains(parse_literal(pt)));
  for (const char* side :
       {"Line(A,B)", "Line(B,C)", "Line(C,D)", "Line(A,D)"})
    CHECK(r.contains(parse_literal(side)));
  int right_angles = 0;
  for (const auto& l : r.literals())
    if (l.head() == "RightAngle") ++right_angles;
  CHECK(right_angles == 4);
  // side equalities arrive as mirrored equations
  CHECK(r.contains(parse_literal(
      "Equals(LengthOf(Line(A,B)),LengthOf(Line(B,C)))")));
  CHECK(r.equation_count() >= 7);  // 3 rhombus sides + 4 right angles
}

TEST_CASE("expansion is idempotent and monotone") {
  Rng rng(11);
  for (int i = 0; i < 40; ++i) {
    RelationSet r(builtin_registry());
    for (int k = 0; k < 4; ++k) {
      Literal l = testing::random_literal(rng);
      if (validate_literal(l).ok()) r.insert(l);
    }
    auto before_lits = r.literals();
    auto before_eqs = r.equation_count();
    r.expand_definitions();
    // monotone: everything that was there is still there
    for (const auto& l : before_lits) CHECK(r.literals().count(l) == 1);
    CHECK(r.equation_count() >= before_eqs);
    // idempotent: a second pass adds nothing
    auto after = r.literals();
    CHECK(!r.expand_definitions());
    CHECK(r.literals() == after);
  }
}

TEST_CASE("betweenness adds the segment-addition constraint") {
  RelationSet r = make_set({"PointLiesOnLine(C,Line(A,B))"});
  r.expand_definitions();
  CHECK(r.contains(parse_literal("Line(A,C)")));
  CHECK(r.contains(parse_literal("Line(B,C)")));
  CHECK(r.contains(parse_literal(
      "Equals(SumOf(LengthOf(Line(A,C)),LengthOf(Line(B,C))),"
      "LengthOf(Line(A,B)))")));
}

TEST_CASE("match_premise enumerates bindings canonically") {
  RelationSet r = make_set({"Triangle(A,B,C)"});
  auto bindings = r.match_premise(parse_all({"Triangle($1,$2,$3)"}));
  REQUIRE(bindings.size() == 1);  // one binding per instantiated-premise class
  CHECK(bindings[0].repr() == "$1=A,$2=B,$3=C");
}

TEST_CASE("match_premise returns empty on absent relations") {
  RelationSet r = make_set({"Triangle(A,B,C)"});
  auto bindings =
      r.match_premise(parse_all({"Parallel(Line($1,$2),Line($3,$4))"}));
  CHECK(bindings.empty());
}

TEST_CASE("match_premise handles shared slots across literals") {
  RelationSet r = make_set({"Triangle(A,B,C)", "RightAngle(Angle(A,C,B))",
                            "Triangle(B,C,D)"});
  auto bindings = r.match_premise(
      parse_all({"Triangle($1,$2,$3)", "RightAngle(Angle($1,$2,$3))"}));
  REQUIRE(bindings.size() == 1);
  // the right angle pins the vertex assignment up to the premise class
  CHECK(bindings[0].repr() == "$1=A,$2=C,$3=B");
}

TEST_CASE("match_premise equals the brute-force oracle on random instances") {
  Rng rng(404);
  int nonempty = 0;
  for (int i = 0; i < 250; ++i) {
    auto inst = testing::random_match_instance(rng);
    RelationSet r(builtin_registry());
    for (const auto& l : inst.ground) r.insert(l);
    auto got = r.match_premise(inst.premise);
    auto expected = testing::brute_force_match(inst.premise, r);
    REQUIRE(got.size() == expected.size());
    for (std::size_t k = 0; k < got.size(); ++k) CHECK(got[k] == expected[k]);
    if (!got.empty()) ++nonempty;
  }
  CHECK(nonempty > 100);  // the instances genuinely exercise matching
}

TEST_CASE("add_conclusion instantiates and reports growth") {
  RelationSet r = make_set({"Triangle(A,B,C)"});
  Binding b;
  b.slots.emplace("$1", Term::identifier("A"));
  b.slots.emplace("$2", Term::identifier("B"));
  b.slots.emplace("$3", Term::identifier("C"));

  // adding an already-present literal leaves the set unchanged
  CHECK(!r.add_conclusion(parse_all({"Triangle($1,$2,$3)"}), b, "test"));

  // the angle-sum conclusion lands as literal plus mirrored equation
  std::size_t eqs = r.equation_count();
  bool changed = r.add_conclusion(
      parse_all({"Equals(SumOf(MeasureOf(Angle($1,$2,$3)),"
                 "MeasureOf(Angle($2,$3,$1)),MeasureOf(Angle($3,$1,$2))),"
                 "180)"}),
      b, "test");
  CHECK(changed);
  CHECK(r.equation_count() == eqs + 1);

  // unbound slots are a rule-programming error
  CHECK_THROWS_AS(
      r.add_conclusion(parse_all({"Point($9)"}), b, "rule 99"),
      RuleInstantiationError);
}

TEST_CASE("equation dump is sorted and stable") {
  RelationSet r = make_set({"Equals(x,3)", "Equals(y,4)", "Triangle(A,B,C)"});
  std::string d1 = r.dump();
  std::string d2 = r.dump();
  CHECK(d1 == d2);
  CHECK(d1.find("Triangle(A,B,C)") != std::string::npos);
  CHECK(d1.find("-- equations --") != std::string::npos);
}
