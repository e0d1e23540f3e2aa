#include <catch2/catch_amalgamated.hpp>

#include "symgeo/text_parser.hpp"
#include "symgeo/validate.hpp"

using namespace symgeo;

namespace {

std::string data_file(const char* name) {
  return std::string(SYMGEO_DATA_DIR) + "/" + name;
}

const TextRuleTable& table() {
  static TextRuleTable t = TextRuleTable::load(data_file("text_rules.json"));
  return t;
}

std::multiset<std::string> as_set(const std::vector<Literal>& ls) {
  std::multiset<std::string> out;
  for (const auto& l : ls) out.insert(serialize_literal(l));
  return out;
}

std::multiset<std::string> expect(const std::vector<std::string>& ls) {
  std::multiset<std::string> out;
  for (const auto& s : ls)
    out.insert(serialize_literal(normalize_literal(parse_literal(s))));
  return out;
}

}  // namespace

TEST_CASE("find sentences parse to goals") {
  auto res = table().parse_text("Find x.");
  CHECK(as_set(res.literals) == expect({"Find(x)"}));
  CHECK(res.warnings.empty());
}

TEST_CASE("shape mention plus measurement") {
  auto res = table().parse_text("In triangle ABC, AB = 5.");
  CHECK(as_set(res.literals) ==
        expect({"Triangle(A,B,C)", "Equals(LengthOf(Line(A,B)),5)"}));
}

TEST_CASE("non-geometric text yields warnings, never failures") {
  auto res = table().parse_text("The weather is nice.");
  CHECK(res.literals.empty());
  REQUIRE(res.warnings.size() == 1);
  CHECK(res.warnings[0].find("unmatched") != std::string::npos);
}

TEST_CASE("arithmetic phrases go through the infix sub-grammar") {
  auto res = table().parse_text("AB = 2x + 3.");
  CHECK(as_set(res.literals) ==
        expect({"Equals(LengthOf(Line(A,B)),Add(Mul(2,x),3))"}));

  auto res2 = table().parse_text("m angle ABC = 3x - 15.");
  CHECK(as_set(res2.literals) ==
        expect({"Equals(MeasureOf(Angle(A,B,C)),Sub(Mul(3,x),15))"}));
}

TEST_CASE("infix expression parser covers the operator set") {
  CHECK(serialize_term(parse_infix_expression("2x + 3")) ==
        "Add(Mul(2,x),3)");
  CHECK(serialize_term(parse_infix_expression("x^2")) == "Pow(x,2)");
  CHECK(serialize_term(parse_infix_expression("sqrt 3")) == "SqrtOf(3)");
  CHECK(serialize_term(parse_infix_expression("2(y-1)/4")) ==
        "Div(Mul(2,Sub(y,1)),4)");
  CHECK(serialize_term(parse_infix_expression("sin 30")) == "SinOf(30)");
  CHECK(serialize_term(parse_infix_expression("-x")) == "Mul(-1,x)");
  CHECK(serialize_term(parse_infix_expression("3 pi")) == "Mul(3,pi)");
  CHECK_THROWS(parse_infix_expression("2 +"));
  CHECK_THROWS(parse_infix_expression("hello world"));
}

TEST_CASE("unicode and latex markers are normalized before matching") {
  auto res = table().parse_text("m∠ABC = 40°.");
  CHECK(as_set(res.literals) ==
        expect({"Equals(MeasureOf(Angle(A,B,C)),40)"}));

  auto res2 = table().parse_text("m \\angle ABC = 25.");
  CHECK(as_set(res2.literals) ==
        expect({"Equals(MeasureOf(Angle(A,B,C)),25)"}));
}

TEST_CASE("numbered angles are supported") {
  auto res = table().parse_text("m angle 1 = 72. Find m angle 2.");
  CHECK(as_set(res.literals) == expect({"Equals(MeasureOf(Angle(1)),72)",
                                        "Find(MeasureOf(Angle(2)))"}));
}

TEST_CASE("relations parse from their phrasings") {
  auto res = table().parse_text(
      "AB is parallel to CD. Point E lies on line AB. "
      "M is the midpoint of EF. Triangle ABC is similar to triangle DEF.");
  auto got = as_set(res.literals);
  auto want = expect({"Parallel(Line(A,B),Line(C,D))",
                      "PointLiesOnLine(E,Line(A,B))",
                      "IsMidpointOf(M,Line(E,F))", "Triangle(A,B,C)",
                      "Triangle(D,E,F)",
                      "Similar(Triangle(A,B,C),Triangle(D,E,F))"});
  CHECK(got == want);
}

TEST_CASE("higher-priority matches consume their spans") {
  // "Find the area of circle O" must not also emit a bare Circle literal
  // match for the "circle O" sub-span.
  auto res = table().parse_text("Find the area of circle O.");
  CHECK(as_set(res.literals) == expect({"Find(AreaOf(Circle(O)))"}));
}

TEST_CASE("parsing is deterministic") {
  std::string text =
      "In triangle ABC, m angle ABC = 60 and m angle BCA = 80. "
      "Find m angle CAB.";
  auto a = table().parse_text(text);
  auto b = table().parse_text(text);
  CHECK(as_set(a.literals) == as_set(b.literals));
  CHECK(a.warnings == b.warnings);
}

TEST_CASE("every emitted literal validates cleanly") {
  std::vector<std::string> texts = {
      "In triangle ABC, m angle ABC = 60 and m angle BCA = 80.",
      "ABCD is a parallelogram with AB = 12 and BC = 7. Find CD.",
      "Points A and B lie on circle O. OA = 9. Find OB.",
      "Line AB is tangent to circle O at point A.",
      "AB is a diameter of circle O.",
      "The radius of circle O is 6. Find the area of circle O.",
  };
  for (const auto& t : texts) {
    auto res = table().parse_text(t);
    for (const auto& l : res.literals) {
      INFO(serialize_literal(l));
      CHECK(validate_literal(l).ok());
    }
  }
}

TEST_CASE("rule table coverage partitions the predicate registry") {
  const Registry& reg = builtin_registry();
  std::set<std::string> reachable;
  // predicates named in production templates
  for (const auto& rule : table().rules())
    for (const auto& prod : rule.productions) {
      std::regex head_re("([A-Z][A-Za-z]*)\\(");
      for (auto it = std::sregex_iterator(prod.begin(), prod.end(), head_re);
           it != std::sregex_iterator(); ++it)
        reachable.insert((*it)[1].str());
    }
  for (const auto& h : table().expression_heads()) reachable.insert(h);
  std::set<std::string> diagram_only(table().diagram_only().begin(),
                                     table().diagram_only().end());
  for (const auto& pred : reg.predicates()) {
    bool covered =
        reachable.count(pred.name) > 0 || diagram_only.count(pred.name) > 0;
    INFO(pred.name << " has no text rule and is not listed as diagram-only");
    CHECK(covered);
  }
  // the diagram-only list must not contradict the rule table
  for (const auto& name : diagram_only) {
    INFO(name << " is listed diagram-only but a rule produces it");
    CHECK(reachable.count(name) == 0);
  }
}

TEST_CASE("parser accuracy on constructed sets") {
  std::vector<AnnotatedText> all_match = {
      {"Find x.", {normalize_literal(parse_literal("Find(x)"))}},
      {"In triangle ABC, AB = 5.",
       {normalize_literal(parse_literal("Triangle(A,B,C)")),
        normalize_literal(parse_literal("Equals(LengthOf(Line(A,B)),5)"))}},
  };
  CHECK(parser_accuracy(table(), all_match) == 1.0);

  std::vector<AnnotatedText> half = all_match;
  half[1].expected = {normalize_literal(parse_literal("Circle(O)"))};
  CHECK(parser_accuracy(table(), half) == 0.5);

  CHECK_THROWS_AS(parser_accuracy(table(), {}), std::invalid_argument);
}

TEST_CASE("duplicate rule ids are rejected at load") {
  nlohmann::json j{
      {"rules",
       {{{"id", "dup"}, {"priority", 1}, {"pattern", "x"}, {"productions", {"Find(x)"}}},
        {{"id", "dup"}, {"priority", 2}, {"pattern", "y"}, {"productions", {"Find(y)"}}}}}};
  CHECK_THROWS(TextRuleTable::from_json(j));
}
