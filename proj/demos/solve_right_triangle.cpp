// Minimal end-to-end use of the library: describe a right triangle in the
// literal language, search with the low-first strategy, and print the
// resulting theorem trace.

#include <iostream>

#include "symgeo/search.hpp"

int main() {
  using namespace symgeo;

  KnowledgeBase kb = load_kb(std::string(SYMGEO_DATA_DIR) + "/kb.json");

  std::vector<Literal> problem = {
      parse_literal("Triangle(A,B,C)"),
      parse_literal("RightAngle(Angle(A,C,B))"),
      parse_literal("Equals(LengthOf(Line(A,C)),3)"),
      parse_literal("Equals(LengthOf(Line(C,B)),4)"),
  };

  GoalSpec goal;
  goal.goal = parse_literal("Find(LengthOf(Line(A,B)))");
  goal.choices = {4, 5, 6, 7};

  SearchConfig config;
  config.strategy = Strategy::low_first;
  config.seed = 1;

  SearchTrace trace = search(problem, goal, kb, config);
  AnswerSelection answer = select_answer(trace, goal, config.seed);
  std::cout << render_trace(trace, goal, answer);
  return trace.solved ? 0 : 1;
}
