// Text-to-answer pipeline: run the rule-based parser on an English
// statement, combine the literals with diagram facts, and solve.

#include <iostream>

#include "symgeo/search.hpp"
#include "symgeo/text_parser.hpp"

int main() {
  using namespace symgeo;

  std::string data(SYMGEO_DATA_DIR);
  KnowledgeBase kb = load_kb(data + "/kb.json");
  TextRuleTable rules = TextRuleTable::load(data + "/text_rules.json");

  std::string text =
      "In triangle ABC, m angle ABC = 60 and m angle BCA = 80. "
      "Find m angle CAB.";
  std::cout << "text: " << text << "\n\n";

  TextParseResult parsed = rules.parse_text(text);
  for (const auto& l : parsed.literals)
    std::cout << "literal: " << serialize_literal(l) << "\n";
  for (const auto& w : parsed.warnings) std::cout << "warning: " << w << "\n";

  GoalSpec goal;
  goal.goal = parse_literal("Find(MeasureOf(Angle(C,A,B)))");
  goal.choices = {30, 40, 50, 60};

  SearchConfig config;
  config.strategy = Strategy::low_first;

  SearchTrace trace = search(parsed.literals, goal, kb, config);
  AnswerSelection answer = select_answer(trace, goal, config.seed);
  std::cout << "\n" << render_trace(trace, goal, answer);
  return trace.solved ? 0 : 1;
}
