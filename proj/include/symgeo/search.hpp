// Goal search over the relation set: apply theorems under a strategy,
// solving the equation system after every update, until the goal value is
// found, the set stops growing, or the step cap is reached.  A step is one
// theorem application that changed the relation set.

#pragma once

#include <chrono>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "symgeo/rng.hpp"
#include "symgeo/soundness.hpp"
#include "symgeo/theorem.hpp"

namespace symgeo {

enum class Strategy { random, low_first, predict, predict_low_first };

inline const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::random: return "random";
    case Strategy::low_first: return "low-first";
    case Strategy::predict: return "predict";
    case Strategy::predict_low_first: return "predict-low-first";
  }
  return "?";
}

inline std::optional<Strategy> strategy_from_string(const std::string& s) {
  if (s == "random") return Strategy::random;
  if (s == "low-first") return Strategy::low_first;
  if (s == "predict") return Strategy::predict;
  if (s == "predict-low-first") return Strategy::predict_low_first;
  return std::nullopt;
}

struct GoalSpec {
  Literal goal;                 // the Find(...) literal
  std::array<double, 4> choices{};
  std::optional<int> answer_index;  // ground truth, when known

  const Term& goal_term() const { return goal.arg(0); }
};

struct SearchConfig {
  Strategy strategy = Strategy::low_first;
  int max_steps = 100;
  std::uint64_t seed = 0;
  std::vector<int> predicted;  // theorem ids, used by predict strategies
  std::optional<double> time_budget_sec;
};

struct TraceStep {
  int step = 0;
  int theorem_id = 0;
  std::string theorem_name;
  int added_literals = 0;
  int added_equations = 0;
  std::vector<std::string> added;  // serialized new literals
};

struct SearchTrace {
  std::vector<TraceStep> applied;
  bool solved = false;
  std::optional<double> goal_value;
  int steps_used = 0;
  SolveStatus final_status = SolveStatus::undetermined;
  std::vector<std::string> warnings;
  // Assignment for determined variables (by id) and their names, for
  // residual verification of solved traces.
  std::vector<double> assignment;
  double max_residual = 0;
};

namespace detail {

struct SearchState {
  RelationSet r;
  const Term* goal = nullptr;
  SearchTrace trace;
  int max_steps = 100;
  std::optional<std::chrono::steady_clock::time_point> deadline;

  bool out_of_budget() const {
    if (trace.steps_used >= max_steps) return true;
    if (deadline && std::chrono::steady_clock::now() > *deadline) return true;
    return false;
  }

  // Applies one theorem; records a step when R changed; re-solves.
  // Returns true when the search is finished (solved or budget reached).
  bool apply_and_check(const TheoremRule& rule) {
    if (out_of_budget()) return true;
    std::size_t lits_before = r.literal_count();
    std::size_t eqs_before = r.equation_count();
    std::set<Literal> before = r.literals();
    bool changed = apply_theorem(rule, r);
    if (!changed) return false;
    TraceStep step;
    step.step = ++trace.steps_used;
    step.theorem_id = rule.id;
    step.theorem_name = rule.name;
    step.added_literals = static_cast<int>(r.literal_count() - lits_before);
    step.added_equations = static_cast<int>(r.equation_count() - eqs_before);
    for (const auto& l : r.literals())
      if (!before.count(l)) step.added.push_back(serialize_literal(l));
    trace.applied.push_back(std::move(step));
    return check_solved() || out_of_budget();
  }

  bool check_solved() {
    SolveResult res = r.solve(*goal);
    trace.final_status = res.status;
    if (res.status == SolveStatus::inconsistent) {
      trace.warnings.push_back("equation system became inconsistent");
      return true;  // no amount of further monotone growth can fix this
    }
    if (res.solved()) {
      trace.solved = true;
      trace.goal_value = res.value;
      trace.assignment = res.assignment;
      trace.max_residual = r.max_satisfied_residual(res.assignment);
    }
    return trace.solved;
  }
};

}  // namespace detail

// Algorithm: initialize R0 from the literals and expand definitions; apply
// the predicted sequence first (predict strategies); then run rounds per
// strategy until solved, fixpoint, or step cap.
inline SearchTrace search(const std::vector<Literal>& literals,
                          const GoalSpec& goal, const KnowledgeBase& kb,
                          const SearchConfig& config,
                          const Registry& reg = builtin_registry()) {
  detail::SearchState st;
  st.r = RelationSet(reg);
  st.max_steps = std::max(1, config.max_steps);
  if (config.time_budget_sec)
    st.deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(*config.time_budget_sec));
  try {
    st.r = init_relation_set(literals, reg);
  } catch (const InconsistencyError& e) {
    SearchTrace t;
    t.warnings.push_back(std::string("inconsistent problem: ") + e.what());
    t.final_status = SolveStatus::inconsistent;
    return t;
  }
  // The goal's own shapes are part of the problem statement.
  const Term& goal_term = goal.goal_term();
  if (goal_term.is_literal()) {
    std::vector<Literal> hoist;
    const Literal& gl = goal_term.as_literal();
    const Predicate* gp = reg.find(gl.head());
    if (gp && gp->category == Category::shape && gl.is_ground())
      st.r.insert_lenient(gl);
    std::function<void(const Literal&)> walk = [&](const Literal& l) {
      for (const auto& a : l.args()) {
        if (!a.is_literal()) continue;
        const Predicate* p = reg.find(a.as_literal().head());
        if (p && p->category == Category::shape && a.as_literal().is_ground())
          st.r.insert_lenient(a.as_literal());
        walk(a.as_literal());
      }
    };
    walk(gl);
  }
  st.r.expand_definitions();
  st.r.register_goal(goal_term);
  st.goal = &goal_term;
  st.trace.warnings.insert(st.trace.warnings.end(),
                           st.r.warnings().begin(), st.r.warnings().end());

  // Check whether the inputs already determine the goal (zero steps).
  if (st.check_solved()) return st.trace;
  if (st.trace.final_status == SolveStatus::inconsistent) return st.trace;

  bool use_predicted = config.strategy == Strategy::predict ||
                       config.strategy == Strategy::predict_low_first;
  if (use_predicted) {
    for (int id : config.predicted) {
      const TheoremRule* rule = kb.find(id);
      if (!rule) {
        st.trace.warnings.push_back("predicted theorem id " +
                                    std::to_string(id) + " not in KB");
        continue;
      }
      if (st.apply_and_check(*rule)) return st.trace;
    }
  }

  bool randomized = config.strategy == Strategy::random ||
                    config.strategy == Strategy::predict;
  Rng rng(config.seed ^ 0xA5A5A5A5ull);

  while (true) {
    bool round_changed = false;
    std::vector<const TheoremRule*> order;
    if (randomized) {
      order = kb.all();
      rng.shuffle(order);
    } else {
      for (const auto& r : kb.lower) order.push_back(&r);
      for (const auto& r : kb.higher) order.push_back(&r);
    }
    for (const TheoremRule* rule : order) {
      std::size_t before = st.trace.steps_used;
      if (st.apply_and_check(*rule)) return st.trace;
      round_changed |= st.trace.steps_used != static_cast<int>(before);
    }
    if (!round_changed) break;  // fixpoint, goal unreachable
    if (st.out_of_budget()) break;
  }
  return st.trace;
}

// Nearest-choice answer selection; seeded uniform fallback when unsolved.
struct AnswerSelection {
  int index = 0;
  bool fallback = false;
};

inline AnswerSelection select_answer(const SearchTrace& trace,
                                     const GoalSpec& goal,
                                     std::uint64_t seed) {
  if (trace.solved && trace.goal_value) {
    double g = *trace.goal_value;
    int best = 0;
    double best_d = std::fabs(goal.choices[0] - g);
    for (int i = 1; i < 4; ++i) {
      double d = std::fabs(goal.choices[i] - g);
      if (d < best_d) {
        best = i;
        best_d = d;
      }
    }
    return {best, false};
  }
  Rng rng(seed ^ 0xFA11BAC4ull);
  return {static_cast<int>(rng.below(4)), true};
}

// --- rendering ---------------------------------------------------------

inline std::string render_trace(const SearchTrace& trace,
                                const GoalSpec& goal,
                                const AnswerSelection& sel) {
  std::ostringstream out;
  for (const auto& s : trace.applied) {
    out << "step " << s.step << ": theorem " << s.theorem_id << " ["
        << s.theorem_name << "] +" << s.added_literals << " literals +"
        << s.added_equations << " equations\n";
    for (const auto& a : s.added) out << "    + " << a << "\n";
  }
  out << "goal: " << serialize_literal(goal.goal) << "\n";
  if (trace.solved && trace.goal_value)
    out << "g* = " << format_number(*trace.goal_value) << "\n";
  else
    out << "g* = (unsolved)\n";
  out << "answer: index " << sel.index << " (value "
      << format_number(goal.choices[sel.index]) << ") mode "
      << (sel.fallback ? "fallback" : "solved") << "\n";
  for (const auto& w : trace.warnings) out << "warning: " << w << "\n";
  return out.str();
}

inline nlohmann::json trace_to_json(const SearchTrace& trace,
                                    const GoalSpec& goal,
                                    const AnswerSelection& sel) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : trace.applied) {
    steps.push_back({{"step", s.step},
                     {"theorem_id", s.theorem_id},
                     {"theorem_name", s.theorem_name},
                     {"added_literals", s.added_literals},
                     {"added_equations", s.added_equations},
                     {"added", s.added}});
  }
  nlohmann::json j{{"steps", steps},
                   {"solved", trace.solved},
                   {"steps_used", trace.steps_used},
                   {"goal", serialize_literal(goal.goal)},
                   {"answer_index", sel.index},
                   {"mode", sel.fallback ? "fallback" : "solved"},
                   {"warnings", trace.warnings}};
  if (trace.goal_value) j["goal_value"] = *trace.goal_value;
  return j;
}

}  // namespace symgeo
