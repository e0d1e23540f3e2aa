// Batch evaluation: runs search + answer selection for every problem under
// one or more strategies and seeds, and aggregates accuracy, solve rate,
// fallback-adjusted accuracy, and step counts (mean over all problems,
// unsolved runs included).  Problems are independent; evaluation may fan
// out over worker threads, with aggregation ordered by problem id so the
// report does not depend on scheduling.

#pragma once

#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "symgeo/predictor.hpp"
#include "symgeo/problems.hpp"
#include "symgeo/text_parser.hpp"

namespace symgeo {

enum class LiteralSource { ground_truth, parsed_text };

inline const char* to_string(LiteralSource s) {
  return s == LiteralSource::ground_truth ? "ground-truth" : "parsed-text";
}

struct EvalConfig {
  std::vector<Strategy> strategies{Strategy::predict_low_first};
  std::vector<std::uint64_t> seeds{1};
  int max_steps = 100;
  LiteralSource literal_source = LiteralSource::ground_truth;
  const FrequencyModel* model = nullptr;        // required for predict modes
  const TextRuleTable* rule_table = nullptr;    // required for parsed-text
  std::optional<double> time_budget_sec;
  int jobs = 1;
  bool collect_traces = false;
};

struct ProblemOutcome {
  std::string problem_id;
  std::uint64_t seed = 0;
  bool solved = false;
  bool correct = false;
  bool fallback = false;
  int steps = 0;
  int answer_index = -1;
  std::optional<double> goal_value;
  std::string trace_text;  // only when collect_traces
};

struct StrategyStats {
  // One entry per seed, in seed order.
  std::vector<double> accuracy;
  std::vector<double> solve_rate;
  std::vector<double> adjusted_accuracy;
  std::vector<double> mean_steps;

  static double mean(const std::vector<double>& v) {
    if (v.empty()) return 0;
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  }
  static double stddev(const std::vector<double>& v) {
    if (v.size() < 2) return 0;
    double m = mean(v);
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size()));
  }
};

struct EvalReport {
  int total_problems = 0;
  std::vector<std::string> strategy_names;  // report order
  std::map<std::string, StrategyStats> by_strategy;
  // strategy -> tag -> (correct, total) summed over seeds.
  std::map<std::string, std::map<std::string, std::pair<int, int>>> by_goal_tag;
  std::map<std::string, std::map<std::string, std::pair<int, int>>> by_shape_tag;
  std::vector<ProblemOutcome> outcomes;  // sorted (strategy, seed, id)
  std::vector<std::string> warnings;
};

namespace detail {

inline std::vector<Literal> literals_for(const ProblemRecord& p,
                                         const EvalConfig& cfg) {
  if (cfg.literal_source == LiteralSource::ground_truth)
    return p.ground_truth_literals();
  if (!cfg.rule_table)
    throw std::invalid_argument("parsed-text evaluation needs a rule table");
  auto parsed = cfg.rule_table->parse_text(p.text);
  std::vector<Literal> lits = parsed.literals;
  lits.insert(lits.end(), p.diagram_literals.begin(),
              p.diagram_literals.end());
  return lits;
}

}  // namespace detail

inline ProblemOutcome evaluate_one(const ProblemRecord& p,
                                   const KnowledgeBase& kb, Strategy strategy,
                                   std::uint64_t seed, const EvalConfig& cfg,
                                   const Registry& reg) {
  ProblemOutcome out;
  out.problem_id = p.id;
  out.seed = seed;
  SearchConfig sc;
  sc.strategy = strategy;
  sc.max_steps = cfg.max_steps;
  sc.seed = mix_seed(seed, p.id);
  sc.time_budget_sec = cfg.time_budget_sec;
  GoalSpec goal = p.goal_spec();
  std::vector<Literal> lits = detail::literals_for(p, cfg);
  if ((strategy == Strategy::predict ||
       strategy == Strategy::predict_low_first)) {
    if (!cfg.model)
      throw std::invalid_argument("predict strategy needs a trained model");
    sc.predicted = predict_sequence(*cfg.model, lits, goal.goal, 20);
  }
  SearchTrace trace;
  try {
    trace = search(lits, goal, kb, sc, reg);
  } catch (const std::exception& e) {
    trace.warnings.push_back(std::string("search failed: ") + e.what());
  }
  AnswerSelection sel = select_answer(trace, goal, sc.seed);
  out.solved = trace.solved;
  out.fallback = sel.fallback;
  out.steps = trace.steps_used;
  out.answer_index = sel.index;
  out.goal_value = trace.goal_value;
  out.correct = p.answer_index && sel.index == *p.answer_index;
  if (cfg.collect_traces) out.trace_text = render_trace(trace, goal, sel);
  return out;
}

inline EvalReport evaluate(const std::vector<ProblemRecord>& problems,
                           const KnowledgeBase& kb, const EvalConfig& cfg,
                           const Registry& reg = builtin_registry()) {
  EvalReport report;
  report.total_problems = static_cast<int>(problems.size());
  if (problems.empty()) return report;

  for (Strategy strategy : cfg.strategies) {
    std::string sname = to_string(strategy);
    report.strategy_names.push_back(sname);
    StrategyStats stats;
    for (std::uint64_t seed : cfg.seeds) {
      std::vector<ProblemOutcome> outcomes(problems.size());
      auto worker = [&](std::size_t begin, std::size_t step) {
        for (std::size_t i = begin; i < problems.size(); i += step)
          outcomes[i] =
              evaluate_one(problems[i], kb, strategy, seed, cfg, reg);
      };
      int jobs = std::max(1, cfg.jobs);
      if (jobs == 1) {
        worker(0, 1);
      } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
          pool.emplace_back(worker, static_cast<std::size_t>(t),
                            static_cast<std::size_t>(jobs));
        for (auto& th : pool) th.join();
      }

      int correct = 0, solved = 0, fallback_count = 0, solved_correct = 0;
      long steps = 0;
      for (std::size_t i = 0; i < problems.size(); ++i) {
        const auto& o = outcomes[i];
        correct += o.correct;
        solved += o.solved;
        fallback_count += o.fallback;
        solved_correct += (o.correct && !o.fallback);
        steps += o.steps;
        auto& g = report.by_goal_tag[sname][to_string(problems[i].goal_tag)];
        g.second++;
        g.first += o.correct;
        auto& s = report.by_shape_tag[sname][to_string(problems[i].shape_tag)];
        s.second++;
        s.first += o.correct;
      }
      double n = static_cast<double>(problems.size());
      stats.accuracy.push_back(correct / n);
      stats.solve_rate.push_back(solved / n);
      stats.adjusted_accuracy.push_back(
          (solved_correct + 0.25 * fallback_count) / n);
      stats.mean_steps.push_back(steps / n);
      report.outcomes.insert(report.outcomes.end(), outcomes.begin(),
                             outcomes.end());
    }
    report.by_strategy[sname] = std::move(stats);
  }
  return report;
}

// --- rendering -------------------------------------------------------------

namespace detail {

inline std::string pm(double mean, double sd, int decimals = 1) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(decimals) << mean << " ± " << sd;
  return out.str();
}

}  // namespace detail

inline std::string render_report(const EvalReport& r) {
  std::ostringstream out;
  out << "problems: " << r.total_problems << "\n\n";
  out << std::left << std::setw(20) << "strategy" << std::setw(16)
      << "accuracy%" << std::setw(16) << "solved%" << std::setw(16)
      << "adj-acc%" << std::setw(14) << "steps" << "\n";
  for (const auto& name : r.strategy_names) {
    const auto& s = r.by_strategy.at(name);
    out << std::left << std::setw(20) << name << std::setw(16)
        << detail::pm(100 * StrategyStats::mean(s.accuracy),
                      100 * StrategyStats::stddev(s.accuracy))
        << std::setw(16)
        << detail::pm(100 * StrategyStats::mean(s.solve_rate),
                      100 * StrategyStats::stddev(s.solve_rate))
        << std::setw(16)
        << detail::pm(100 * StrategyStats::mean(s.adjusted_accuracy),
                      100 * StrategyStats::stddev(s.adjusted_accuracy))
        << std::setw(14)
        << detail::pm(StrategyStats::mean(s.mean_steps),
                      StrategyStats::stddev(s.mean_steps))
        << "\n";
  }
  auto tag_block = [&](const char* title, const auto& by_tag,
                       const std::vector<std::string>& tags) {
    out << "\n" << title << "\n";
    out << std::left << std::setw(20) << "strategy";
    for (const auto& t : tags) out << std::setw(10) << t;
    out << "\n";
    for (const auto& name : r.strategy_names) {
      out << std::left << std::setw(20) << name;
      auto it = by_tag.find(name);
      for (const auto& t : tags) {
        std::string cell = "-";
        if (it != by_tag.end()) {
          auto tit = it->second.find(t);
          if (tit != it->second.end() && tit->second.second > 0) {
            std::ostringstream c;
            c << std::fixed << std::setprecision(1)
              << 100.0 * tit->second.first / tit->second.second;
            cell = c.str();
          }
        }
        out << std::setw(10) << cell;
      }
      out << "\n";
    }
  };
  tag_block("accuracy% by goal type", r.by_goal_tag,
            {"Angle", "Length", "Area", "Ratio"});
  tag_block("accuracy% by shape type", r.by_shape_tag,
            {"Line", "Triangle", "Quad", "Circle", "Other"});
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  return out.str();
}

inline nlohmann::json report_to_json(const EvalReport& r) {
  nlohmann::json js;
  js["total_problems"] = r.total_problems;
  for (const auto& name : r.strategy_names) {
    const auto& s = r.by_strategy.at(name);
    js["strategies"][name] = {
        {"accuracy_per_seed", s.accuracy},
        {"solve_rate_per_seed", s.solve_rate},
        {"adjusted_accuracy_per_seed", s.adjusted_accuracy},
        {"mean_steps_per_seed", s.mean_steps},
        {"accuracy_mean", StrategyStats::mean(s.accuracy)},
        {"accuracy_sd", StrategyStats::stddev(s.accuracy)},
        {"mean_steps", StrategyStats::mean(s.mean_steps)},
        {"mean_steps_sd", StrategyStats::stddev(s.mean_steps)}};
  }
  auto tags = [&](const auto& by_tag) {
    nlohmann::json j;
    for (const auto& [strategy, m] : by_tag)
      for (const auto& [tag, ct] : m)
        j[strategy][tag] = {{"correct", ct.first}, {"total", ct.second}};
    return j;
  };
  js["by_goal_tag"] = tags(r.by_goal_tag);
  js["by_shape_tag"] = tags(r.by_shape_tag);
  nlohmann::json jo = nlohmann::json::array();
  for (const auto& o : r.outcomes) {
    nlohmann::json e = {{"problem_id", o.problem_id},
                        {"seed", o.seed},
                        {"solved", o.solved},
                        {"correct", o.correct},
                        {"fallback", o.fallback},
                        {"steps", o.steps},
                        {"answer_index", o.answer_index}};
    if (o.goal_value) e["goal_value"] = *o.goal_value;
    jo.push_back(std::move(e));
  }
  js["outcomes"] = std::move(jo);
  return js;
}

}  // namespace symgeo
