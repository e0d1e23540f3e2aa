// Command-line front end: solve single problems with a trace, run batch
// evaluations, parse text to literals, generate predictor training data,
// train the predictor, import external datasets, and audit the knowledge
// base.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "symgeo/evaluate.hpp"
#include "symgeo/registry_io.hpp"
#include "symgeo/soundness.hpp"

namespace {

#ifndef SYMGEO_DEFAULT_DATA_DIR
#define SYMGEO_DEFAULT_DATA_DIR "data"
#endif

std::string data_dir() {
  if (const char* env = std::getenv("SYMGEO_DATA")) return env;
  return SYMGEO_DEFAULT_DATA_DIR;
}

std::string data_path(const std::string& name) {
  return (std::filesystem::path(data_dir()) / name).string();
}

struct GlobalOpts {
  std::string strategy = "predict-low-first";
  int max_steps = 100;
  std::uint64_t seed = 1;
  std::string kb_path;
  std::string model_path;
  std::string rules_path;
  std::string literal_source = "ground-truth";
  double time_budget = 0;  // seconds per problem; 0 = unlimited
};

symgeo::Strategy parse_strategy(const std::string& s) {
  auto st = symgeo::strategy_from_string(s);
  if (!st) throw CLI::ValidationError("--strategy", "unknown strategy " + s);
  return *st;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& s) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) seeds.push_back(std::stoull(item));
  if (seeds.empty()) throw CLI::ValidationError("--seed", "empty seed list");
  return seeds;
}

symgeo::KnowledgeBase load_kb_opt(const GlobalOpts& g) {
  std::string path = g.kb_path.empty() ? data_path("kb.json") : g.kb_path;
  return symgeo::load_kb(path);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace symgeo;
  CLI::App app{"symbolic plane-geometry problem solver"};
  app.require_subcommand(1);


  GlobalOpts g;
  app.add_option("--strategy", g.strategy,
                 "search strategy: random | low-first | predict | "
                 "predict-low-first");
  app.add_option("--max-steps", g.max_steps, "theorem application cap")
      ->capture_default_str();
  std::string seed_spec = "1";
  app.add_option("--seed", seed_spec, "run seed (comma list for evaluate)");
  app.add_option("--kb", g.kb_path, "knowledge base file");
  app.add_option("--model", g.model_path, "predictor model file");
  app.add_option("--rules", g.rules_path, "text rule table file");
  app.add_option("--literal-source", g.literal_source,
                 "ground-truth | parsed-text");
  app.add_option("--time-budget", g.time_budget,
                 "per-problem wall clock budget in seconds (0 = none)");

  // --- solve ---------------------------------------------------------------
  auto* solve_cmd = app.add_subcommand("solve", "solve one problem, print trace")->fallthrough();
  std::string solve_corpus, solve_problem, trace_out;
  solve_cmd->add_option("corpus", solve_corpus, "problem corpus file")
      ->required();
  solve_cmd->add_option("--problem", solve_problem,
                        "problem id (default: first)");
  solve_cmd->add_option("--trace", trace_out, "write machine trace JSON here");

  // --- evaluate --------------------------------------------------------------
  auto* eval_cmd = app.add_subcommand("evaluate", "batch evaluation")->fallthrough();
  std::string eval_corpus, report_out, report_json_out;
  int jobs = 1;
  eval_cmd->add_option("corpus", eval_corpus, "problem corpus file")
      ->required();
  eval_cmd->add_option("--report", report_out, "write the text report here");
  eval_cmd->add_option("--json", report_json_out, "write the JSON report here");
  eval_cmd->add_option("--jobs", jobs, "worker threads")->capture_default_str();

  // --- parse-text -------------------------------------------------------------
  auto* parse_cmd =
      app.add_subcommand("parse-text", "stdin text -> one literal per line")->fallthrough();

  // --- sample-sequences ---------------------------------------------------
  auto* sample_cmd = app.add_subcommand(
      "sample-sequences", "generate predictor training sequences")->fallthrough();
  std::string sample_corpus, samples_out;
  int attempts = 100, max_len = 20;
  sample_cmd->add_option("corpus", sample_corpus, "problem corpus file")
      ->required();
  sample_cmd->add_option("--out", samples_out, "output samples file")
      ->required();
  sample_cmd->add_option("--attempts", attempts, "random attempts per problem")
      ->capture_default_str();
  sample_cmd->add_option("--max-len", max_len, "max sequence length")
      ->capture_default_str();

  // --- train-predictor ------------------------------------------------------
  auto* train_cmd =
      app.add_subcommand("train-predictor", "train the frequency model")->fallthrough();
  std::string samples_in, model_out;
  train_cmd->add_option("samples", samples_in, "samples file")->required();
  train_cmd->add_option("--out", model_out, "output model file")->required();

  // --- import -----------------------------------------------------------------
  auto* import_cmd =
      app.add_subcommand("import", "convert an external dataset layout")->fallthrough();
  std::string import_format = "geometry3k", import_root, import_out,
              quarantine_out;
  import_cmd->add_option("--format", import_format, "dataset format")
      ->capture_default_str();
  import_cmd->add_option("--root", import_root, "dataset root directory")
      ->required();
  import_cmd->add_option("--out", import_out, "output corpus file")->required();
  import_cmd->add_option("--quarantine", quarantine_out,
                         "write quarantined record report here");

  // --- check-kb -----------------------------------------------------------------
  auto* check_cmd =
      app.add_subcommand("check-kb", "run the coordinate soundness oracle")->fallthrough();
  int trials = 1000;
  check_cmd->add_option("--trials", trials, "trials per rule")
      ->capture_default_str();

  // --- registry ---------------------------------------------------------------
  auto* reg_cmd = app.add_subcommand("registry", "predicate registry tools")->fallthrough();
  std::string registry_export;
  reg_cmd->add_option("--export", registry_export,
                      "write the built-in registry to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    std::vector<std::uint64_t> seeds = parse_seed_list(seed_spec);

    if (*solve_cmd) {
      Strategy strategy = parse_strategy(g.strategy);
      auto problems = load_corpus(solve_corpus);
      const ProblemRecord* chosen = nullptr;
      for (const auto& p : problems)
        if (solve_problem.empty() || p.id == solve_problem) {
          chosen = &p;
          break;
        }
      if (!chosen) {
        std::cerr << "problem not found: " << solve_problem << "\n";
        return 2;
      }
      KnowledgeBase kb = load_kb_opt(g);
      EvalConfig cfg;
      cfg.max_steps = g.max_steps;
      if (g.time_budget > 0) cfg.time_budget_sec = g.time_budget;
      FrequencyModel model;
      if (!g.model_path.empty()) model = FrequencyModel::load(g.model_path);
      SearchConfig sc;
      sc.strategy = strategy;
      sc.max_steps = g.max_steps;
      sc.seed = mix_seed(seeds[0], chosen->id);
      if (g.time_budget > 0) sc.time_budget_sec = g.time_budget;
      std::vector<Literal> lits;
      if (g.literal_source == "parsed-text") {
        TextRuleTable table = TextRuleTable::load(
            g.rules_path.empty() ? data_path("text_rules.json") : g.rules_path);
        auto parsed = table.parse_text(chosen->text);
        for (const auto& w : parsed.warnings)
          std::cerr << "warning: " << w << "\n";
        lits = parsed.literals;
        lits.insert(lits.end(), chosen->diagram_literals.begin(),
                    chosen->diagram_literals.end());
      } else {
        lits = chosen->ground_truth_literals();
      }
      if (strategy == Strategy::predict ||
          strategy == Strategy::predict_low_first) {
        if (!model.trained()) {
          std::cerr << "predict strategy needs --model\n";
          return 2;
        }
        sc.predicted = predict_sequence(model, lits, chosen->goal, 20);
      }
      GoalSpec goal = chosen->goal_spec();
      SearchTrace trace = search(lits, goal, kb, sc);
      AnswerSelection sel = select_answer(trace, goal, sc.seed);
      std::cout << render_trace(trace, goal, sel);
      if (chosen->answer_index)
        std::cout << "ground truth: index " << *chosen->answer_index << " ("
                  << (sel.index == *chosen->answer_index ? "correct"
                                                         : "incorrect")
                  << ")\n";
      if (!trace_out.empty()) {
        std::ofstream out(trace_out);
        out << trace_to_json(trace, goal, sel).dump(2) << "\n";
      }
      return 0;
    }

    if (*eval_cmd) {
      auto problems = load_corpus(eval_corpus);
      KnowledgeBase kb = load_kb_opt(g);
      EvalConfig cfg;
      cfg.max_steps = g.max_steps;
      cfg.seeds = seeds;
      cfg.jobs = jobs;
      if (g.time_budget > 0) cfg.time_budget_sec = g.time_budget;
      if (g.strategy == "all")
        cfg.strategies = {Strategy::random, Strategy::low_first,
                          Strategy::predict, Strategy::predict_low_first};
      else
        cfg.strategies = {parse_strategy(g.strategy)};
      cfg.literal_source = g.literal_source == "parsed-text"
                               ? LiteralSource::parsed_text
                               : LiteralSource::ground_truth;
      TextRuleTable table;
      if (cfg.literal_source == LiteralSource::parsed_text) {
        table = TextRuleTable::load(
            g.rules_path.empty() ? data_path("text_rules.json") : g.rules_path);
        cfg.rule_table = &table;
      }
      FrequencyModel model;
      bool needs_model = false;
      for (Strategy s : cfg.strategies)
        if (s == Strategy::predict || s == Strategy::predict_low_first)
          needs_model = true;
      if (needs_model) {
        if (g.model_path.empty()) {
          std::cerr << "predict strategies need --model\n";
          return 2;
        }
        model = FrequencyModel::load(g.model_path);
        cfg.model = &model;
      }
      EvalReport report = evaluate(problems, kb, cfg);
      std::string text = render_report(report);
      std::cout << text;
      if (!report_out.empty()) {
        std::ofstream out(report_out);
        out << text;
      }
      if (!report_json_out.empty()) {
        nlohmann::json js = report_to_json(report);
        // Enough provenance to replay the run exactly.
        auto file_hash = [](const std::string& path) -> std::string {
          std::ifstream in(path, std::ios::binary);
          std::string content((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
          char buf[20];
          std::snprintf(buf, sizeof buf, "%016llx",
                        static_cast<unsigned long long>(fnv1a(content)));
          return buf;
        };
        nlohmann::json config{
            {"corpus", eval_corpus},
            {"corpus_hash", file_hash(eval_corpus)},
            {"kb", g.kb_path.empty() ? data_path("kb.json") : g.kb_path},
            {"kb_hash", file_hash(g.kb_path.empty() ? data_path("kb.json")
                                                    : g.kb_path)},
            {"seeds", seeds},
            {"strategy", g.strategy},
            {"max_steps", g.max_steps},
            {"literal_source", g.literal_source}};
        if (!g.model_path.empty()) {
          config["model"] = g.model_path;
          config["model_hash"] = file_hash(g.model_path);
        }
        js["config"] = std::move(config);
        std::ofstream out(report_json_out);
        out << js.dump(2) << "\n";
      }
      return 0;
    }

    if (*parse_cmd) {
      TextRuleTable table = TextRuleTable::load(
          g.rules_path.empty() ? data_path("text_rules.json") : g.rules_path);
      std::string text((std::istreambuf_iterator<char>(std::cin)),
                       std::istreambuf_iterator<char>());
      auto parsed = table.parse_text(text);
      for (const auto& l : parsed.literals)
        std::cout << serialize_literal(l) << "\n";
      for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
      return 0;
    }

    if (*sample_cmd) {
      auto problems = load_corpus(sample_corpus);
      KnowledgeBase kb = load_kb_opt(g);
      std::vector<SequenceProblem> sp;
      for (const auto& p : problems)
        sp.push_back({p.id, p.ground_truth_literals(), p.goal_spec()});
      auto samples = sample_sequences(sp, kb, attempts, max_len, seeds[0]);
      std::ofstream out(samples_out);
      if (!out) throw std::runtime_error("cannot write " + samples_out);
      out << samples_to_json(samples).dump(2) << "\n";
      std::cout << "problems: " << problems.size()
                << "  samples: " << samples.size() << "\n";
      return 0;
    }

    if (*train_cmd) {
      std::ifstream in(samples_in);
      if (!in) throw std::runtime_error("cannot open " + samples_in);
      nlohmann::json j;
      in >> j;
      auto samples = samples_from_json(j);
      FrequencyModel model = train_predictor(samples);
      model.save(model_out);
      std::cout << "trained on " << samples.size() << " samples -> "
                << model_out << "\n";
      return 0;
    }

    if (*import_cmd) {
      if (import_format != "geometry3k") {
        std::cerr << "unknown import format: " << import_format << "\n";
        return 2;
      }
      ImportResult result = import_geometry3k(import_root);
      save_corpus(result.problems, import_out);
      std::cout << "imported: " << result.problems.size()
                << "  quarantined: " << result.quarantined.size() << "\n";
      if (!quarantine_out.empty()) {
        nlohmann::json q = nlohmann::json::array();
        for (const auto& e : result.quarantined)
          q.push_back({{"id", e.id}, {"reason", e.reason}});
        std::ofstream out(quarantine_out);
        out << q.dump(2) << "\n";
      }
      return 0;
    }

    if (*check_cmd) {
      KnowledgeBase kb = load_kb_opt(g);
      for (const auto& w : kb.warnings) std::cerr << "warning: " << w << "\n";
      bool all_pass = true;
      for (const TheoremRule* rule : kb.all()) {
        auto rep = check_soundness(*rule, trials, seeds[0]);
        std::cout << "rule " << rep.rule_id << " [" << rep.rule_name
                  << "]: max residual " << rep.max_residual << " over "
                  << rep.trials << " trials -> "
                  << (rep.pass ? "pass" : "FAIL") << "\n";
        all_pass &= rep.pass;
      }
      return all_pass ? 0 : 1;
    }

    if (*reg_cmd) {
      if (!registry_export.empty()) {
        save_registry(builtin_registry(), registry_export);
        std::cout << "wrote " << registry_export << "\n";
      } else {
        std::cout << registry_to_json(builtin_registry()).dump(2) << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
