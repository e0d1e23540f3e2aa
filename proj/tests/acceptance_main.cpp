// Acceptance suite.  Runs every acceptance criterion at its stated
// tolerance and prints one pass/fail line per criterion; exits nonzero if
// a blocking criterion fails.  The dataset-reproduction criterion is
// non-blocking and reports SKIP when no dataset is mounted.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "helpers.hpp"
#include "symgeo/evaluate.hpp"
#include "symgeo/registry_io.hpp"
#include "symgeo/soundness.hpp"

using namespace symgeo;

namespace {

std::string data_file(const char* name) {
  return std::string(SYMGEO_DATA_DIR) + "/" + name;
}

struct Outcome {
  int id;
  std::string name;
  bool pass = false;
  bool skipped = false;
  bool blocking = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// --- criterion 1: KB soundness -------------------------------------------

Outcome criterion_kb_soundness(const KnowledgeBase& kb) {
  Outcome out{1, "knowledge-base soundness"};
  auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  bool all_pass = true;
  for (const TheoremRule* rule : kb.all()) {
    auto rep = check_soundness(*rule, 1000, 20240601u);
    worst = std::max(worst, rep.max_residual);
    all_pass &= rep.pass;
  }
  // Injected fault: the oracle must reject a corrupted rule.
  TheoremRule broken = *kb.find(1);
  broken.clauses[0].conclusions[0] = parse_literal(
      "Equals(SumOf(MeasureOf(Angle($1,$2,$3)),MeasureOf(Angle($2,$3,$1)),"
      "MeasureOf(Angle($3,$1,$2))),190)");
  bool fault_detected = !check_soundness(broken, 200, 20240601u).pass;
  double elapsed = seconds_since(t0);
  out.pass = all_pass && fault_detected && kb.size() == 17 && elapsed < 30.0;
  std::ostringstream d;
  d << kb.size() << " rules x 1000 trials, max residual " << worst
    << ", injected fault " << (fault_detected ? "detected" : "MISSED") << ", "
    << elapsed << "s";
  out.detail = d.str();
  return out;
}

// --- criterion 2: formal-language round trip --------------------------------

Outcome criterion_round_trip() {
  Outcome out{2, "formal-language round trip"};
  auto t0 = std::chrono::steady_clock::now();
  const Registry& reg = builtin_registry();
  int templates = 0, generated = 0;
  bool ok = true;

  for (const auto& pred : reg.predicates())
    for (const auto& tmpl : pred.templates) {
      Literal l = parse_literal(tmpl, reg);
      ok &= parse_literal(serialize_literal(l), reg) == l;
      ++templates;
    }

  Rng rng(424242);
  for (int i = 0; i < 500; ++i) {
    Literal l = testing::random_literal(rng);
    ok &= parse_literal(serialize_literal(l)) == l;
    Literal n = normalize_literal(l);
    ok &= normalize_literal(n) == n;
    ++generated;
  }

  // Brute-force permutation check of normalization equivalence classes.
  struct Case {
    const char* text;
    std::vector<std::vector<std::size_t>> group;
  };
  std::vector<Case> cases = {
      {"Line(A,B)", detail::all_perms(2)},
      {"Angle(A,B,C)", {{0, 1, 2}, {2, 1, 0}}},
      {"Triangle(A,B,C)", detail::all_perms(3)},
      {"Add(1,x,y)", detail::all_perms(3)},
      {"Quadrilateral(A,B,C,D)", detail::dihedral_perms(4)},
  };
  for (const auto& c : cases) {
    Literal base = parse_literal(c.text);
    Literal rep = normalize_literal(base);
    std::vector<std::size_t> perm(base.arity());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    do {
      bool in_group = false;
      for (const auto& g : c.group)
        if (g == perm) in_group = true;
      Literal spelled = base.with_args(detail::apply_perm(base.args(), perm));
      ok &= (normalize_literal(spelled) == rep) == in_group;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  double elapsed = seconds_since(t0);
  out.pass = ok && templates >= 91 && generated >= 500 && elapsed < 5.0;
  std::ostringstream d;
  d << templates << " templates + " << generated
    << " generated literals, permutation classes checked, " << elapsed << "s";
  out.detail = d.str();
  return out;
}

// --- criterion 5: unification oracle ---------------------------------------

Outcome criterion_unification() {
  Outcome out{5, "unification matches brute force"};
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(515151);
  bool ok = true;
  int instances = 0, nonempty = 0;
  for (int i = 0; i < 200; ++i) {
    auto inst = testing::random_match_instance(rng);
    RelationSet r(builtin_registry());
    for (const auto& l : inst.ground) r.insert(l);
    auto got = r.match_premise(inst.premise);
    auto expected = testing::brute_force_match(inst.premise, r);
    ok &= got == expected;
    ++instances;
    if (!got.empty()) ++nonempty;
  }
  double elapsed = seconds_since(t0);
  out.pass = ok && elapsed < 5.0;
  std::ostringstream d;
  d << instances << " instances (" << nonempty << " with bindings), "
    << elapsed << "s";
  out.detail = d.str();
  return out;
}

// --- criteria 3 and 4: mini corpus ------------------------------------------

struct CorpusRun {
  Outcome end_to_end{3, "mini-corpus end to end"};
  Outcome ordering{4, "strategy step ordering"};
};

CorpusRun criteria_corpus(const KnowledgeBase& kb,
                          const std::vector<ProblemRecord>& problems) {
  CorpusRun run;

  // Train the predictor from the corpus's own sampled sequences.
  std::vector<SequenceProblem> sp;
  for (const auto& p : problems)
    sp.push_back({p.id, p.ground_truth_literals(), p.goal_spec()});
  auto samples = sample_sequences(sp, kb, 100, 20, 42);
  FrequencyModel model = train_predictor(samples);

  // Criterion 3: 100% answer accuracy under predict+low-first, every solved
  // trace satisfying its equations to 1e-6, inside the step cap.
  {
    auto t0 = std::chrono::steady_clock::now();
    int correct = 0, solved = 0;
    double worst_residual = 0;
    int worst_steps = 0;
    for (const auto& p : problems) {
      SearchConfig cfg;
      cfg.strategy = Strategy::predict_low_first;
      cfg.max_steps = 100;
      cfg.seed = mix_seed(1, p.id);
      auto lits = p.ground_truth_literals();
      cfg.predicted = predict_sequence(model, lits, p.goal, 20);
      SearchTrace t = search(lits, p.goal_spec(), kb, cfg);
      AnswerSelection sel = select_answer(t, p.goal_spec(), cfg.seed);
      solved += t.solved;
      correct += (p.answer_index && sel.index == *p.answer_index);
      worst_residual = std::max(worst_residual, t.max_residual);
      worst_steps = std::max(worst_steps, t.steps_used);
    }
    double elapsed = seconds_since(t0);
    int n = static_cast<int>(problems.size());
    run.end_to_end.pass = n >= 30 && correct == n && solved == n &&
                          worst_residual < 1e-6 && worst_steps <= 100 &&
                          elapsed < 10.0;
    std::ostringstream d;
    d << correct << "/" << n << " correct, " << solved << "/" << n
      << " solved, worst residual " << worst_residual << ", max steps "
      << worst_steps << ", " << elapsed << "s";
    run.end_to_end.detail = d.str();
  }

  // Criterion 4: mean steps under the predict strategies at most 0.75x the
  // random-strategy mean, averaged over 3 seeds.
  {
    EvalConfig cfg;
    cfg.strategies = {Strategy::random, Strategy::predict,
                      Strategy::predict_low_first};
    cfg.seeds = {1, 2, 3};
    cfg.model = &model;
    EvalReport report = evaluate(problems, kb, cfg);
    double random_steps =
        StrategyStats::mean(report.by_strategy.at("random").mean_steps);
    double predict_steps =
        StrategyStats::mean(report.by_strategy.at("predict").mean_steps);
    double plf_steps = StrategyStats::mean(
        report.by_strategy.at("predict-low-first").mean_steps);
    run.ordering.pass = predict_steps <= 0.75 * random_steps &&
                        plf_steps <= 0.75 * random_steps;
    std::ostringstream d;
    d << "mean steps: random " << random_steps << ", predict "
      << predict_steps << ", predict-low-first " << plf_steps
      << " (threshold 0.75x = " << 0.75 * random_steps << ")";
    run.ordering.detail = d.str();
  }
  return run;
}

// --- criterion 6: replay determinism -----------------------------------------

Outcome criterion_determinism(const KnowledgeBase& kb,
                              const std::vector<ProblemRecord>& problems) {
  Outcome out{6, "replay determinism"};
  std::vector<SequenceProblem> sp;
  for (const auto& p : problems)
    sp.push_back({p.id, p.ground_truth_literals(), p.goal_spec()});
  auto full_run = [&]() {
    auto samples = sample_sequences(sp, kb, 20, 20, 7);
    FrequencyModel model = train_predictor(samples);
    EvalConfig cfg;
    cfg.strategies = {Strategy::random, Strategy::predict_low_first};
    cfg.seeds = {1, 2};
    cfg.model = &model;
    cfg.collect_traces = true;
    EvalReport report = evaluate(problems, kb, cfg);
    std::string all = render_report(report);
    all += report_to_json(report).dump();
    for (const auto& o : report.outcomes) all += o.trace_text;
    return all;
  };
  std::string a = full_run();
  std::string b = full_run();
  out.pass = a == b;
  out.detail = out.pass ? "two full evaluations byte-identical ("
                              + std::to_string(a.size()) + " bytes)"
                        : "runs differ";
  return out;
}

// --- criterion 7: dataset reproduction (non-blocking) -----------------------

Outcome criterion_dataset(const KnowledgeBase& kb) {
  Outcome out{7, "dataset reproduction (stretch)"};
  out.blocking = false;
  std::string root;
  if (const char* env = std::getenv("SYMGEO_GEOMETRY3K")) root = env;
  if (root.empty()) {
    std::string candidate = data_file("geometry3k");
    if (std::filesystem::exists(candidate)) root = candidate;
  }
  if (root.empty()) {
    out.skipped = true;
    out.pass = true;
    out.detail =
        "no dataset mounted (set SYMGEO_GEOMETRY3K to run the full "
        "ground-truth evaluation)";
    return out;
  }
  ImportResult imported = import_geometry3k(root);
  EvalConfig cfg;
  cfg.strategies = {Strategy::low_first};
  cfg.seeds = {1};
  cfg.time_budget_sec = 5.0;
  EvalReport report = evaluate(imported.problems, kb, cfg);
  double acc = StrategyStats::mean(report.by_strategy.at("low-first").accuracy);
  out.pass = true;  // reported, not gated
  std::ostringstream d;
  d << imported.problems.size() << " problems ("
    << imported.quarantined.size() << " quarantined), accuracy "
    << 100 * acc << "% (>=60% treated as evidence of a faithful rule set)\n"
    << render_report(report);
  out.detail = d.str();
  return out;
}

}  // namespace

int main() {
  KnowledgeBase kb = load_kb(data_file("kb.json"));
  auto problems = load_corpus(data_file("mini_corpus.json"));

  std::vector<Outcome> results;
  results.push_back(criterion_kb_soundness(kb));
  results.push_back(criterion_round_trip());
  CorpusRun corpus_run = criteria_corpus(kb, problems);
  results.push_back(corpus_run.end_to_end);
  results.push_back(corpus_run.ordering);
  results.push_back(criterion_unification());
  results.push_back(criterion_determinism(kb, problems));
  results.push_back(criterion_dataset(kb));

  std::sort(results.begin(), results.end(),
            [](const Outcome& a, const Outcome& b) { return a.id < b.id; });
  bool all_pass = true;
  for (const auto& r : results) {
    std::string status = r.skipped ? "SKIP" : (r.pass ? "PASS" : "FAIL");
    std::cout << "criterion " << r.id << " [" << r.name << "]: " << status
              << " - " << r.detail << "\n";
    if (r.blocking && !r.pass) all_pass = false;
  }
  std::cout << (all_pass ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL") << "\n";
  return all_pass ? 0 : 1;
}
