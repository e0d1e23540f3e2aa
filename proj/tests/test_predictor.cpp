#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "symgeo/predictor.hpp"

using namespace symgeo;

namespace {

std::string data_file(const char* name) {
  return std::string(SYMGEO_DATA_DIR) + "/" + name;
}

const KnowledgeBase& kb() {
  static KnowledgeBase k = load_kb(data_file("kb.json"));
  return k;
}

std::vector<Literal> parse_all(const std::vector<std::string>& lits) {
  std::vector<Literal> out;
  for (const auto& s : lits) out.push_back(parse_literal(s));
  return out;
}

SequenceProblem pythagoras_problem() {
  SequenceProblem p;
  p.id = "pyth";
  p.literals = parse_all({"Triangle(A,B,C)", "RightAngle(Angle(A,C,B))",
                          "Equals(LengthOf(Line(A,C)),3)",
                          "Equals(LengthOf(Line(C,B)),4)"});
  p.goal.goal = parse_literal("Find(LengthOf(Line(A,B)))");
  p.goal.choices = {4, 5, 6, 7};
  return p;
}

SequenceProblem unsolvable_problem() {
  SequenceProblem p;
  p.id = "stuck";
  p.literals = parse_all({"Triangle(A,B,C)"});
  p.goal.goal = parse_literal("Find(LengthOf(Line(A,B)))");
  p.goal.choices = {1, 2, 3, 4};
  return p;
}

}  // namespace

TEST_CASE("sampling finds a minimal sequence for a one-rule problem") {
  auto samples = sample_sequences({pythagoras_problem()}, kb(), 30, 20, 11);
  REQUIRE(samples.size() == 1);
  CHECK(samples[0].sequence == std::vector<int>{13});
  CHECK(samples[0].features.count("RightAngle") == 1);
  CHECK(samples[0].features.count("goal:LengthOf/Line") == 1);
}

TEST_CASE("unsolvable problems yield no sample") {
  auto samples = sample_sequences({unsolvable_problem()}, kb(), 100, 20, 11);
  CHECK(samples.empty());
}

TEST_CASE("attempts must be positive") {
  CHECK_THROWS_AS(sample_sequences({}, kb(), 0, 20, 1),
                  std::invalid_argument);
}

TEST_CASE("every sample replays to a solved trace") {
  auto p1 = pythagoras_problem();
  SequenceProblem p2;
  p2.id = "isosceles";
  p2.literals =
      parse_all({"Triangle(A,B,C)",
                 "Equals(LengthOf(Line(A,B)),LengthOf(Line(A,C)))",
                 "Equals(MeasureOf(Angle(B,A,C)),40)"});
  p2.goal.goal = parse_literal("Find(MeasureOf(Angle(A,B,C)))");
  p2.goal.choices = {40, 55, 70, 80};
  auto samples = sample_sequences({p1, p2}, kb(), 40, 20, 3);
  REQUIRE(samples.size() == 2);
  for (const auto& s : samples) {
    const auto& prob = s.problem_id == "pyth" ? p1 : p2;
    SearchConfig cfg;
    cfg.strategy = Strategy::predict;
    cfg.predicted = s.sequence;
    cfg.max_steps = std::max<std::size_t>(1, s.sequence.size());
    SearchTrace t = search(prob.literals, prob.goal, kb(), cfg);
    CHECK(t.solved);
  }
}

TEST_CASE("training requires at least one sample") {
  CHECK_THROWS_AS(train_predictor({}), std::invalid_argument);
}

TEST_CASE("a single sample is memorized") {
  SequenceSample s;
  s.problem_id = "only";
  s.features = {{"Triangle", 1}, {"goal:LengthOf/Line", 1}};
  s.sequence = {5, 13};
  FrequencyModel m = train_predictor({s});
  CHECK(m.predict(s.features, 20) == std::vector<int>({5, 13}));
  CHECK(m.predict(s.features, 1) == std::vector<int>({5}));
  CHECK(m.predict(s.features, 0).empty());
}

TEST_CASE("a feature shared by every 13-initial sample makes 13 modal") {
  std::vector<SequenceSample> corpus;
  for (int i = 0; i < 5; ++i) {
    SequenceSample s;
    s.problem_id = "r" + std::to_string(i);
    s.features = {{"RightAngle", 1},
                  {"extra" + std::to_string(i), 1}};
    s.sequence = {13};
    corpus.push_back(s);
  }
  SequenceSample other;
  other.problem_id = "other";
  other.features = {{"Circle", 1}};
  other.sequence = {9};
  corpus.push_back(other);
  FrequencyModel m = train_predictor(corpus);
  auto seq = m.predict({{"RightAngle", 1}, {"unseen", 1}}, 5);
  REQUIRE(!seq.empty());
  CHECK(seq[0] == 13);
}

TEST_CASE("unseen contexts back off to global frequency order") {
  std::vector<SequenceSample> corpus;
  for (int i = 0; i < 3; ++i) {
    SequenceSample s;
    s.problem_id = "a" + std::to_string(i);
    s.features = {{"Triangle", 1}};
    s.sequence = {17, 13};
    corpus.push_back(s);
  }
  SequenceSample one;
  one.problem_id = "b";
  one.features = {{"Circle", 1}};
  one.sequence = {9};
  corpus.push_back(one);
  FrequencyModel m = train_predictor(corpus);
  // features never seen at all: prefix of global frequency order
  auto seq = m.predict({{"Nothing", 1}}, 3);
  REQUIRE(seq.size() == 3);
  CHECK(seq[0] == 13);  // 13 and 17 tie at 3, lower id first
  CHECK(seq[1] == 17);
  CHECK(seq[2] == 9);
}

TEST_CASE("save and load round-trip produces identical decodes") {
  std::vector<SequenceSample> corpus;
  SequenceSample s1{"p1", {{"Triangle", 2}, {"goal:Variable", 1}}, {1, 15}};
  SequenceSample s2{"p2", {{"Circle", 1}, {"goal:AreaOf/Circle", 1}}, {17}};
  corpus = {s1, s2};
  FrequencyModel m = train_predictor(corpus);
  auto path = std::filesystem::temp_directory_path() / "symgeo_model.json";
  m.save(path.string());
  FrequencyModel loaded = FrequencyModel::load(path.string());
  for (const auto& s : corpus)
    CHECK(loaded.predict(s.features, 20) == m.predict(s.features, 20));
  CHECK(loaded.predict({{"Nowhere", 1}}, 4) == m.predict({{"Nowhere", 1}}, 4));
  std::filesystem::remove(path);
}

TEST_CASE("sample corpus serialization round-trips") {
  SequenceSample s{"p9", {{"Triangle", 1}, {"fp:abc", 1}}, {12, 13}};
  auto j = samples_to_json({s});
  auto back = samples_from_json(j);
  REQUIRE(back.size() == 1);
  CHECK(back[0].problem_id == s.problem_id);
  CHECK(back[0].features == s.features);
  CHECK(back[0].sequence == s.sequence);
}

TEST_CASE("predict_sequence plugs into search as the predicted prefix") {
  auto prob = pythagoras_problem();
  auto samples = sample_sequences({prob}, kb(), 30, 20, 11);
  FrequencyModel m = train_predictor(samples);
  auto seq = predict_sequence(m, prob.literals, prob.goal.goal, 20);
  REQUIRE(!seq.empty());
  CHECK(seq[0] == 13);
  SearchConfig cfg;
  cfg.strategy = Strategy::predict;
  cfg.predicted = seq;
  SearchTrace t = search(prob.literals, prob.goal, kb(), cfg);
  CHECK(t.solved);
  CHECK(t.steps_used == 1);
}
