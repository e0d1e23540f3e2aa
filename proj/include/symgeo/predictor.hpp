// Theorem-sequence predictor.  Training data is generated by attempting
// each problem with seeded random search and keeping the shortest sequence
// that solved it.  The model is a smoothed frequency table over
// (problem feature, previous theorem) -> next theorem transitions with a
// global-frequency back-off; it serves the same interface a learned
// sequence model would (literals in, theorem-id sequence out), so one can
// be swapped in later.

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "symgeo/search.hpp"

namespace symgeo {

struct SequenceSample {
  std::string problem_id;
  std::map<std::string, int> features;  // multiset of feature tags
  std::vector<int> sequence;            // pseudo-optimal theorem ids
};

// Feature tags: every predicate head in the problem literals, a goal tag
// for the Find target (attribute head plus the shape it applies to, e.g.
// goal:AreaOf/Circle), and a fingerprint of the whole tag set so decoding
// can recognize a problem shape it was trained on.
inline std::map<std::string, int> literal_features(
    const std::vector<Literal>& literals, const Literal& goal) {
  std::map<std::string, int> out;
  for (const auto& l : literals) {
    std::vector<std::string> heads;
    collect_heads(l, heads);
    for (auto& h : heads) out[h]++;
  }
  if (goal.arity() >= 1) {
    const Term& g = goal.arg(0);
    if (g.is_literal()) {
      std::string tag = g.as_literal().head();
      if (g.as_literal().arity() >= 1 && g.as_literal().arg(0).is_literal())
        tag += "/" + g.as_literal().arg(0).as_literal().head();
      out["goal:" + tag]++;
    } else {
      out[g.is_variable() ? "goal:Variable" : "goal:Identifier"]++;
    }
  }
  std::string digest;
  for (const auto& [f, n] : out)
    digest += f + "*" + std::to_string(n) + ";";
  char buf[24];
  std::snprintf(buf, sizeof buf, "fp:%016llx",
                static_cast<unsigned long long>(fnv1a(digest)));
  out[buf]++;
  return out;
}

inline bool is_fingerprint_feature(const std::string& f) {
  return f.rfind("fp:", 0) == 0;
}

// Attempts each problem `attempts` times with seeded random search capped
// at `max_len` steps; emits the shortest solving sequence per problem.
struct SequenceProblem {
  std::string id;
  std::vector<Literal> literals;
  GoalSpec goal;
};

inline std::vector<SequenceSample> sample_sequences(
    const std::vector<SequenceProblem>& problems, const KnowledgeBase& kb,
    int attempts, int max_len, std::uint64_t seed,
    const Registry& reg = builtin_registry()) {
  if (attempts < 1) throw std::invalid_argument("attempts must be >= 1");
  std::vector<SequenceSample> out;
  for (const auto& p : problems) {
    std::vector<int> best;
    bool have = false;
    for (int a = 0; a < attempts; ++a) {
      SearchConfig cfg;
      cfg.strategy = Strategy::random;
      cfg.max_steps = max_len;
      cfg.seed = mix_seed(seed, p.id) ^ (0x5151ull * (a + 1));
      SearchTrace t = search(p.literals, p.goal, kb, cfg, reg);
      if (!t.solved) continue;
      std::vector<int> seq;
      for (const auto& s : t.applied) seq.push_back(s.theorem_id);
      if (!have || seq.size() < best.size()) {
        best = std::move(seq);
        have = true;
      }
      if (best.empty()) break;  // solved from the inputs alone
    }
    if (!have) continue;  // never solved within the budget: no sample
    SequenceSample s;
    s.problem_id = p.id;
    s.features = literal_features(p.literals, p.goal.goal);
    s.sequence = std::move(best);
    out.push_back(std::move(s));
  }
  return out;
}

// Conditional counts of next-theorem given (feature, previous) context.
// Token 0 is the start marker and -1 the end marker.
class FrequencyModel {
 public:
  static constexpr int kStart = 0;
  static constexpr int kEnd = -1;

  void train(const std::vector<SequenceSample>& samples, double smoothing = 1.0) {
    if (samples.empty())
      throw std::invalid_argument("cannot train on an empty sample set");
    smoothing_ = smoothing;
    counts_.clear();
    global_.clear();
    for (const auto& s : samples) {
      int prev = kStart;
      std::vector<int> tokens = s.sequence;
      tokens.push_back(kEnd);
      for (int tok : tokens) {
        for (const auto& [f, n] : s.features) {
          (void)n;
          counts_[f][prev][tok]++;
        }
        if (tok != kEnd) global_[tok]++;
        prev = tok;
      }
    }
  }

  // Greedy decode with a specificity ladder per step: a fingerprint
  // context seen in training wins outright; otherwise the generic features
  // vote naive-Bayes style with add-k smoothing; a wholly unseen context
  // backs off to global frequency order (without repeats).  Deterministic:
  // ties resolve to the lower theorem id, the end token only wins strictly.
  std::vector<int> predict(const std::map<std::string, int>& features,
                           int max_len) const {
    std::vector<int> out;
    std::set<int> used;
    int prev = kStart;
    for (int step = 0; step < max_len; ++step) {
      const std::map<int, long>* exact = nullptr;
      for (const auto& [f, n] : features) {
        (void)n;
        if (!is_fingerprint_feature(f)) continue;
        auto fit = counts_.find(f);
        if (fit == counts_.end()) continue;
        auto pit = fit->second.find(prev);
        if (pit != fit->second.end()) exact = &pit->second;
      }
      int pick = kEnd;
      if (exact) {
        pick = argmax_token(*exact);
      } else {
        std::map<int, double> score;
        bool any = false;
        std::set<int> vocab{kEnd};
        for (const auto& [tok, cnt] : global_) {
          (void)cnt;
          vocab.insert(tok);
        }
        for (const auto& [f, n] : features) {
          (void)n;
          auto fit = counts_.find(f);
          if (fit == counts_.end()) continue;
          auto pit = fit->second.find(prev);
          if (pit == fit->second.end()) continue;
          any = true;
          double total = 0;
          for (const auto& [tok, cnt] : pit->second) total += cnt;
          double denom = total + smoothing_ * static_cast<double>(vocab.size());
          for (int tok : vocab) {
            auto cit = pit->second.find(tok);
            double c = cit == pit->second.end() ? 0.0 : cit->second;
            score[tok] += std::log((c + smoothing_) / denom);
          }
        }
        if (!any) {
          // Back-off: next most frequent theorem overall, skipping repeats.
          int fallback = 0;
          long best = -1;
          for (const auto& [tok, cnt] : global_) {
            if (used.count(tok)) continue;
            if (cnt > best || (cnt == best && tok < fallback)) {
              best = cnt;
              fallback = tok;
            }
          }
          if (best < 0) break;
          out.push_back(fallback);
          used.insert(fallback);
          prev = fallback;
          continue;
        }
        pick = kEnd;
        double best_score = score.count(kEnd)
                                ? score[kEnd]
                                : -std::numeric_limits<double>::infinity();
        for (const auto& [tok, sc] : score) {
          if (tok == kEnd) continue;
          if (sc > best_score ||
              (sc == best_score && (pick == kEnd || tok < pick))) {
            best_score = sc;
            pick = tok;
          }
        }
      }
      if (pick == kEnd) break;
      out.push_back(pick);
      used.insert(pick);
      prev = pick;
    }
    return out;
  }

  // Highest-count token; ties go to the lower theorem id and the end
  // marker wins only when strictly ahead.
  static int argmax_token(const std::map<int, long>& counts) {
    int pick = kEnd;
    long best = -1;
    for (const auto& [tok, cnt] : counts) {
      if (tok == kEnd) continue;
      if (cnt > best || (cnt == best && (pick == kEnd || tok < pick))) {
        best = cnt;
        pick = tok;
      }
    }
    auto eit = counts.find(kEnd);
    if (eit != counts.end() && eit->second > best) return kEnd;
    return pick;
  }

  nlohmann::json to_json() const {
    nlohmann::json jt = nlohmann::json::object();
    for (const auto& [f, by_prev] : counts_) {
      nlohmann::json jp = nlohmann::json::object();
      for (const auto& [prev, nexts] : by_prev) {
        nlohmann::json jn = nlohmann::json::object();
        for (const auto& [tok, cnt] : nexts)
          jn[std::to_string(tok)] = cnt;
        jp[std::to_string(prev)] = std::move(jn);
      }
      jt[f] = std::move(jp);
    }
    nlohmann::json jg = nlohmann::json::object();
    for (const auto& [tok, cnt] : global_) jg[std::to_string(tok)] = cnt;
    return nlohmann::json{{"format", "frequency-model"},
                          {"version", 1},
                          {"smoothing", smoothing_},
                          {"global", jg},
                          {"table", jt}};
  }

  static FrequencyModel from_json(const nlohmann::json& j) {
    if (j.value("format", "") != "frequency-model")
      throw std::runtime_error("not a frequency-model file");
    FrequencyModel m;
    m.smoothing_ = j.at("smoothing").get<double>();
    for (const auto& [tok, cnt] : j.at("global").items())
      m.global_[std::stoi(tok)] = cnt.get<long>();
    for (const auto& [f, by_prev] : j.at("table").items())
      for (const auto& [prev, nexts] : by_prev.items())
        for (const auto& [tok, cnt] : nexts.items())
          m.counts_[f][std::stoi(prev)][std::stoi(tok)] = cnt.get<long>();
    return m;
  }

  void save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write model file: " + path);
    out << to_json().dump(2) << "\n";
  }

  static FrequencyModel load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    nlohmann::json j;
    in >> j;
    return from_json(j);
  }

  bool trained() const { return !global_.empty() || !counts_.empty(); }

 private:
  double smoothing_ = 1.0;
  // feature -> previous token -> next token -> count
  std::map<std::string, std::map<int, std::map<int, long>>> counts_;
  std::map<int, long> global_;
};

inline FrequencyModel train_predictor(
    const std::vector<SequenceSample>& samples, double smoothing = 1.0) {
  FrequencyModel m;
  m.train(samples, smoothing);
  return m;
}

inline std::vector<int> predict_sequence(const FrequencyModel& model,
                                         const std::vector<Literal>& literals,
                                         const Literal& goal, int max_len) {
  return model.predict(literal_features(literals, goal), max_len);
}

// --- sample corpus serialization ----------------------------------------

inline nlohmann::json samples_to_json(const std::vector<SequenceSample>& ss) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : ss) {
    nlohmann::json jf = nlohmann::json::object();
    for (const auto& [f, n] : s.features) jf[f] = n;
    arr.push_back({{"problem_id", s.problem_id},
                   {"features", jf},
                   {"sequence", s.sequence}});
  }
  return nlohmann::json{{"format", "sequence-samples"}, {"samples", arr}};
}

inline std::vector<SequenceSample> samples_from_json(const nlohmann::json& j) {
  std::vector<SequenceSample> out;
  for (const auto& js : j.at("samples")) {
    SequenceSample s;
    s.problem_id = js.at("problem_id").get<std::string>();
    for (const auto& [f, n] : js.at("features").items())
      s.features[f] = n.get<int>();
    s.sequence = js.at("sequence").get<std::vector<int>>();
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace symgeo
