// Problem records, the canonical corpus file format, and the import
// adapter for the released Geometry3K layout (one directory per problem
// holding data.json with problem text, choices, answer, and logic forms).
// Records with unparseable annotations are quarantined with reasons rather
// than dropped.

#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <json.hpp>

#include "symgeo/normalize.hpp"
#include "symgeo/parse.hpp"
#include "symgeo/search.hpp"
#include "symgeo/validate.hpp"

namespace symgeo {

enum class GoalTag { angle, length, area, ratio };
enum class ShapeTag { line, triangle, quad, circle, other };

inline const char* to_string(GoalTag t) {
  switch (t) {
    case GoalTag::angle: return "Angle";
    case GoalTag::length: return "Length";
    case GoalTag::area: return "Area";
    case GoalTag::ratio: return "Ratio";
  }
  return "?";
}
inline const char* to_string(ShapeTag t) {
  switch (t) {
    case ShapeTag::line: return "Line";
    case ShapeTag::triangle: return "Triangle";
    case ShapeTag::quad: return "Quad";
    case ShapeTag::circle: return "Circle";
    case ShapeTag::other: return "Other";
  }
  return "?";
}

inline std::optional<GoalTag> goal_tag_from(const std::string& s) {
  if (s == "Angle") return GoalTag::angle;
  if (s == "Length") return GoalTag::length;
  if (s == "Area") return GoalTag::area;
  if (s == "Ratio") return GoalTag::ratio;
  return std::nullopt;
}
inline std::optional<ShapeTag> shape_tag_from(const std::string& s) {
  if (s == "Line") return ShapeTag::line;
  if (s == "Triangle") return ShapeTag::triangle;
  if (s == "Quad") return ShapeTag::quad;
  if (s == "Circle") return ShapeTag::circle;
  if (s == "Other") return ShapeTag::other;
  return std::nullopt;
}

struct ProblemRecord {
  std::string id;
  std::string text;
  std::string diagram_ref;  // opaque; the solver never opens it
  std::array<double, 4> choices{};
  std::optional<int> answer_index;  // 0-based
  Literal goal;                     // Find(...)
  std::vector<Literal> text_literals;
  std::vector<Literal> diagram_literals;
  GoalTag goal_tag = GoalTag::length;
  ShapeTag shape_tag = ShapeTag::other;

  GoalSpec goal_spec() const {
    GoalSpec g;
    g.goal = goal;
    g.choices = choices;
    g.answer_index = answer_index;
    return g;
  }

  std::vector<Literal> ground_truth_literals() const {
    std::vector<Literal> all = text_literals;
    all.insert(all.end(), diagram_literals.begin(), diagram_literals.end());
    return all;
  }
};

struct QuarantineEntry {
  std::string id;
  std::string reason;
};

struct ImportResult {
  std::vector<ProblemRecord> problems;
  std::vector<QuarantineEntry> quarantined;
};

// --- annotation string preparation ---------------------------------------

// The released annotations carry LaTeX-ish tokens inside literal strings
// (3\sqrt{2}, \frac{1}{2}, 12\pi).  These are rewritten into SqrtOf/Div/
// Mul(...,pi) forms before the literal grammar sees them.
inline std::string prepare_annotation(const std::string& raw) {
  std::string s = raw;
  s = std::regex_replace(
      s, std::regex(R"((\d+(?:\.\d+)?)\s*\\sqrt\s*\{([^{}]*)\})"),
      "Mul($1,SqrtOf($2))");
  s = std::regex_replace(s, std::regex(R"(\\sqrt\s*\{([^{}]*)\})"),
                         "SqrtOf($1)");
  s = std::regex_replace(
      s, std::regex(R"(\\frac\s*\{([^{}]*)\}\s*\{([^{}]*)\})"), "Div($1,$2)");
  s = std::regex_replace(s, std::regex(R"((\d+(?:\.\d+)?)\s*\\?pi)"),
                         "Mul($1,pi)");
  s = std::regex_replace(s, std::regex(R"(\\pi)"), "pi");
  return s;
}

// Numeric value of a choice string such as "5", "2\sqrt{3}", "12\pi",
// "\frac{3}{4}".
inline std::optional<double> choice_value(const std::string& raw) {
  std::string s = prepare_annotation(raw);
  // Strip whitespace.
  std::string clean;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) clean += c;
  if (clean.empty()) return std::nullopt;
  try {
    // Either a plain number or an arithmetic literal like Mul(2,SqrtOf(3)).
    if (clean.find('(') == std::string::npos) {
      std::size_t used = 0;
      double v = std::stod(clean, &used);
      if (used != clean.size()) return std::nullopt;
      return v;
    }
    Literal l = parse_literal(clean);
    auto resolve = [](const Term&) -> int { return -1; };
    Expr e = compile_numeric(Term::literal(l), builtin_registry(), resolve);
    double v = eval_expr(e, {});
    if (!std::isfinite(v)) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// --- canonical corpus format ----------------------------------------------

inline nlohmann::json problem_to_json(const ProblemRecord& p) {
  nlohmann::json j;
  j["id"] = p.id;
  j["text"] = p.text;
  if (!p.diagram_ref.empty()) j["diagram_ref"] = p.diagram_ref;
  j["choices"] = p.choices;
  if (p.answer_index) j["answer_index"] = *p.answer_index;
  j["goal"] = serialize_literal(p.goal);
  nlohmann::json tl = nlohmann::json::array();
  for (const auto& l : p.text_literals) tl.push_back(serialize_literal(l));
  j["text_literals"] = std::move(tl);
  nlohmann::json dl = nlohmann::json::array();
  for (const auto& l : p.diagram_literals) dl.push_back(serialize_literal(l));
  j["diagram_literals"] = std::move(dl);
  j["tags"] = {{"goal", to_string(p.goal_tag)},
               {"shape", to_string(p.shape_tag)}};
  return j;
}

inline ProblemRecord problem_from_json(const nlohmann::json& j,
                                       const Registry& reg) {
  ProblemRecord p;
  p.id = j.at("id").get<std::string>();
  p.text = j.value("text", "");
  p.diagram_ref = j.value("diagram_ref", "");
  auto ch = j.at("choices");
  if (!ch.is_array() || ch.size() != 4)
    throw std::runtime_error("problem " + p.id + ": needs exactly 4 choices");
  for (int i = 0; i < 4; ++i) {
    p.choices[i] = ch[i].get<double>();
    if (!std::isfinite(p.choices[i]))
      throw std::runtime_error("problem " + p.id + ": non-finite choice");
  }
  if (j.contains("answer_index")) p.answer_index = j["answer_index"].get<int>();
  p.goal = normalize_literal(parse_literal(j.at("goal").get<std::string>(), reg), reg);
  for (const auto& s : j.value("text_literals", nlohmann::json::array()))
    p.text_literals.push_back(
        normalize_literal(parse_literal(s.get<std::string>(), reg), reg));
  for (const auto& s : j.value("diagram_literals", nlohmann::json::array()))
    p.diagram_literals.push_back(
        normalize_literal(parse_literal(s.get<std::string>(), reg), reg));
  if (j.contains("tags")) {
    auto g = goal_tag_from(j["tags"].value("goal", ""));
    auto s = shape_tag_from(j["tags"].value("shape", ""));
    if (g) p.goal_tag = *g;
    if (s) p.shape_tag = *s;
  }
  return p;
}

inline std::vector<ProblemRecord> load_corpus(
    const std::string& path, const Registry& reg = builtin_registry()) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);
  nlohmann::json j;
  in >> j;
  std::vector<ProblemRecord> out;
  for (const auto& jp : j.at("problems"))
    out.push_back(problem_from_json(jp, reg));
  return out;
}

inline void save_corpus(const std::vector<ProblemRecord>& problems,
                        const std::string& path) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : problems) arr.push_back(problem_to_json(p));
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write corpus file: " + path);
  out << nlohmann::json{{"format", "problem-corpus"}, {"problems", arr}}.dump(2)
      << "\n";
}

// --- Geometry3K import ------------------------------------------------------

// Derives a Find goal from the text literals when the annotation does not
// carry one explicitly.
inline std::optional<Literal> find_goal(const std::vector<Literal>& lits) {
  for (const auto& l : lits)
    if (l.head() == "Find") return l;
  return std::nullopt;
}

// Reads the released per-problem directory layout.  `root` may be the
// dataset root (with train/val/test subdirectories) or a single split
// directory.
inline ImportResult import_geometry3k(const std::string& root,
                                      const Registry& reg = builtin_registry()) {
  namespace fs = std::filesystem;
  ImportResult out;
  if (!fs::exists(root))
    throw std::runtime_error("dataset root not found: " + root);

  std::vector<fs::path> problem_dirs;
  auto note_dir = [&](const fs::path& dir) {
    if (fs::exists(dir / "data.json")) problem_dirs.push_back(dir);
  };
  for (const auto& entry : fs::directory_iterator(root)) {
    if (!entry.is_directory()) continue;
    note_dir(entry.path());
    for (const auto& sub : fs::directory_iterator(entry.path()))
      if (sub.is_directory()) note_dir(sub.path());
  }
  std::sort(problem_dirs.begin(), problem_dirs.end());

  for (const auto& dir : problem_dirs) {
    std::string id = dir.filename().string();
    try {
      std::ifstream in(dir / "data.json");
      nlohmann::json j;
      in >> j;
      ProblemRecord p;
      p.id = id;
      p.text = j.value("problem_text", j.value("text", ""));
      p.diagram_ref = (dir / "img_diagram.png").string();

      auto jc = j.at("choices");
      if (jc.size() != 4) throw std::runtime_error("expected 4 choices");
      for (int i = 0; i < 4; ++i) {
        auto v = jc[i].is_string() ? choice_value(jc[i].get<std::string>())
                                   : std::optional<double>(jc[i].get<double>());
        if (!v) throw std::runtime_error("unparseable choice: " +
                                         jc[i].dump());
        p.choices[i] = *v;
      }
      if (j.contains("answer")) {
        const auto& ja = j["answer"];
        if (ja.is_string()) {
          std::string a = ja.get<std::string>();
          if (a.size() == 1 && a[0] >= 'A' && a[0] <= 'D')
            p.answer_index = a[0] - 'A';
          else if (auto v = choice_value(a)) {
            int best = 0;
            for (int i = 1; i < 4; ++i)
              if (std::fabs(p.choices[i] - *v) <
                  std::fabs(p.choices[best] - *v))
                best = i;
            p.answer_index = best;
          }
        } else if (ja.is_number_integer()) {
          p.answer_index = ja.get<int>();
        }
      }

      const nlohmann::json* logic = nullptr;
      if (j.contains("logic_form")) logic = &j["logic_form"];
      auto parse_list = [&](const char* key, std::vector<Literal>& into) {
        if (!logic || !logic->contains(key)) return;
        for (const auto& s : (*logic)[key]) {
          std::string prepared = prepare_annotation(s.get<std::string>());
          into.push_back(normalize_literal(parse_literal(prepared, reg), reg));
        }
      };
      parse_list("text_logic_form", p.text_literals);
      parse_list("diagram_logic_form", p.diagram_literals);

      auto goal = find_goal(p.text_literals);
      if (!goal) goal = find_goal(p.diagram_literals);
      if (!goal) throw std::runtime_error("no Find goal in annotations");
      p.goal = *goal;

      std::string gtype = j.value("problem_type_goal", "");
      if (auto g = goal_tag_from(gtype)) p.goal_tag = *g;
      std::string stype = j.value("problem_type_graph", "");
      if (auto s = shape_tag_from(stype)) p.shape_tag = *s;

      out.problems.push_back(std::move(p));
    } catch (const std::exception& e) {
      out.quarantined.push_back({id, e.what()});
    }
  }
  return out;
}

}  // namespace symgeo
