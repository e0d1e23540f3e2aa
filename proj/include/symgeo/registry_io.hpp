// Registry serialization: the predicate table ships as a JSON asset so the
// language definition can be audited and diffed without reading code.

#pragma once

#include <fstream>

#include <json.hpp>

#include "symgeo/registry.hpp"

namespace symgeo {

inline std::optional<Sort> sort_from_string(const std::string& s) {
  static const std::vector<Sort> all = {
      Sort::point,        Sort::name,       Sort::line_ref,
      Sort::angle_ref,    Sort::circle_ref, Sort::arc_ref,
      Sort::triangle_ref, Sort::quad_ref,   Sort::trapezoid_ref,
      Sort::polygon_ref,  Sort::shape_ref,  Sort::measurable_ref,
      Sort::numeric,      Sort::any};
  for (Sort x : all)
    if (s == to_string(x)) return x;
  return std::nullopt;
}

inline std::optional<Category> category_from_string(const std::string& s) {
  static const std::vector<Category> all = {
      Category::shape,           Category::unary_attribute,
      Category::general_attribute, Category::binary_relation,
      Category::is_x_of_relation, Category::numeric};
  for (Category x : all)
    if (s == to_string(x)) return x;
  return std::nullopt;
}

inline std::optional<Symmetry> symmetry_from_string(const std::string& s) {
  static const std::vector<Symmetry> all = {
      Symmetry::none,  Symmetry::sort_args,  Symmetry::middle_fixed,
      Symmetry::cycle, Symmetry::joint_pair, Symmetry::lines_then_point};
  for (Symmetry x : all)
    if (s == to_string(x)) return x;
  return std::nullopt;
}

inline std::optional<ValueKind> value_kind_from_string(const std::string& s) {
  static const std::vector<ValueKind> all = {
      ValueKind::statement, ValueKind::numeric_value, ValueKind::point_value,
      ValueKind::shape_value};
  for (ValueKind x : all)
    if (s == to_string(x)) return x;
  return std::nullopt;
}

inline nlohmann::json registry_to_json(const Registry& reg) {
  nlohmann::json preds = nlohmann::json::array();
  for (const auto& p : reg.predicates()) {
    nlohmann::json forms = nlohmann::json::array();
    for (const auto& f : p.forms) {
      nlohmann::json jf;
      jf["min_arity"] = f.min_arity;
      jf["max_arity"] = f.max_arity;
      nlohmann::json prefix = nlohmann::json::array();
      for (Sort s : f.prefix) prefix.push_back(to_string(s));
      jf["sorts"] = std::move(prefix);
      if (f.rest) jf["rest"] = to_string(*f.rest);
      if (!f.suffix.empty()) {
        nlohmann::json suffix = nlohmann::json::array();
        for (Sort s : f.suffix) suffix.push_back(to_string(s));
        jf["suffix"] = std::move(suffix);
      }
      forms.push_back(std::move(jf));
    }
    preds.push_back({{"name", p.name},
                     {"category", to_string(p.category)},
                     {"value", to_string(p.value)},
                     {"symmetry", to_string(p.symmetry)},
                     {"forms", std::move(forms)},
                     {"templates", p.templates}});
  }
  return nlohmann::json{{"format", "predicate-registry"},
                        {"count", reg.predicates().size()},
                        {"predicates", std::move(preds)}};
}

inline Registry registry_from_json(const nlohmann::json& j) {
  Registry reg;
  for (const auto& jp : j.at("predicates")) {
    Predicate p;
    p.name = jp.at("name").get<std::string>();
    auto cat = category_from_string(jp.at("category").get<std::string>());
    auto val = value_kind_from_string(jp.at("value").get<std::string>());
    auto sym = symmetry_from_string(jp.at("symmetry").get<std::string>());
    if (!cat || !val || !sym)
      throw std::runtime_error("bad enum in registry record " + p.name);
    p.category = *cat;
    p.value = *val;
    p.symmetry = *sym;
    for (const auto& jf : jp.at("forms")) {
      Form f;
      f.min_arity = jf.at("min_arity").get<int>();
      f.max_arity = jf.at("max_arity").get<int>();
      for (const auto& s : jf.at("sorts")) {
        auto sort = sort_from_string(s.get<std::string>());
        if (!sort) throw std::runtime_error("bad sort in " + p.name);
        f.prefix.push_back(*sort);
      }
      if (jf.contains("rest")) {
        auto sort = sort_from_string(jf["rest"].get<std::string>());
        if (!sort) throw std::runtime_error("bad rest sort in " + p.name);
        f.rest = *sort;
      }
      if (jf.contains("suffix"))
        for (const auto& s : jf["suffix"]) {
          auto sort = sort_from_string(s.get<std::string>());
          if (!sort) throw std::runtime_error("bad suffix sort in " + p.name);
          f.suffix.push_back(*sort);
        }
      p.forms.push_back(std::move(f));
    }
    if (jp.contains("templates"))
      p.templates = jp["templates"].get<std::vector<std::string>>();
    reg.add(std::move(p));
  }
  return reg;
}

inline Registry load_registry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open registry file: " + path);
  nlohmann::json j;
  in >> j;
  return registry_from_json(j);
}

inline void save_registry(const Registry& reg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write registry file: " + path);
  out << registry_to_json(reg).dump(2) << "\n";
}

}  // namespace symgeo
