#include "spec_file.hpp"

#include <fstream>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

namespace tangential::cli {

namespace {

const std::set<std::string> kKeys{"function", "m", "epsilon", "K", "degree_cap", "mode", "grid_per_unit"};

int integer_field(const nlohmann::json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number_integer()) throw SpecError(std::string("\"") + key + "\" must be an integer");
  return v.get<int>();
}

double number_field(const nlohmann::json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number()) throw SpecError(std::string("\"") + key + "\" must be a number");
  return v.get<double>();
}

Expr expression_field(const nlohmann::json& v, const char* what) {
  if (!v.is_string()) throw SpecError(std::string(what) + " must be an expression string");
  return parse(v.get<std::string>());
}

Expr function_field(const nlohmann::json& v) {
  if (v.is_string()) return parse(v.get<std::string>());
  if (!v.is_object()) throw SpecError("\"function\" must be a string or {\"re\": ..., \"im\": ...}");
  for (const auto& [key, _] : v.items()) {
    if (key != "re" && key != "im") throw SpecError("unknown key \"" + key + "\" in \"function\"");
  }
  if (!v.contains("re") || !v.contains("im")) throw SpecError("\"function\" object needs both \"re\" and \"im\"");
  return combine_complex(expression_field(v["re"], "\"function.re\""), expression_field(v["im"], "\"function.im\""));
}

}  // namespace

ApproximationSpec spec_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw SpecError("spec must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (!kKeys.contains(key)) throw SpecError("unknown key \"" + key + "\"");
  }
  for (const char* key : {"function", "m"}) {
    if (!doc.contains(key)) throw SpecError(std::string("missing key \"") + key + "\"");
  }

  ApproximationSpec spec;
  spec.f = function_field(doc["function"]);
  spec.m = integer_field(doc, "m");
  if (doc.contains("degree_cap")) spec.degree_cap = integer_field(doc, "degree_cap");
  if (doc.contains("grid_per_unit")) spec.grid_per_unit = integer_field(doc, "grid_per_unit");

  const nlohmann::json mode = doc.value("mode", nlohmann::json("line"));
  if (mode.is_string()) {
    if (mode.get<std::string>() != "line") throw SpecError("\"mode\" must be \"line\" or {\"compact\": {...}}");
    for (const char* key : {"epsilon", "K"}) {
      if (!doc.contains(key)) throw SpecError(std::string("missing key \"") + key + "\" (required in line mode)");
    }
    spec.eps = expression_field(doc["epsilon"], "\"epsilon\"");
    spec.K = integer_field(doc, "K");
  } else if (mode.is_object() && mode.size() == 1 && mode.contains("compact")) {
    const auto& w = mode["compact"];
    if (!w.is_object()) throw SpecError("\"mode.compact\" must be an object");
    for (const auto& [key, _] : w.items()) {
      if (key != "a" && key != "b" && key != "eps") throw SpecError("unknown key \"" + key + "\" in \"mode.compact\"");
    }
    for (const char* key : {"a", "b", "eps"}) {
      if (!w.contains(key)) throw SpecError(std::string("missing key \"mode.compact.") + key + "\"");
    }
    spec.compact = CompactWindow{number_field(w, "a"), number_field(w, "b"), number_field(w, "eps")};
    spec.eps = Expr::constant(spec.compact->eps);
    if (doc.contains("epsilon")) spec.eps = expression_field(doc["epsilon"], "\"epsilon\"");
    spec.K = doc.contains("K") ? integer_field(doc, "K") : 0;
  } else {
    throw SpecError("\"mode\" must be \"line\" or {\"compact\": {...}}");
  }

  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw SpecError(e.what());
  }
  return spec;
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(path.string() + ": " + e.what());
  }
}

ApproximationSpec load_spec(const std::filesystem::path& path) { return spec_from_json(read_json(path)); }

}  // namespace tangential::cli
