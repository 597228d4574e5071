#include <nlohmann/json.hpp>

#include "tangential/hoischen.hpp"

namespace tangential {

namespace {

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const Stage& st) {
  return {
      {"k", st.k},
      {"budget", st.budget},
      {"degree", st.degree},
      {"point_constraints", st.point_constraints},
      {"moment_constraints", st.moment_constraints},
      {"certified_errors",
       {{"disk", optional_number(st.disk_error)}, {"left", st.left_error}, {"right", st.right_error}}},
      {"step_on_disk", optional_number(st.step_on_disk)},
      {"constraint_residuals", {{"point", st.point_residual}, {"moment", st.moment_residual}}},
      {"glue_moment_gap", st.glue_moment_gap},
      {"g", to_json(st.g)},
  };
}

nlohmann::json to_json(const Certificate& cert) {
  nlohmann::json derivs = nlohmann::json::array();
  for (const auto& d : cert.derivatives) {
    derivs.push_back({{"order", d.order},
                      {"max_abs_error", d.max_abs_error},
                      {"max_ratio", d.max_ratio},
                      {"worst_x", d.worst_x}});
  }
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : cert.node_residuals) nodes.push_back({{"order", n.order}, {"node", n.node}, {"residual", n.residual}});
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : cert.moment_residuals) cells.push_back({{"cell", c.cell}, {"residual", c.residual}});
  return {
      {"pass", cert.pass},
      {"ratios_pass", cert.ratios_pass},
      {"residuals_pass", cert.residuals_pass},
      {"derivatives", derivs},
      {"node_residuals", nodes},
      {"moment_residuals", cells},
      {"max_node_residual", cert.max_node_residual},
      {"max_moment_residual", cert.max_moment_residual},
  };
}

nlohmann::json to_json(const ApproximationSpec& spec) {
  nlohmann::json out{
      {"function", to_string(spec.f)},
      {"m", spec.m},
      {"degree_cap", spec.degree_cap},
      {"grid_per_unit", spec.grid_per_unit},
  };
  if (spec.compact) {
    out["mode"] = {{"compact", {{"a", spec.compact->a}, {"b", spec.compact->b}, {"eps", spec.compact->eps}}}};
  } else {
    out["epsilon"] = to_string(spec.eps);
    out["K"] = spec.K;
    out["mode"] = "line";
  }
  return out;
}

nlohmann::json to_json(const Artifact& art) {
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& st : art.stages) stages.push_back(to_json(st));
  return {
      {"g", to_json(art.g)},
      {"taylor", to_json(art.taylor)},
      {"m", art.spec.m},
      {"K", art.spec.K},
      {"spec", to_json(art.spec)},
      {"stages", stages},
      {"certificate", to_json(art.certificate)},
  };
}

}  // namespace tangential
