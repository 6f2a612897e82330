#include "rainbow/report_json.hpp"

#include <cmath>

namespace rainbow {

using nlohmann::ordered_json;

namespace {

// JSON has no infinity; an overflowing L formula is written as null
ordered_json finite_or_null(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

}  // namespace

ordered_json params_json(const ParamSet& ps) {
  ordered_json j;
  j["n"] = ps.n;
  j["epsilon"] = ps.epsilon;
  j["theta"] = ps.theta;
  j["epsilon_i"] = ps.epsilon_i;
  j["theta_i"] = ps.theta_i;
  j["p"] = ps.p;
  j["p_merged"] = ps.p_merged;
  j["kappa"] = ps.kappa;
  j["class_size"] = ps.class_size;
  j["gamma"] = ps.gamma;
  j["L_formula"] = finite_or_null(ps.L_formula);
  j["log_L_formula"] = ps.log_L_formula;
  j["L_effective"] = ps.L_effective;
  j["L_overridden"] = ps.L_overridden;
  j["L_capped"] = ps.L_capped;
  j["probabilities_overridden"] = ps.probabilities_overridden;
  return j;
}

ordered_json report_json(const TrialReport& r) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["seed"] = r.seed;
  j["params"] = params_json(r.params);
  j["precondition"] = {{"satisfied", r.precondition_satisfied}, {"bound", r.precondition_bound}};
  j["oracle_mode"] = r.oracle_mode;
  j["success"] = r.success();
  ordered_json stages = ordered_json::array();
  for (const auto& st : r.stages) {
    ordered_json s;
    s["stage"] = to_string(st.stage);
    s["status"] = to_string(st.status);
    s["attempts"] = st.attempts;
    if (!st.reason.empty()) s["reason"] = st.reason;
    if (st.seconds > 0) s["seconds"] = st.seconds;
    stages.push_back(std::move(s));
  }
  j["stages"] = std::move(stages);
  const auto& d = r.diag;
  ordered_json dj;
  dj["S0"] = d.s0;
  dj["S"] = d.s;
  dj["S00"] = d.s00;
  dj["S00_min_distance"] = d.s00_min_distance ? ordered_json(*d.s00_min_distance) : ordered_json(nullptr);
  dj["max_G2_neighbors_in_S"] = d.max_g2_neighbors_in_s;
  dj["cover_paths"] = d.cover_paths;
  dj["path_length"] = d.path_length;
  dj["path_target"] = d.path_target;
  dj["red_count"] = d.red_count;
  dj["segments_initial"] = d.segments_initial;
  dj["segments_final"] = d.segments_final;
  dj["absorptions"] = d.absorptions;
  dj["bad_endpoints_step1"] = d.bad_step1;
  dj["bad_endpoints_step4"] = d.bad_step4;
  dj["merges"] = d.merges;
  dj["endpoint_threshold"] = d.endpoint_threshold;
  dj["gamma_r"] = d.gamma_r;
  dj["gamma_arcs"] = d.gamma_arcs;
  dj["gamma_duplicates"] = d.gamma_duplicates;
  dj["pruned_arcs"] = d.pruned_arcs;
  dj["hamilton_mode"] = d.hamilton_mode;
  dj["colors_used"] = d.colors_used;
  dj["exposures"] = d.exposures;
  j["diagnostics"] = std::move(dj);
  if (r.certificate) {
    j["certificate"] = {{"order", r.certificate->order}, {"colors", r.certificate->colors}};
  } else if (r.failure) {
    j["failure"] = {{"stage", to_string(r.failure->stage)}, {"reason", r.failure->reason}};
  }
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace rainbow
