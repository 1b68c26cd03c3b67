#include "sptkit/defaults.hpp"

#include "json_util.hpp"

namespace sptkit {

const Defaults& defaults() {
  static const Defaults table;
  return table;
}

std::string defaults_json(int indent) {
  using detail::ordered_json;
  const Defaults& d = defaults();
  ordered_json schedule = ordered_json::array();
  for (const auto& st : d.itebd.schedule) schedule.push_back({{"dt", st.dt}, {"steps", st.steps}});
  ordered_json j;
  j["version"] = d.version;
  j["seed"] = d.seed;
  j["cg_seed"] = d.cg_seed;
  j["group"] = {{"tol", d.group_tol}, {"max_order", d.group_max_order}};
  j["cg"] = {{"tol", d.cg_tol}, {"degenerate_seed", d.cg_degenerate_seed}, {"retries", d.cg_retries}};
  j["mps"] = {{"tol", d.mps_tol}, {"injectivity_gap", d.injectivity_gap}, {"extract_tol", d.extract_tol}};
  j["mbqc"] = {{"zero_amplitude", d.zero_amplitude}, {"pauli_tol", d.pauli_tol}, {"sites", d.mbqc_sites},
               {"max_attempts", d.mbqc_max_attempts}, {"junk_degeneracy", d.junk_degeneracy}};
  j["itebd"] = {{"chi", d.itebd.chi},
                {"schedule", schedule},
                {"truncation", d.itebd.truncation},
                {"stage_tolerance", d.itebd.stage_tolerance},
                {"drift_tolerance", d.itebd.drift_tolerance},
                {"min_steps", d.itebd.min_steps},
                {"canonical_tol", d.canonical_tol},
                {"degenerate_gap", d.degenerate_gap}};
  j["scan"] = {{"lambda", {d.scan.lambda_min, d.scan.lambda_max, d.scan.lambda_points}},
               {"mu", {d.scan.mu_min, d.scan.mu_max, d.scan.mu_points}},
               {"jobs", d.scan.jobs}};
  return detail::dump17(j, indent);
}

}  // namespace sptkit
