#include "slipball/report_json.hpp"

namespace slipball {

namespace {

using Json = nlohmann::ordered_json;

Json point_json(const std::optional<BoundaryPoint>& p) {
  if (!p) return nullptr;
  return Json{{"theta", p->theta}, {"phi", p->phi}};
}

}  // namespace

Json to_json(const AdmissibilityReport& report) {
  return Json{{"slip_condition_residual", report.slip_condition_residual},
              {"h1", report.h1},
              {"h1_nonzero", report.h1_nonzero},
              {"pole_margin_ok", report.pole_margin_ok},
              {"support_ok", report.support_ok},
              {"periodicity_ok", report.periodicity_ok},
              {"admissible", report.admissible()},
              {"witness_a1", point_json(report.witness_a1)},
              {"witness_a2", point_json(report.witness_a2)}};
}

Json to_json(const CheckResult& check) {
  Json details = Json::object();
  for (const auto& [key, value] : check.details) details[key] = value;
  return Json{{"name", check.name},
              {"norm_sup", check.norm_sup},
              {"norm_l2", check.norm_l2},
              {"tolerance", check.tolerance},
              {"direction", to_string(check.direction)},
              {"pass", check.pass},
              {"witness",
               {{"r", check.witness.r},
                {"theta", check.witness.theta},
                {"phi", check.witness.phi}}},
              {"details", details},
              {"note", check.note}};
}

Json to_json(const VerificationReport& report,
             const std::optional<std::string>& timestamp) {
  Json checks = Json::array();
  for (const auto& c : report.checks) checks.push_back(to_json(c));

  Json out{{"family", report.family},
           {"overall_pass", report.overall_pass},
           {"admissibility", to_json(report.admissibility)},
           {"checks", checks},
           {"grid",
            {{"n_r", report.grid.n_r},
             {"n_theta", report.grid.n_theta},
             {"n_phi", report.grid.n_phi},
             {"margin_r", report.grid.margin_r},
             {"margin_theta", report.grid.margin_theta}}},
           {"boundary",
            {{"n_theta", report.boundary.n_theta}, {"n_phi", report.boundary.n_phi}}},
           {"oracle",
            {{"step", report.oracle.step},
             {"richardson", report.oracle.richardson},
             {"scheme", "central-2nd-order"}}},
           {"conventions",
            {{"components", "local orthonormal basis (e_r, e_theta, e_phi)"},
             {"persistency_failure_theta", "[curl(u x omega)]_theta on r = 1"},
             {"persistency_failure_phi", "[curl(u x omega)]_phi on r = 1"},
             {"persistency_residual",
              "curl(v) x n on r = 1 has (e_theta, e_phi) components "
              "([curl v]_phi, -[curl v]_theta)"},
             {"l2_norm",
              "boundary: sqrt(sum v^2 sin t dt dp); interior: sqrt(sum v^2 r^2 "
              "sin t dr dt dp); sampled agreement checks: RMS over samples"}}}};
  if (timestamp) out["timestamp"] = *timestamp;
  return out;
}

std::string serialize_report(const VerificationReport& report,
                             const std::optional<std::string>& timestamp) {
  return to_json(report, timestamp).dump(2) + "\n";
}

}  // namespace slipball
