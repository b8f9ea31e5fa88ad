#pragma once

// JSON serialization of verification reports.
//
// Schema (keys in this order):
//   { family, overall_pass,
//     admissibility{slip_condition_residual, h1, h1_nonzero, pole_margin_ok,
//                   support_ok, periodicity_ok, admissible,
//                   witness_a1{theta,phi}|null, witness_a2{theta,phi}|null},
//     checks:[{name, norm_sup, norm_l2, tolerance, direction, pass,
//              witness{r,theta,phi}, details{...}, note}],
//     grid{n_r, n_theta, n_phi, margin_r, margin_theta},
//     boundary{n_theta, n_phi},
//     oracle{step, richardson, scheme},
//     conventions{...} }
//
// Doubles are written with round-trip precision, so parsing reproduces the
// stored values exactly. No time-dependent content is emitted unless a
// timestamp is passed explicitly.

#include <optional>
#include <string>

#include "json.hpp"
#include "slipball/verify.hpp"

namespace slipball {

nlohmann::ordered_json to_json(const AdmissibilityReport& report);
nlohmann::ordered_json to_json(const CheckResult& check);
nlohmann::ordered_json to_json(const VerificationReport& report,
                               const std::optional<std::string>& timestamp = std::nullopt);

std::string serialize_report(const VerificationReport& report,
                             const std::optional<std::string>& timestamp = std::nullopt);

}  // namespace slipball
