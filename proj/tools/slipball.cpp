// slipball: command-line front end for the slip-boundary counterexample.
//
//   slipball verify  [--config FILE] [--family LABEL] [--report FILE] ...
//   slipball eval    --r R --theta T --phi P [--family LABEL]
//   slipball sample  --field {u,omega,v,curl_v_boundary} [--volume] [--out FILE]
//   slipball sweep   [--epsilons E...] [--out FILE]
//
// Exit codes: 0 success, 1 usage/config error, 2 a check failed.
// Diagnostics go to stderr; stdout carries data and reports only.

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "slipball/config.hpp"
#include "slipball/errors.hpp"
#include "slipball/family.hpp"
#include "slipball/report_json.hpp"
#include "slipball/verify.hpp"

namespace {

using namespace slipball;
using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCheckFailed = 2;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Options shared by every subcommand. Values are applied on top of the
// config file only when given on the command line.
struct CommonFlags {
  std::string config_path;
  std::string family;
  std::size_t grid_nr{}, grid_ntheta{}, grid_nphi{};
  double margin_r{}, margin_theta{};
  std::size_t boundary_ntheta{}, boundary_nphi{};
  double step{};
  bool no_richardson{false};
  double viscosity{};
  std::vector<double> epsilons;
  std::string report;
  std::string out;

  CLI::Option* o_family{};
  CLI::Option* o_nr{};
  CLI::Option* o_ntheta{};
  CLI::Option* o_nphi{};
  CLI::Option* o_margin_r{};
  CLI::Option* o_margin_theta{};
  CLI::Option* o_bntheta{};
  CLI::Option* o_bnphi{};
  CLI::Option* o_step{};
  CLI::Option* o_viscosity{};
  CLI::Option* o_epsilons{};
  CLI::Option* o_report{};
  CLI::Option* o_out{};

  void attach(CLI::App* app, bool with_report, bool with_epsilons) {
    app->add_option("--config", config_path, "JSON run configuration");
    o_family = app->add_option("--family", family, "default | h1zero | perturbed:<eps>");
    o_nr = app->add_option("--grid-nr", grid_nr, "interior grid radial nodes");
    o_ntheta = app->add_option("--grid-ntheta", grid_ntheta, "interior grid polar nodes");
    o_nphi = app->add_option("--grid-nphi", grid_nphi, "interior grid azimuthal nodes");
    o_margin_r = app->add_option("--margin-r", margin_r, "interior exclusion near r = 0");
    o_margin_theta = app->add_option("--margin-theta", margin_theta, "interior exclusion near poles");
    o_bntheta = app->add_option("--boundary-ntheta", boundary_ntheta, "boundary grid polar nodes");
    o_bnphi = app->add_option("--boundary-nphi", boundary_nphi, "boundary grid azimuthal nodes");
    o_step = app->add_option("--step", step, "finite-difference base step");
    app->add_flag("--no-richardson", no_richardson, "disable Richardson extrapolation");
    o_viscosity = app->add_option("--viscosity", viscosity, "viscosity for the traction check");
    if (with_report) o_report = app->add_option("--report", report, "JSON report path");
    if (with_epsilons) o_epsilons = app->add_option("--epsilons", epsilons, "perturbation sizes");
    o_out = app->add_option("--out", out, "output path");
  }

  RunConfig resolve() const {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_run_config(config_path);
    auto given = [](const CLI::Option* o) { return o != nullptr && o->count() > 0; };
    if (given(o_family)) cfg.family = family;
    if (given(o_nr)) cfg.grid.n_r = grid_nr;
    if (given(o_ntheta)) cfg.grid.n_theta = grid_ntheta;
    if (given(o_nphi)) cfg.grid.n_phi = grid_nphi;
    if (given(o_margin_r)) cfg.grid.margin_r = margin_r;
    if (given(o_margin_theta)) cfg.grid.margin_theta = margin_theta;
    if (given(o_bntheta)) cfg.boundary.n_theta = boundary_ntheta;
    if (given(o_bnphi)) cfg.boundary.n_phi = boundary_nphi;
    if (given(o_step)) cfg.oracle.step = step;
    if (no_richardson) cfg.oracle.richardson = false;
    if (given(o_viscosity)) cfg.viscosity = viscosity;
    if (given(o_epsilons)) cfg.epsilons = epsilons;
    if (given(o_report)) cfg.report_path = report;
    if (given(o_out)) cfg.out_path = out;
    cfg.validate();
    return cfg;
  }
};

CounterexampleField load_family(const std::string& label) {
  try {
    return family_from_label(label);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ConfigError("write failed for '" + path + "'");
}

void print_table(std::ostream& os, const VerificationReport& report) {
  os << "family: " << report.family << "\n";
  const auto& adm = report.admissibility;
  os << "admissible: " << (adm.admissible() ? "yes" : "no")
     << "  |h(1)+h'(1)| = " << fmt17(adm.slip_condition_residual)
     << "  h(1) = " << fmt17(adm.h1) << "\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-32s %-14s %-14s %-9s %s\n", "check", "norm_sup",
                "tolerance", "direction", "result");
  os << line;
  for (const auto& c : report.checks) {
    std::snprintf(line, sizeof line, "%-32s %-14.6e %-14.6e %-9s %s", c.name.c_str(),
                  c.norm_sup, c.tolerance, to_string(c.direction), c.pass ? "PASS" : "FAIL");
    os << line;
    if (!c.note.empty()) os << "  (" << c.note << ")";
    os << "\n";
  }
  os << "overall: " << (report.overall_pass ? "PASS" : "FAIL") << "\n";
}

int cmd_verify(const CommonFlags& flags, bool timestamp) {
  const RunConfig cfg = flags.resolve();
  const CounterexampleField f = load_family(cfg.family);
  const VerificationReport report =
      run_full_verification(f, cfg.grid, cfg.boundary, cfg.oracle, cfg.viscosity);

  std::optional<std::string> stamp;
  if (timestamp) {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    stamp = buf;
  }
  const std::string json = serialize_report(report, stamp);
  if (cfg.report_path.empty()) {
    std::cout << json;
    print_table(std::cerr, report);
  } else {
    write_text(cfg.report_path, json);
    print_table(std::cout, report);
  }
  return report.overall_pass ? kExitOk : kExitCheckFailed;
}

Json vec_json(const SphVecd& v) { return Json::array({v.r(), v.theta(), v.phi()}); }

int cmd_eval(const CommonFlags& flags, double r, double theta, double phi) {
  const RunConfig cfg = flags.resolve();
  if (!(r >= 0.0 && r <= 1.0)) throw ConfigError("point must lie in the closed unit ball");
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw ConfigError("theta must lie in [0, pi]");
  }
  const CounterexampleField f = load_family(cfg.family);
  const SphPointd p(r, theta, phi);

  Json out{{"family", f.label()},
           {"point", {{"r", p.r}, {"theta", p.theta}, {"phi", p.phi}}},
           {"u", vec_json(u_field(f, p))},
           {"omega", vec_json(omega_field(f, p))},
           {"v", vec_json(v_field(f, p))}};
  if (std::abs(r - 1.0) <= kBoundaryRadiusTol) {
    const double ct = boundary_curl_v_theta(f, p.theta, p.phi);
    const double cp = boundary_curl_v_phi(f, p.theta, p.phi);
    out["boundary"] = {{"curl_v_theta", ct},
                       {"curl_v_phi", cp},
                       {"curl_v_cross_n", Json::array({cp, -ct})}};
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_sample(const CommonFlags& flags, const std::string& field, bool volume,
               std::size_t n_r, std::size_t n_theta, std::size_t n_phi) {
  const RunConfig cfg = flags.resolve();
  if (field == "curl_v_boundary" && volume) {
    throw ConfigError("curl_v_boundary is defined on the surface only");
  }
  const CounterexampleField f = load_family(cfg.family);

  GridSpec grid = volume ? cfg.grid : GridSpec::boundary(n_theta, n_phi);
  if (volume) {
    grid.n_r = n_r;
    grid.n_theta = n_theta;
    grid.n_phi = n_phi;
  }
  try {
    grid.validate(cfg.oracle);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  std::ostringstream csv;
  if (field == "curl_v_boundary") {
    csv << "r,theta,phi,curl_v_theta,curl_v_phi\n";
  } else {
    csv << "r,theta,phi,c_r,c_theta,c_phi\n";
  }
  const std::size_t rows_r = volume ? grid.n_r : 1;
  for (std::size_t i = 0; i < rows_r; ++i) {
    for (std::size_t j = 0; j < grid.n_theta; ++j) {
      for (std::size_t k = 0; k < grid.n_phi; ++k) {
        const SphPointd p(grid.r_at(i), grid.theta_at(j), grid.phi_at(k));
        csv << fmt17(p.r) << ',' << fmt17(p.theta) << ',' << fmt17(p.phi);
        if (field == "curl_v_boundary") {
          csv << ',' << fmt17(boundary_curl_v_theta(f, p.theta, p.phi)) << ','
              << fmt17(boundary_curl_v_phi(f, p.theta, p.phi)) << '\n';
          continue;
        }
        const SphVecd c = field == "u" ? u_field(f, p)
                          : field == "omega" ? omega_field(f, p)
                                             : v_field(f, p);
        csv << ',' << fmt17(c.r()) << ',' << fmt17(c.theta()) << ',' << fmt17(c.phi())
            << '\n';
      }
    }
  }
  if (cfg.out_path.empty()) {
    std::cout << csv.str();
  } else {
    write_text(cfg.out_path, csv.str());
  }
  return kExitOk;
}

int cmd_sweep(const CommonFlags& flags) {
  const RunConfig cfg = flags.resolve();
  const CounterexampleField f = load_family(cfg.family);
  SweepResult sweep;
  try {
    sweep = scaling_sweep(f, cfg.epsilons, cfg.boundary);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  std::ostringstream csv;
  csv << "epsilon,residual,in_fit\n";
  for (const auto& row : sweep.rows) {
    csv << fmt17(row.epsilon) << ',' << fmt17(row.residual) << ','
        << (row.in_fit ? 1 : 0) << '\n';
  }
  csv << "slope," << fmt17(sweep.slope) << ",\n";
  std::cout << csv.str();
  if (!cfg.out_path.empty()) write_text(cfg.out_path, csv.str());

  const bool ok = sweep.slope >= kSweepSlopeLo && sweep.slope <= kSweepSlopeHi;
  if (!ok) std::cerr << "slope " << fmt17(sweep.slope) << " outside [0.95, 1.05]\n";
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slip-boundary counterexample verification on the unit ball"};
  app.require_subcommand(1);

  CommonFlags verify_flags, eval_flags, sample_flags, sweep_flags;

  auto* verify = app.add_subcommand("verify", "run the full verification and write a report");
  verify_flags.attach(verify, true, false);
  bool timestamp = false;
  verify->add_flag("--timestamp", timestamp, "add a generation timestamp to the report");

  auto* eval = app.add_subcommand("eval", "evaluate u, omega, v at one point");
  eval_flags.attach(eval, false, false);
  double r = 0, theta = 0, phi = 0;
  eval->add_option("--r", r, "radius")->required();
  eval->add_option("--theta", theta, "colatitude")->required();
  eval->add_option("--phi", phi, "longitude")->required();

  auto* sample = app.add_subcommand("sample", "write field samples on a grid as CSV");
  sample_flags.attach(sample, false, false);
  std::string field;
  bool volume = false;
  bool surface = false;
  std::size_t s_nr = 16, s_ntheta = 64, s_nphi = 128;
  sample->add_option("--field", field, "u | omega | v | curl_v_boundary")
      ->required()
      ->check(CLI::IsMember({"u", "omega", "v", "curl_v_boundary"}));
  auto* vol_flag = sample->add_flag("--volume", volume, "interior grid");
  sample->add_flag("--surface", surface, "boundary sphere r = 1 (default)")->excludes(vol_flag);
  sample->add_option("--n-r", s_nr, "radial nodes (volume)");
  sample->add_option("--n-theta", s_ntheta, "polar nodes");
  sample->add_option("--n-phi", s_nphi, "azimuthal nodes");

  auto* sweep = app.add_subcommand("sweep", "slip-condition sharpness sweep");
  sweep_flags.attach(sweep, false, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(verify_flags, timestamp);
    if (*eval) return cmd_eval(eval_flags, r, theta, phi);
    if (*sample) return cmd_sample(sample_flags, field, volume, s_nr, s_ntheta, s_nphi);
    if (*sweep) return cmd_sweep(sweep_flags);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DegenerateFit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
