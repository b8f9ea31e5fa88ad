// Acceptance suite: one line per criterion, exit status 0 iff all pass.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "slipball/family.hpp"
#include "slipball/oracle.hpp"
#include "slipball/parallel.hpp"
#include "slipball/report_json.hpp"
#include "slipball/verify.hpp"

using namespace slipball;

namespace {

constexpr double kPi = std::numbers::pi;

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] %d %-28s %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* format, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Runs a guarded criterion; an exception is a failure with its message.
void criterion(int id, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const CounterexampleField& default_field() {
  static const CounterexampleField f = family_from_label("default");
  return f;
}

}  // namespace

int main() {
  const auto& f = default_field();

  criterion(1, "divergence_free", [&] {
    set_thread_cap(1);
    const auto t0 = std::chrono::steady_clock::now();
    const CheckResult c = check_divergence_free(f, GridSpec{});
    const double elapsed = seconds_since(t0);
    set_thread_cap(0);
    const double analytic = *c.detail("analytic_sup");
    const double oracle = *c.detail("oracle_sup");
    report(1, "divergence_free", analytic <= 1e-10 && oracle <= 1e-6 && elapsed <= 10.0,
           fmt("analytic sup %.3e <= 1e-10, oracle sup %.3e <= 1e-6, %.2f s <= 10 s "
               "(1 thread, 32x48x96)",
               analytic, oracle, elapsed));
  });

  criterion(2, "slip_conditions", [&] {
    const auto [normal, tangential] = check_slip_conditions(f, GridSpec::boundary(128, 256));
    report(2, "slip_conditions", normal.norm_sup <= 1e-12 && tangential.norm_sup <= 1e-12,
           fmt("sup|u_r| %.3e <= 1e-12, sup|omega x n| %.3e <= 1e-12 (128x256)",
               normal.norm_sup, tangential.norm_sup));
  });

  criterion(3, "persistency_failure", [&] {
    const double closed = boundary_curl_v_theta(f, kPi / 2, kPi / 4);
    const ScalarField v_phi = [&f](const SphPointd& q) { return v_field(f, q).phi(); };
    const double oracle = -fd_boundary_radial_derivative(v_phi, kPi / 2, kPi / 4);
    const PersistencyChecks p = check_persistency_failure(f, GridSpec::boundary(128, 256));
    const bool pass = std::abs(closed + 1.0) <= 1e-6 && std::abs(oracle - closed) <= 1e-4 &&
                      p.theta.norm_sup >= 0.9;
    report(3, "persistency_failure", pass,
           fmt("[curl v]_theta(pi/2,pi/4) = %.15f, oracle diff %.3e <= 1e-4, sup %.4f >= 0.9",
               closed, std::abs(oracle - closed), p.theta.norm_sup));
  });

  criterion(4, "phi_component_gate", [&] {
    const PersistencyChecks p = check_persistency_failure(f, GridSpec::boundary(128, 256));
    const double samples = p.phi_gate.detail("samples").value_or(0.0);
    const bool validated = p.phi.detail("closed_form_validated").value_or(-1.0) == 1.0;
    const bool flagged = p.phi.note.find("rejected") != std::string::npos;
    // a failed gate is acceptable only when the report falls back and flags it
    const bool consistent = p.phi_gate.pass ? (validated && !flagged) : (!validated && flagged);
    const bool pass = p.phi_gate.pass && samples == 50.0 && consistent;
    report(4, "phi_component_gate", pass,
           fmt("max rel discrepancy %.3e <= 1e-5 over %.0f points with |value| >= 1e-2, "
               "closed form validated = %.0f",
               p.phi_gate.norm_sup, samples, validated ? 1.0 : 0.0));
  });

  criterion(5, "sharpness_sweep", [&] {
    const SweepResult s = scaling_sweep(f, {1e-1, 1e-2, 1e-3, 1e-4}, GridSpec::boundary(128, 256));
    report(5, "sharpness_sweep", std::abs(s.slope - 1.0) <= 0.05,
           fmt("log-log slope %.6f in [0.95, 1.05]", s.slope));
  });

  criterion(6, "oracle_equivalence", [&] {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> ur(0.05, 0.99), ut(0.05, kPi - 0.05),
        up(0.0, 2 * kPi), uc(-1.0, 1.0);
    const VectorField u = [&f](const SphPointd& q) { return u_field(f, q); };
    double curl_diff = 0.0, grad_curl = 0.0, const_curl = 0.0;
    for (int n = 0; n < 50; ++n) {
      const SphPointd p(ur(rng), ut(rng), up(rng));
      curl_diff = std::max(curl_diff, (curl(p, u_jets(f, p)) - cartesian_curl(u, p)).norm());

      // gradient of a random Cartesian quadratic, and a random constant field
      const Vec3d b(uc(rng), uc(rng), uc(rng));
      Eigen::Matrix3d m;
      for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = uc(rng);
      const Eigen::Matrix3d a = m + m.transpose();
      const VectorField grad = [&](const SphPointd& q) {
        return SphVecd(vec_from_cartesian(q, b + a * to_cartesian_point(q)));
      };
      const VectorField constant = [&](const SphPointd& q) {
        return SphVecd(vec_from_cartesian(q, b));
      };
      grad_curl = std::max({grad_curl, cartesian_curl(grad, p).norm(),
                            fd_curl_spherical(grad, p).norm()});
      const_curl = std::max({const_curl, cartesian_curl(constant, p).norm(),
                             fd_curl_spherical(constant, p).norm()});
    }
    report(6, "oracle_equivalence", curl_diff <= 1e-4 && grad_curl <= 1e-8 && const_curl <= 1e-8,
           fmt("max |curl u - oracle| %.3e <= 1e-4 (50 points), |curl grad| %.3e, "
               "|curl const| %.3e <= 1e-8",
               curl_diff, grad_curl, const_curl));
  });

  criterion(7, "navier_slip_discrepancy", [&] {
    const GridSpec b = GridSpec::boundary(128, 256);
    const CheckResult curved = check_navier_traction(f, b, 1.0, false);
    const CheckResult flat = check_navier_traction(f, b, 1.0, true);
    report(7, "navier_slip_discrepancy", curved.norm_sup >= 0.9 && flat.norm_sup <= 1e-12,
           fmt("nu = 1: curved sup %.4f >= 0.9, flat sup %.3e <= 1e-12", curved.norm_sup,
               flat.norm_sup));
  });

  criterion(8, "determinism", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string a = serialize_report(run_full_verification(f, GridSpec{}, GridSpec::boundary()));
    const double elapsed = seconds_since(t0);
    const std::string b = serialize_report(run_full_verification(f, GridSpec{}, GridSpec::boundary()));

    const auto dir = std::filesystem::temp_directory_path();
    const auto p1 = dir / "slipball_acceptance_1.json";
    const auto p2 = dir / "slipball_acceptance_2.json";
    int codes[2] = {-1, -1};
    const std::filesystem::path paths[2] = {p1, p2};
    for (int i = 0; i < 2; ++i) {
      const std::string cmd = std::string(SLIPBALL_CLI_PATH) + " verify --report " +
                              paths[i].string() + " > /dev/null 2>&1";
      const int status = std::system(cmd.c_str());
      codes[i] = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }
    const std::string c1 = read_file(p1), c2 = read_file(p2);
    std::filesystem::remove(p1);
    std::filesystem::remove(p2);
    const bool pass = a == b && !c1.empty() && c1 == c2 && c1 == a && codes[0] == 0 &&
                      codes[1] == 0 && elapsed <= 60.0;
    report(8, "determinism", pass,
           fmt("library and CLI reports byte-identical = %.0f, CLI exit codes %.0f/%.0f, " , pass ? 1.0 : 0.0,
               codes[0], codes[1]) +
               fmt("full verification %.2f s <= 60 s", elapsed));
  });

  std::printf("%s: %d failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
