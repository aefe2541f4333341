#include "magnomech/params.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "magnomech/errors.hpp"
#include "magnomech/steady_state.hpp"

namespace magnomech {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParameter(what);
}

double coupling_rate(const CouplingSpec& spec) {
  return std::visit([](const auto& c) { return c.rate; }, spec);
}

}  // namespace

CouplingMode SystemConfig::coupling_mode() const {
  const bool bare0 = spheres[0].has_bare_coupling();
  const bool bare1 = spheres[1].has_bare_coupling();
  if (bare0 != bare1) {
    throw InvalidParameter("spheres mix bare (R0) and effective (R_eff) couplings");
  }
  return bare0 ? CouplingMode::microscopic : CouplingMode::effective;
}

void check_config(const SystemConfig& config) {
  const auto& k = config.constants;
  require(k.gamma_r > 0 && k.nu > 0 && k.s > 0 && k.hbar > 0, "physical constants must be positive");
  require(config.kappa_c > 0, "kappa_c must be positive");
  require(config.omega_c >= 0, "omega_c must be non-negative");
  for (std::size_t j = 0; j < 2; ++j) {
    const auto& s = config.spheres[j];
    const std::string tag = "sphere " + std::to_string(j + 1) + ": ";
    require(s.kappa_n > 0, tag + "kappa_n must be positive");
    require(s.gamma_d > 0, tag + "gamma_d must be positive");
    require(s.omega_d > 0, tag + "omega_d must be positive");
    require(s.r >= 0, tag + "r must be non-negative");
    require(s.omega_n >= 0, tag + "omega_n must be non-negative");
    require(coupling_rate(s.coupling) >= 0, tag + "magnomechanical coupling must be non-negative");
    if (s.diameter) require(*s.diameter > 0, tag + "diameter must be positive");
  }
  require(config.drive.target_sphere == 1 || config.drive.target_sphere == 2,
          "drive.target_sphere must be 1 or 2");
  require(config.drive.B >= 0, "drive.B must be non-negative");
  require(config.drive.eps_p > 0, "drive.eps_p must be positive");
  require(config.opa.lambda >= 0, "opa.lambda must be non-negative");
  require(config.opa.theta >= 0 && config.opa.theta < kTwoPi, "opa.theta must lie in [0, 2 pi)");

  if (config.coupling_mode() == CouplingMode::microscopic && config.drive.B > 0) {
    require(config.sphere(config.drive.target_sphere).diameter.has_value(),
            "driven sphere needs a diameter in microscopic mode");
  }
}

double spin_count(double diameter, double nu) {
  require(diameter > 0, "diameter must be positive");
  require(nu > 0, "spin density must be positive");
  return nu * std::numbers::pi / 6.0 * diameter * diameter * diameter;
}

double rabi_frequency(double B, double spin_number, double gamma_r) {
  require(spin_number > 0, "spin count must be positive");
  require(B >= 0, "drive field must be non-negative");
  return std::sqrt(5.0) / 4.0 * gamma_r * std::sqrt(spin_number) * B;
}

double probe_amplitude(double power, double omega_p, double kappa_c, double hbar) {
  require(power >= 0, "probe power must be non-negative");
  require(omega_p > 0 && kappa_c > 0 && hbar > 0, "probe frequency, kappa_c and hbar must be positive");
  return std::sqrt(2.0 * kappa_c * power / (hbar * omega_p));
}

double drive_rabi_frequency(const SystemConfig& config) {
  if (config.drive.B == 0.0) return 0.0;
  const auto& sphere = config.sphere(config.drive.target_sphere);
  require(sphere.diameter.has_value(), "driven sphere has no diameter");
  const double n = spin_count(*sphere.diameter, config.constants.nu);
  return rabi_frequency(config.drive.B, n, config.constants.gamma_r);
}

Detunings detunings(const SystemConfig& config, std::optional<double> omega_p) {
  const double w0 = config.drive.omega_0;
  const auto& o = config.detuning_overrides;
  Detunings d;
  d.cavity = o.cavity.value_or(config.omega_c - w0);
  d.magnon[0] = o.magnon1.value_or(config.spheres[0].omega_n - w0);
  d.magnon[1] = o.magnon2.value_or(config.spheres[1].omega_n - w0);
  d.probe = omega_p ? *omega_p - w0 : 0.0;
  return d;
}

double kerr_coefficient(double diameter) {
  require(diameter > 0, "diameter must be positive");
  const double ratio = 1e-3 / diameter;
  return to_angular(1e-10) * ratio * ratio * ratio;
}

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::warn: return "warn";
    case CheckStatus::skipped: return "skipped";
  }
  return "unknown";
}

bool ValidityReport::all_pass() const {
  auto ok = [](const ValidityCheck& c) { return c.status != CheckStatus::warn; };
  return std::all_of(kerr.begin(), kerr.end(), ok) &&
         std::all_of(occupation.begin(), occupation.end(), ok) && ok(hierarchy);
}

namespace {

// value must be dominated by bound: bound >= ratio * value. A vanishing
// value is always dominated.
CheckStatus dominated(double value, double bound, double ratio) {
  if (value == 0.0) return CheckStatus::pass;
  return bound >= ratio * value ? CheckStatus::pass : CheckStatus::warn;
}

}  // namespace

ValidityReport validate_config(const SystemConfig& config, const SteadyState& steady,
                               double dominance_ratio) {
  ValidityReport report;
  report.dominance_ratio = dominance_ratio;
  const bool driven = config.drive.B > 0 && config.sphere(config.drive.target_sphere).diameter;
  report.rabi_frequency = driven ? drive_rabi_frequency(config) : 0.0;

  for (std::size_t j = 0; j < 2; ++j) {
    const auto& sphere = config.spheres[j];
    const double amplitude = std::abs(steady.magnon[j]);
    const std::string idx = std::to_string(j + 1);

    ValidityCheck kerr{"kerr_" + idx, 0.0, report.rabi_frequency, CheckStatus::skipped, ""};
    ValidityCheck occ{"occupation_" + idx, amplitude * amplitude, 0.0, CheckStatus::skipped, ""};
    if (sphere.diameter) {
      const double k = kerr_coefficient(*sphere.diameter);
      kerr.value = k * amplitude * amplitude * amplitude;
      kerr.status = dominated(kerr.value, kerr.bound, dominance_ratio);
      kerr.note = "K|n_s|^3 vs Omega, both rad/s";

      const double spins = spin_count(*sphere.diameter, config.constants.nu);
      occ.bound = 2.0 * spins * config.constants.s;
      occ.status = dominated(occ.value, occ.bound, dominance_ratio);
      occ.note = "|n_s|^2 vs 2 N s";
    } else {
      kerr.note = occ.note = "no diameter configured";
    }
    report.kerr.push_back(kerr);
    report.occupation.push_back(occ);
  }

  const Detunings d = detunings(config);
  const double min_detuning = std::min({std::abs(steady.shifted_detuning[0]),
                                        std::abs(steady.shifted_detuning[1]), std::abs(d.cavity)});
  const double max_linewidth =
      std::max({config.kappa_c, config.spheres[0].kappa_n, config.spheres[1].kappa_n});
  report.hierarchy = {"hierarchy", max_linewidth, min_detuning,
                      dominated(max_linewidth, min_detuning, dominance_ratio),
                      "max(kappa) vs min(|Delta_bar_n1|, |Delta_bar_n2|, |Delta_c|)"};
  return report;
}

}  // namespace magnomech
