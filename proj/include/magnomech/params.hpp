#pragma once

// Physical parameter model for the two-sphere cavity magnomechanical system
// with an intracavity degenerate parametric amplifier.
//
// All rates and frequencies are stored as angular quantities (rad/s). The
// JSON loader (config_io.hpp) is the single place where ordinary
// frequencies are converted.

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "magnomech/units.hpp"

namespace magnomech {

struct PhysicalConstants {
  double gamma_r = to_angular(28e9);  // gyromagnetic ratio, rad s^-1 T^-1
  double nu = 4.22e27;                // YIG spin density, m^-3
  double s = 2.5;                     // Fe3+ ground-state spin
  double hbar = 1.054571817e-34;      // J s
};

/// Bare single-magnon magnomechanical rate R0 (microscopic parameterization).
struct BareCoupling {
  double rate = 0.0;
};

/// Drive-enhanced magnomechanical rate R given directly (figure captions).
struct EffectiveCoupling {
  double rate = 0.0;
};

using CouplingSpec = std::variant<BareCoupling, EffectiveCoupling>;

enum class CouplingMode { microscopic, effective };

struct SphereParams {
  double omega_n = 0.0;  // magnon frequency
  double kappa_n = 0.0;  // magnon dissipation
  double r = 0.0;        // magnon-cavity coupling
  double omega_d = 0.0;  // phonon frequency
  double gamma_d = 0.0;  // phonon damping
  CouplingSpec coupling = EffectiveCoupling{};
  std::optional<double> diameter;  // m

  bool has_bare_coupling() const { return std::holds_alternative<BareCoupling>(coupling); }
};

struct DriveParams {
  double B = 0.0;        // drive field amplitude, T
  double omega_0 = 0.0;  // drive frequency
  int target_sphere = 1;
  double eps_p = 1.0;  // probe amplitude; first-order observables do not depend on it
};

struct OpaParams {
  double lambda = 0.0;  // gain, rad/s
  double theta = 0.0;   // pump phase, rad
};

struct DetuningOverrides {
  std::optional<double> cavity;
  std::optional<double> magnon1;
  std::optional<double> magnon2;
};

struct SystemConfig {
  PhysicalConstants constants;
  double omega_c = 0.0;
  double kappa_c = 0.0;
  std::array<SphereParams, 2> spheres;
  DriveParams drive;
  OpaParams opa;
  DetuningOverrides detuning_overrides;

  /// Microscopic iff both spheres carry a bare coupling. Throws
  /// InvalidParameter for mixed parameterizations.
  CouplingMode coupling_mode() const;
  const SphereParams& sphere(int one_based) const { return spheres.at(one_based - 1); }
};

/// Throws InvalidParameter on the first violated structural invariant
/// (non-positive rates, bad sphere index, negative gain, mixed modes ...).
void check_config(const SystemConfig& config);

/// Number of spins in a sphere of the given diameter.
double spin_count(double diameter, double nu);

/// Drive Rabi frequency, (sqrt(5)/4) * gamma_r * sqrt(N) * B.
double rabi_frequency(double B, double spin_number, double gamma_r);

/// Probe amplitude sqrt(2 kappa_c P / (hbar omega_p)). P = 0 gives 0.
double probe_amplitude(double power, double omega_p, double kappa_c,
                       double hbar = PhysicalConstants{}.hbar);

/// Rabi frequency applied to the driven sphere of `config` (0 if undriven).
double drive_rabi_frequency(const SystemConfig& config);

struct Detunings {
  double cavity = 0.0;
  std::array<double, 2> magnon{};
  double probe = 0.0;  // delta = omega_p - omega_0
};

/// Detunings relative to the drive frequency; overrides win when present.
/// Without a probe frequency the probe detuning is 0.
Detunings detunings(const SystemConfig& config, std::optional<double> omega_p = std::nullopt);

/// Kerr coefficient (rad/s) scaled from 2*pi*1e-10 at 1 mm by inverse volume.
double kerr_coefficient(double diameter);

struct SteadyState;

enum class CheckStatus { pass, warn, skipped };

std::string to_string(CheckStatus status);

struct ValidityCheck {
  std::string name;
  double value = 0.0;  // the small quantity
  double bound = 0.0;  // what it must be dominated by
  CheckStatus status = CheckStatus::skipped;
  std::string note;
};

struct ValidityReport {
  double dominance_ratio = 10.0;
  double rabi_frequency = 0.0;
  std::vector<ValidityCheck> kerr;         // one per sphere
  std::vector<ValidityCheck> occupation;   // one per sphere
  ValidityCheck hierarchy;

  bool all_pass() const;
};

/// Advisory physical-regime checks. Never throws for a solved state and
/// never modifies its inputs.
ValidityReport validate_config(const SystemConfig& config, const SteadyState& steady,
                               double dominance_ratio = 10.0);

}  // namespace magnomech
