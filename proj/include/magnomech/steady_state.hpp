#pragma once

#include <array>

#include "magnomech/params.hpp"

namespace magnomech {

/// Reference bare coupling used to synthesize magnon amplitudes when the
/// config gives effective couplings directly.
inline constexpr double kReferenceBareCoupling = to_angular(0.2);

struct SteadyState {
  cd cavity{};                          // c_s
  std::array<cd, 2> magnon{};           // n_1s, n_2s
  std::array<double, 2> displacement{}; // x_1s, x_2s (dimensionless)
  std::array<double, 2> shifted_detuning{};
  std::array<double, 2> bare_coupling{};  // R0 actually used for each sphere
  double residual = 0.0;
  int iterations = 0;
  CouplingMode mode = CouplingMode::microscopic;

  /// R0_j * n_js, the only steady-state combination the linear response sees.
  cd magnomechanical_product(int j) const { return bare_coupling[j] * magnon[j]; }
};

struct SteadyStateOptions {
  double damping = 0.5;  // weight of the new iterate
  double tolerance = 1e-12;
  int max_iterations = 10000;
};

/// Solves the five coupled steady-state equations by damped fixed-point
/// iteration. In effective mode no iteration is done: n_js is chosen so that
/// i*sqrt(2)*R0_ref*n_js equals the configured R_j.
///
/// Throws ConvergenceError if neither the configured damping nor half of it
/// converges, and InvalidParameter for omega_d = 0 or an invalid config.
SteadyState solve_steady_state(const SystemConfig& config, const SteadyStateOptions& options = {});

/// One undamped application of the steady-state map to `state`.
SteadyState steady_state_map(const SystemConfig& config, const SteadyState& state);

/// Relative back-substitution residuals of the five steady-state equations
/// (c_s, n_1s, n_2s, x_1s, x_2s), each |lhs - rhs| / max(|lhs|, |rhs|).
std::array<double, 5> steady_state_residuals(const SystemConfig& config, const SteadyState& steady);

struct EffectiveCouplings {
  std::array<cd, 2> full{};  // R_j = i sqrt(2) R0_j n_js
  std::array<cd, 2> half{};  // R_jj = R_j / sqrt(2)
};

/// In effective mode the configured R_j are returned unchanged.
EffectiveCouplings effective_couplings(const SystemConfig& config, const SteadyState& steady);

}  // namespace magnomech
