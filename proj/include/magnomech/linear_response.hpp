#pragma once

// Direct linear-algebra route to the first-order probe response: the
// linearized mean-value Langevin equations as a 10x10 complex drift matrix,
// solved at each probe detuning by dense elimination.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "magnomech/dense_solve.hpp"
#include "magnomech/params.hpp"
#include "magnomech/steady_state.hpp"

namespace magnomech {

/// Basis order of the fluctuation vector.
enum Mode : std::size_t {
  kCavity = 0,
  kCavityDag = 1,
  kMagnon1 = 2,
  kMagnon1Dag = 3,
  kMagnon2 = 4,
  kMagnon2Dag = 5,
  kPosition1 = 6,
  kMomentum1 = 7,
  kPosition2 = 8,
  kMomentum2 = 9,
};

inline constexpr std::size_t kModeCount = 10;

/// Index of the conjugate partner of a mode (x, y map to themselves).
constexpr std::size_t conjugate_partner(std::size_t mode) {
  return mode < kPosition1 ? (mode ^ 1U) : mode;
}

struct DriftMatrix {
  ComplexMatrix a{kModeCount};

  /// True when the daggered rows are exact conjugates of their partners
  /// (with conjugate-pair columns swapped) and x/y rows are self-conjugate.
  bool has_conjugate_pair_symmetry() const;
};

DriftMatrix build_drift_matrix(const SystemConfig& config, const SteadyState& steady);

struct FluctuationSolution {
  double delta = 0.0;
  std::array<cd, kModeCount> u_minus{};
  cd c_minus() const { return u_minus[kCavity]; }
};

/// Solves (-i delta I - A) u = b, b = eps_p in the cavity slot.
FluctuationSolution solve_fluctuations(const DriftMatrix& drift, double delta, double eps_p);
FluctuationSolution solve_fluctuations(const SystemConfig& config, const SteadyState& steady,
                                       double delta);

/// General driven response (-i delta I - A) u = source.
std::array<cd, kModeCount> solve_driven(const DriftMatrix& drift, double delta,
                                        std::span<const cd> source);

/// ||(-i delta I - A) u - b|| / ||b||.
double fluctuation_residual(const DriftMatrix& drift, double delta, std::span<const cd> u,
                            std::span<const cd> source);

struct StabilityReport {
  std::vector<cd> eigenvalues;
  double max_real_part = 0.0;
  bool stable = false;
};

StabilityReport stability_check(const DriftMatrix& drift);

}  // namespace magnomech
