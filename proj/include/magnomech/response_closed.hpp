#pragma once

// Closed-form elimination ladder for the cavity response c_-.
//
// The ladder removes sphere 2 then sphere 1 from the c^dagger equation
// (A..G, K, eta, sigma give n_1- = sigma/eta c_-), and sphere 1 then sphere 2
// (L..U, chi, beta give n_2- = beta/chi c_-). varsigma c^dagger_- = varrho c_-
// closes the system. Numbering follows the usual presentation, which has no
// alpha_7.
//
// Two symbols in the commonly printed ladder are undefined; they resolve as
//   C = r2 R22^2 / (alpha4 alpha5 alpha8 A)   (printed with "G22")
//   R = i r2 P / (alpha5 O)                   (printed with "F")
// and both resolutions are confirmed by agreement with the direct solve.
//
// Every R_jj^2 is split by origin so that complex couplings stay exact:
// self-terms of a magnon use |R_jj|^2, the n_- row uses R_jj^2 and the
// n_+ row uses conj(R_jj)^2. For real R_j these coincide.

#include "magnomech/params.hpp"
#include "magnomech/steady_state.hpp"

namespace magnomech {

struct CoefficientLadder {
  // denominators
  cd alpha, alpha1, alpha2, alpha3, alpha4, alpha5, alpha6, alpha8;
  // script coefficients
  cd A, B, C, D, E, F, G, K, L, M, N, O, P, Q, R, U;
  cd eta, sigma, chi, beta, varsigma, varrho;
};

/// Inputs of the ladder that do not depend on the probe detuning.
struct LadderInputs {
  double kappa_c = 0.0;
  double cavity_detuning = 0.0;
  std::array<double, 2> kappa_n{};
  std::array<double, 2> shifted_detuning{};
  std::array<double, 2> omega_d{};
  std::array<double, 2> gamma_d{};
  std::array<double, 2> r{};
  std::array<cd, 2> half_coupling{};  // R_11, R_22
  double lambda = 0.0;
  double theta = 0.0;
  double eps_p = 1.0;
};

LadderInputs ladder_inputs(const SystemConfig& config, const SteadyState& steady);

CoefficientLadder build_ladder(const LadderInputs& in, double delta);
CoefficientLadder build_ladder(const SystemConfig& config, const SteadyState& steady, double delta);

/// c_- = eta chi varsigma eps_p / (alpha eta chi varsigma + i r1 sigma chi varsigma
///                                  + i r2 beta eta varsigma - 2 varrho eta chi lambda e^{i theta})
cd c_minus_closed(const LadderInputs& in, double delta);
cd c_minus_closed(const SystemConfig& config, const SteadyState& steady, double delta);

}  // namespace magnomech
