#include "magnomech/response_closed.hpp"

#include <cmath>

#include "magnomech/errors.hpp"

namespace magnomech {

namespace {

constexpr cd kI{0.0, 1.0};

// The three products a complex R_jj contributes to the elimination.
struct CouplingSquares {
  cd sq;       // R_jj^2, n_- row
  cd conj_sq;  // conj(R_jj)^2, n_+ row
  double abs_sq;  // |R_jj|^2, magnon self-terms
};

CouplingSquares squares(cd half) {
  return {half * half, std::conj(half) * std::conj(half), std::norm(half)};
}

}  // namespace

LadderInputs ladder_inputs(const SystemConfig& config, const SteadyState& steady) {
  LadderInputs in;
  in.kappa_c = config.kappa_c;
  in.cavity_detuning = detunings(config).cavity;
  const EffectiveCouplings couplings = effective_couplings(config, steady);
  for (std::size_t j = 0; j < 2; ++j) {
    const auto& s = config.spheres[j];
    in.kappa_n[j] = s.kappa_n;
    in.shifted_detuning[j] = steady.shifted_detuning[j];
    in.omega_d[j] = s.omega_d;
    in.gamma_d[j] = s.gamma_d;
    in.r[j] = s.r;
    in.half_coupling[j] = couplings.half[j];
  }
  in.lambda = config.opa.lambda;
  in.theta = config.opa.theta;
  in.eps_p = config.drive.eps_p;
  return in;
}

CoefficientLadder build_ladder(const LadderInputs& in, double delta) {
  CoefficientLadder l;
  const double r1 = in.r[0];
  const double r2 = in.r[1];
  const CouplingSquares s1 = squares(in.half_coupling[0]);
  const CouplingSquares s2 = squares(in.half_coupling[1]);
  const cd pump = 2.0 * in.lambda * std::polar(1.0, -in.theta);  // 2 lambda e^{-i theta}

  l.alpha = cd(in.kappa_c, in.cavity_detuning - delta);
  l.alpha1 = cd(in.kappa_c, -(in.cavity_detuning + delta));
  l.alpha2 = cd(in.kappa_n[0], in.shifted_detuning[0] - delta);
  l.alpha3 = cd(in.kappa_n[0], -(in.shifted_detuning[0] + delta));
  l.alpha4 = cd(in.kappa_n[1], in.shifted_detuning[1] - delta);
  l.alpha5 = cd(in.kappa_n[1], -(in.shifted_detuning[1] + delta));
  l.alpha6 = in.omega_d[0] - delta / in.omega_d[0] * cd(delta, in.gamma_d[0]);
  l.alpha8 = in.omega_d[1] - delta / in.omega_d[1] * cd(delta, in.gamma_d[1]);

  const cd a1 = l.alpha1, a2 = l.alpha2, a3 = l.alpha3, a4 = l.alpha4, a5 = l.alpha5;
  const cd a6 = l.alpha6, a8 = l.alpha8;

  // Sphere 2 first, then sphere 1: n_1- = sigma / eta c_-.
  l.A = 1.0 + s2.abs_sq / (kI * a4 * a8);
  l.B = 1.0 - s2.abs_sq / (kI * a5 * a8 * l.A);
  l.C = r2 * s2.conj_sq / (a4 * a5 * a8 * l.A);
  l.D = 1.0 + r2 * r2 / (a1 * a5 * l.B);
  l.E = kI * r2 * l.C / (a1 * l.B) + pump / a1;
  l.F = 1.0 + r1 * r1 / (a1 * a3 * l.D) - s1.abs_sq / (kI * a3 * a6);
  l.G = kI * r1 * l.E / (a3 * l.D);
  l.K = s1.conj_sq / (kI * a3 * a6);
  l.eta = 1.0 + s1.abs_sq / (kI * a2 * a6) + l.K * s1.sq / (kI * a2 * a6 * l.F);
  l.sigma = l.G * s1.sq / (kI * a2 * a6 * l.F) - kI * r1 / a2;

  // Sphere 1 first, then sphere 2: n_2- = beta / chi c_-.
  l.L = 1.0 + s1.abs_sq / (kI * a2 * a6);
  l.M = 1.0 - s1.abs_sq / (kI * a3 * a6 * l.L);
  l.N = r1 * s1.conj_sq / (a2 * a3 * a6 * l.L);
  l.O = 1.0 + r1 * r1 / (a1 * a3 * l.M);
  l.P = kI * r1 * l.N / (a1 * l.M) + pump / a1;
  l.Q = 1.0 + r2 * r2 / (a1 * a5 * l.O) - s2.abs_sq / (kI * a5 * a8);
  l.R = kI * r2 * l.P / (a5 * l.O);
  l.U = s2.conj_sq / (kI * a5 * a8);
  l.chi = 1.0 + s2.abs_sq / (kI * a4 * a8) + l.U * s2.sq / (kI * a4 * a8 * l.Q);
  l.beta = l.R * s2.sq / (kI * a4 * a8 * l.Q) - kI * r2 / a4;

  // varsigma c^dagger_- = varrho c_-.
  l.varsigma = 1.0 + r1 * r1 / (a1 * a3 * l.M) + r2 * r2 / (a1 * a5 * l.B);
  l.varrho = kI * r1 * l.N / (a1 * l.M) + kI * r2 * l.C / (a1 * l.B) + pump / a1;
  return l;
}

CoefficientLadder build_ladder(const SystemConfig& config, const SteadyState& steady, double delta) {
  return build_ladder(ladder_inputs(config, steady), delta);
}

cd c_minus_closed(const LadderInputs& in, double delta) {
  const CoefficientLadder l = build_ladder(in, delta);
  const double r1 = in.r[0];
  const double r2 = in.r[1];
  const cd opa = in.lambda * std::polar(1.0, in.theta);
  const cd leading = l.alpha * l.eta * l.chi * l.varsigma;
  const cd den = leading + kI * r1 * l.sigma * l.chi * l.varsigma + kI * r2 * l.beta * l.eta * l.varsigma -
                 2.0 * l.varrho * l.eta * l.chi * opa;
  if (!std::isfinite(std::abs(den)) || std::abs(den) <= 1e-14 * std::abs(leading)) {
    throw NearSingularError("closed-form denominator vanishes at delta = " + std::to_string(delta));
  }
  return l.eta * l.chi * l.varsigma * in.eps_p / den;
}

cd c_minus_closed(const SystemConfig& config, const SteadyState& steady, double delta) {
  return c_minus_closed(ladder_inputs(config, steady), delta);
}

}  // namespace magnomech
