#include "magnomech/steady_state.hpp"

#include <algorithm>
#include <cmath>

#include "magnomech/errors.hpp"

namespace magnomech {

namespace {

constexpr cd kI{0.0, 1.0};

double relative_gap(cd a, cd b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

// Solves (kappa_c + i Delta_c) c - w c* = s for c, w = 2 lambda e^{i theta},
// as a 2x2 real system in (Re c, Im c).
cd solve_cavity_equation(double kappa_c, double delta_c, cd w, cd s) {
  const double a11 = kappa_c - w.real();
  const double a12 = -delta_c - w.imag();
  const double a21 = delta_c - w.imag();
  const double a22 = kappa_c + w.real();
  const double det = a11 * a22 - a12 * a21;
  if (det == 0.0) throw NearSingularError("cavity steady-state equation is singular");
  return {(s.real() * a22 - a12 * s.imag()) / det, (a11 * s.imag() - a21 * s.real()) / det};
}

struct Drive {
  std::array<double, 2> rabi{};
};

Drive drive_terms(const SystemConfig& config) {
  Drive d;
  d.rabi[config.drive.target_sphere - 1] = drive_rabi_frequency(config);
  return d;
}

SteadyState apply_map(const SystemConfig& config, const Detunings& det, const Drive& drive,
                      const SteadyState& s) {
  SteadyState next = s;
  for (std::size_t j = 0; j < 2; ++j) {
    const auto& sp = config.spheres[j];
    const double shifted = det.magnon[j] + s.bare_coupling[j] * s.displacement[j];
    next.magnon[j] = (-kI * sp.r * s.cavity + drive.rabi[j]) / cd(sp.kappa_n, shifted);
  }
  const cd source = -kI * config.spheres[0].r * next.magnon[0] - kI * config.spheres[1].r * next.magnon[1];
  const cd gain = 2.0 * config.opa.lambda * std::polar(1.0, config.opa.theta);
  next.cavity = solve_cavity_equation(config.kappa_c, det.cavity, gain, source);
  for (std::size_t j = 0; j < 2; ++j) {
    next.displacement[j] = -s.bare_coupling[j] * std::norm(next.magnon[j]) / config.spheres[j].omega_d;
    next.shifted_detuning[j] = det.magnon[j] + s.bare_coupling[j] * next.displacement[j];
  }
  return next;
}

double change(const SteadyState& a, const SteadyState& b) {
  double r = relative_gap(a.cavity, b.cavity);
  for (std::size_t j = 0; j < 2; ++j) {
    r = std::max(r, relative_gap(a.magnon[j], b.magnon[j]));
    r = std::max(r, relative_gap(a.displacement[j], b.displacement[j]));
  }
  return r;
}

// Recomputes x_js and the shifted detunings from the final amplitudes so the
// defining identities hold exactly.
void finalize(const SystemConfig& config, const Detunings& det, SteadyState& s) {
  for (std::size_t j = 0; j < 2; ++j) {
    s.displacement[j] = -s.bare_coupling[j] * std::norm(s.magnon[j]) / config.spheres[j].omega_d;
    s.shifted_detuning[j] = det.magnon[j] + s.bare_coupling[j] * s.displacement[j];
  }
}

SteadyState effective_state(const SystemConfig& config, const Detunings& det) {
  SteadyState s;
  s.mode = CouplingMode::effective;
  for (std::size_t j = 0; j < 2; ++j) {
    const double rate = std::get<EffectiveCoupling>(config.spheres[j].coupling).rate;
    s.bare_coupling[j] = kReferenceBareCoupling;
    s.magnon[j] = -kI * rate / (std::sqrt(2.0) * kReferenceBareCoupling);
    s.displacement[j] = 0.0;
    s.shifted_detuning[j] = det.magnon[j];
  }
  return s;
}

std::optional<SteadyState> iterate(const SystemConfig& config, const Detunings& det, const Drive& drive,
                                   const SteadyStateOptions& options, double damping,
                                   double& last_residual, int& total_iterations) {
  SteadyState s;
  s.mode = CouplingMode::microscopic;
  for (std::size_t j = 0; j < 2; ++j) {
    s.bare_coupling[j] = std::get<BareCoupling>(config.spheres[j].coupling).rate;
    s.shifted_detuning[j] = det.magnon[j];
  }
  for (int it = 1; it <= options.max_iterations; ++it) {
    ++total_iterations;
    const SteadyState mapped = apply_map(config, det, drive, s);
    const double r = change(s, mapped);
    last_residual = r;
    if (!std::isfinite(r)) return std::nullopt;
    if (r <= options.tolerance) {
      SteadyState out = mapped;
      out.residual = r;
      out.iterations = total_iterations;
      finalize(config, det, out);
      return out;
    }
    const double keep = 1.0 - damping;
    s.cavity = keep * s.cavity + damping * mapped.cavity;
    for (std::size_t j = 0; j < 2; ++j) {
      s.magnon[j] = keep * s.magnon[j] + damping * mapped.magnon[j];
      s.displacement[j] = keep * s.displacement[j] + damping * mapped.displacement[j];
    }
  }
  return std::nullopt;
}

}  // namespace

SteadyState solve_steady_state(const SystemConfig& config, const SteadyStateOptions& options) {
  for (const auto& s : config.spheres) {
    if (s.omega_d == 0.0) throw InvalidParameter("omega_d must be non-zero");
  }
  check_config(config);
  const Detunings det = detunings(config);
  if (config.coupling_mode() == CouplingMode::effective) return effective_state(config, det);

  const Drive drive = drive_terms(config);
  double residual = 0.0;
  int iterations = 0;
  // Oscillation or slow divergence: halve the damping once, then give up
  // rather than guess a branch.
  for (double damping : {options.damping, 0.5 * options.damping}) {
    if (auto s = iterate(config, det, drive, options, damping, residual, iterations)) return *s;
  }
  throw ConvergenceError("steady state did not converge (last residual " + std::to_string(residual) + ")",
                         residual, iterations);
}

SteadyState steady_state_map(const SystemConfig& config, const SteadyState& state) {
  return apply_map(config, detunings(config), drive_terms(config), state);
}

std::array<double, 5> steady_state_residuals(const SystemConfig& config, const SteadyState& s) {
  const Detunings det = detunings(config);
  const Drive drive = drive_terms(config);
  const cd gain = 2.0 * config.opa.lambda * std::polar(1.0, config.opa.theta);
  std::array<double, 5> out{};
  out[0] = relative_gap(cd(config.kappa_c, det.cavity) * s.cavity,
                        -kI * config.spheres[0].r * s.magnon[0] - kI * config.spheres[1].r * s.magnon[1] +
                            gain * std::conj(s.cavity));
  for (std::size_t j = 0; j < 2; ++j) {
    const auto& sp = config.spheres[j];
    out[1 + j] = relative_gap(cd(sp.kappa_n, s.shifted_detuning[j]) * s.magnon[j],
                              -kI * sp.r * s.cavity + drive.rabi[j]);
    out[3 + j] = relative_gap(s.displacement[j], -s.bare_coupling[j] * std::norm(s.magnon[j]) / sp.omega_d);
  }
  return out;
}

EffectiveCouplings effective_couplings(const SystemConfig& config, const SteadyState& steady) {
  EffectiveCouplings e;
  for (std::size_t j = 0; j < 2; ++j) {
    if (const auto* eff = std::get_if<EffectiveCoupling>(&config.spheres[j].coupling)) {
      e.full[j] = eff->rate;
    } else {
      e.full[j] = kI * std::sqrt(2.0) * steady.magnomechanical_product(static_cast<int>(j));
    }
    e.half[j] = e.full[j] / std::sqrt(2.0);
  }
  return e;
}

}  // namespace magnomech
