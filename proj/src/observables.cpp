#include "magnomech/observables.hpp"

#include <algorithm>
#include <cmath>

#include "magnomech/errors.hpp"
#include "magnomech/parallel.hpp"

namespace magnomech {

std::string to_string(Engine engine) { return engine == Engine::closed ? "closed" : "oracle"; }

Engine parse_engine(const std::string& name) {
  if (name == "closed") return Engine::closed;
  if (name == "oracle") return Engine::oracle;
  throw std::invalid_argument("unknown engine '" + name + "' (expected closed or oracle)");
}

cd output_field(cd c_minus, double eps_p, double kappa_c) { return 2.0 * kappa_c * c_minus / eps_p; }

cd transmission(cd eout) { return 1.0 - eout; }

ProbeResponse::ProbeResponse(const SystemConfig& config, const SteadyState& steady, Engine engine)
    : engine_(engine),
      kappa_c_(config.kappa_c),
      eps_p_(config.drive.eps_p),
      drift_(engine == Engine::oracle ? build_drift_matrix(config, steady) : DriftMatrix{}),
      ladder_(ladder_inputs(config, steady)) {}

cd ProbeResponse::c_minus(double delta) const {
  if (engine_ == Engine::oracle) return solve_fluctuations(drift_, delta, eps_p_).c_minus();
  return c_minus_closed(ladder_, delta);
}

cd ProbeResponse::output_field(double delta) const {
  return magnomech::output_field(c_minus(delta), eps_p_, kappa_c_);
}

cd ProbeResponse::transmission(double delta) const { return magnomech::transmission(output_field(delta)); }

namespace {

double central_difference(const TransmissionFn& t, double delta, double h) {
  const cd centre = t(delta);
  const cd plus = t(delta + h);
  const cd minus = t(delta - h);
  for (cd v : {centre, plus, minus}) {
    if (std::abs(v) < kMinTransmission) {
      throw IllConditionedPhase("|T| below " + std::to_string(kMinTransmission) + " near delta = " +
                                std::to_string(delta));
    }
  }
  return ((plus - minus) / (2.0 * h) / centre).imag();
}

}  // namespace

GroupDelay group_delay(const TransmissionFn& t, double delta, double step) {
  if (!(step > 0.0)) throw InvalidParameter("finite-difference step must be positive");
  GroupDelay g;
  g.tau = central_difference(t, delta, step);
  g.tau_half = central_difference(t, delta, 0.5 * step);
  g.richardson = (4.0 * g.tau_half - g.tau) / 3.0;
  return g;
}

double default_delay_step(const SystemConfig& config) { return 1e-5 * config.spheres[0].omega_d; }

double Grid::at(std::size_t i) const {
  if (points == 1) return min;
  // Endpoint-exact linear spacing.
  const double t = static_cast<double>(i) / static_cast<double>(points - 1);
  return i + 1 == points ? max : min + t * (max - min);
}

Grid grid_in_phonon_units(const SystemConfig& config, double min, double max, std::size_t points) {
  const double wd = config.spheres[0].omega_d;
  return {min * wd, max * wd, points};
}

std::vector<double> unwrap_phase(const std::vector<double>& wrapped) {
  std::vector<double> out(wrapped.size());
  double offset = 0.0;
  for (std::size_t i = 0; i < wrapped.size(); ++i) {
    if (i > 0) {
      const double jump = wrapped[i] - wrapped[i - 1];
      if (jump > std::numbers::pi) offset -= kTwoPi;
      if (jump < -std::numbers::pi) offset += kTwoPi;
    }
    out[i] = wrapped[i] + offset;
  }
  return out;
}

ResponseSpectrum sweep_spectrum(const SystemConfig& config, const SteadyState& steady, Engine engine,
                                const Grid& grid, const SweepOptions& options) {
  if (grid.points < 2) throw InvalidParameter("grid needs at least 2 points");
  if (!(grid.min < grid.max)) throw InvalidParameter("grid needs min < max");

  const ProbeResponse response(config, steady, engine);
  const double step = options.delay_step.value_or(default_delay_step(config));
  const std::size_t n = grid.points;

  ResponseSpectrum s;
  s.engine = engine;
  s.omega_d = config.spheres[0].omega_d;
  s.coarse = n < 3;
  s.delta.resize(n);
  s.c_minus.resize(n);
  s.eout.resize(n);
  s.transmission.resize(n);
  s.tau.assign(n, 0.0);
  s.tau_richardson.assign(n, 0.0);
  std::vector<double> wrapped(n);

  const TransmissionFn t = [&response](double d) { return response.transmission(d); };
  parallel_for(n, options.threads.value_or(thread_count()), [&](std::size_t i) {
    try {
      const double delta = grid.at(i);
      s.delta[i] = delta;
      s.c_minus[i] = response.c_minus(delta);
      s.eout[i] = output_field(s.c_minus[i], response.eps_p(), response.kappa_c());
      s.transmission[i] = transmission(s.eout[i]);
      wrapped[i] = std::arg(s.transmission[i]);
      if (options.group_delay) {
        const GroupDelay g = group_delay(t, delta, step);
        s.tau[i] = g.tau;
        s.tau_richardson[i] = g.richardson;
      }
    } catch (const std::exception& e) {
      throw GridPointError(i, e.what());
    }
  });
  s.phase = unwrap_phase(wrapped);
  return s;
}

double max_relative_difference(const ResponseSpectrum& a, const ResponseSpectrum& b) {
  if (a.size() != b.size()) throw std::invalid_argument("spectra have different grids");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a.c_minus[i] - b.c_minus[i]) / std::abs(b.c_minus[i]));
  }
  return worst;
}

}  // namespace magnomech
