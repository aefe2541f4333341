#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "magnomech/linear_response.hpp"
#include "magnomech/params.hpp"
#include "magnomech/response_closed.hpp"
#include "magnomech/steady_state.hpp"

namespace magnomech {

enum class Engine { closed, oracle };

std::string to_string(Engine engine);
Engine parse_engine(const std::string& name);

/// eps_out = 2 kappa_c c_- / eps_p. Real part: absorption, imaginary: dispersion.
cd output_field(cd c_minus, double eps_p, double kappa_c);

/// T = 1 - eps_out.
cd transmission(cd eout);

/// c_-(delta) for a fixed configuration, by either engine. Builds the drift
/// matrix or ladder inputs once; evaluation is const and thread-safe.
class ProbeResponse {
 public:
  ProbeResponse(const SystemConfig& config, const SteadyState& steady, Engine engine);

  cd c_minus(double delta) const;
  cd output_field(double delta) const;
  cd transmission(double delta) const;

  Engine engine() const { return engine_; }
  double kappa_c() const { return kappa_c_; }
  double eps_p() const { return eps_p_; }

 private:
  Engine engine_;
  double kappa_c_;
  double eps_p_;
  DriftMatrix drift_;
  LadderInputs ladder_;
};

using TransmissionFn = std::function<cd(double)>;

struct GroupDelay {
  double tau = 0.0;         // central difference with step h
  double tau_half = 0.0;    // central difference with step h/2
  double richardson = 0.0;  // (4 tau_half - tau) / 3
};

/// Threshold on |T| below which the phase derivative is refused.
inline constexpr double kMinTransmission = 1e-12;

/// tau = Im[(1/T) dT/d omega_p] at `delta`; positive means slow light.
/// Throws IllConditionedPhase if |T| < kMinTransmission at any evaluation point.
GroupDelay group_delay(const TransmissionFn& transmission, double delta, double step);

/// Default finite-difference step, 1e-5 of the first phonon frequency.
double default_delay_step(const SystemConfig& config);

struct Grid {
  double min = 0.0;  // rad/s
  double max = 0.0;
  std::size_t points = 0;

  double at(std::size_t i) const;
};

/// Grid in units of the first phonon frequency.
Grid grid_in_phonon_units(const SystemConfig& config, double min, double max, std::size_t points);

struct ResponseSpectrum {
  Engine engine = Engine::closed;
  double omega_d = 0.0;  // normalization of the delta axis
  std::vector<double> delta;
  std::vector<cd> c_minus;
  std::vector<cd> eout;
  std::vector<cd> transmission;
  std::vector<double> phase;  // unwrapped arg T
  std::vector<double> tau;    // seconds
  std::vector<double> tau_richardson;
  bool coarse = false;  // fewer than 3 points

  std::size_t size() const { return delta.size(); }
};

struct SweepOptions {
  std::optional<double> delay_step;  // default: default_delay_step(config)
  std::optional<unsigned> threads;   // default: thread_count()
  bool group_delay = true;
};

/// Evaluates the response on `grid`. Deterministic regardless of thread
/// count; a failing point is rethrown as GridPointError with its index.
ResponseSpectrum sweep_spectrum(const SystemConfig& config, const SteadyState& steady, Engine engine,
                                const Grid& grid, const SweepOptions& options = {});

/// Unwraps a phase sequence by +-2 pi corrections between neighbours.
std::vector<double> unwrap_phase(const std::vector<double>& wrapped);

/// max over the grid of |a - b| / |b| on c_-.
double max_relative_difference(const ResponseSpectrum& a, const ResponseSpectrum& b);

}  // namespace magnomech
