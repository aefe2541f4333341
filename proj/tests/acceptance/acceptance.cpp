// Acceptance checks, one line per criterion:
//   acceptance                 run all eight
//   acceptance --criterion N   run one (exit status reflects it)
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "magnomech/cli.hpp"
#include "magnomech/config_io.hpp"
#include "magnomech/features.hpp"
#include "magnomech/linear_response.hpp"
#include "magnomech/observables.hpp"
#include "magnomech/presets.hpp"
#include "magnomech/response_closed.hpp"
#include "magnomech/steady_state.hpp"

using namespace magnomech;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string num(double v, int digits = 4) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

bool within(double value, double target, double rel) { return std::abs(value - target) <= rel * std::abs(target); }

struct System {
  SystemConfig config;
  SteadyState steady;
};

System make(const nlohmann::json& j) {
  System s{config_from_json(j), {}};
  s.steady = solve_steady_state(s.config);
  return s;
}

ResponseSpectrum spectrum(const System& s, Engine engine, std::size_t points, bool delay) {
  SweepOptions o;
  o.group_delay = delay;
  return sweep_spectrum(s.config, s.steady, engine, grid_in_phonon_units(s.config, 0.0, 2.0, points), o);
}

struct Extremum {
  double tau_us;
  double at;
};

Extremum max_tau(const ResponseSpectrum& s) {
  const auto it = std::max_element(s.tau.begin(), s.tau.end());
  const auto i = static_cast<std::size_t>(it - s.tau.begin());
  return {*it * 1e6, s.delta[i] / s.omega_d};
}

Extremum min_tau(const ResponseSpectrum& s) {
  const auto it = std::min_element(s.tau.begin(), s.tau.end());
  const auto i = static_cast<std::size_t>(it - s.tau.begin());
  return {*it * 1e6, s.delta[i] / s.omega_d};
}

Outcome oracle_equivalence() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::string worst_name;
  for (const auto& name : preset_names()) {
    const System s = make(find_preset(name).config);
    const double d = max_relative_difference(spectrum(s, Engine::closed, 2001, false),
                                             spectrum(s, Engine::oracle, 2001, false));
    if (d > worst) {
      worst = d;
      worst_name = name;
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.check(worst <= 1e-9, "max rel diff over 12 presets " + num(worst) + " (" + worst_name + ") <= 1e-9");
  o.check(seconds < 10.0, "runtime " + num(seconds, 3) + " s < 10 s");
  return o;
}

Outcome window_counts() {
  Outcome o;
  const System a = make(find_preset("fig2a").config);
  const System b = make(find_preset("fig2b").config);
  const SpectralFeatures fa = extract_features(spectrum(a, Engine::oracle, 2001, false));
  const SpectralFeatures fb = extract_features(spectrum(b, Engine::oracle, 2001, false));
  const SpectralFeatures fa2 = extract_features(spectrum(a, Engine::oracle, 4001, false));
  const SpectralFeatures fb2 = extract_features(spectrum(b, Engine::oracle, 4001, false));
  o.check(fa.dips.size() == 3, "fig2a dips " + std::to_string(fa.dips.size()) + " == 3");
  o.check(fb.peaks.size() == 5 && fb.dips.size() == 4,
          "fig2b peaks/dips " + std::to_string(fb.peaks.size()) + "/" + std::to_string(fb.dips.size()) + " == 5/4");
  o.check(fa2.dips.size() == fa.dips.size() && fa2.peaks.size() == fa.peaks.size() &&
              fb2.dips.size() == fb.dips.size() && fb2.peaks.size() == fb.peaks.size(),
          "counts unchanged on 4001 points");
  return o;
}

Outcome slow_fast_light() {
  Outcome o;
  nlohmann::json j = find_preset("fig6").config;
  j["opa"]["lambda"] = 0.0;
  const ResponseSpectrum s = spectrum(make(j), Engine::closed, 2001, true);
  const Extremum hi = max_tau(s);
  const Extremum lo = min_tau(s);
  o.check(within(hi.tau_us, 6.61, 0.10) && std::abs(hi.at - 0.91) <= 0.03,
          "max tau " + num(hi.tau_us) + " us at " + num(hi.at) + " (want 6.61 +-10% at 0.91 +-0.03)");
  o.check(within(lo.tau_us, -16.87, 0.10) && std::abs(lo.at - 1.06) <= 0.03,
          "min tau " + num(lo.tau_us) + " us at " + num(lo.at) + " (want -16.87 +-10% at 1.06 +-0.03)");
  return o;
}

Outcome opa_delay_enhancement() {
  Outcome o;
  const Extremum a = max_tau(spectrum(make(find_preset("fig5a").config), Engine::closed, 2001, true));
  const Extremum b = max_tau(spectrum(make(find_preset("fig5b").config), Engine::closed, 2001, true));
  o.check(within(a.tau_us, 10.38, 0.10), "lambda=0 peak tau " + num(a.tau_us) + " us (want 10.38 +-10%)");
  o.check(within(b.tau_us, 17.36, 0.10), "lambda=1.5kc peak tau " + num(b.tau_us) + " us (want 17.36 +-10%)");
  o.check(b.tau_us > a.tau_us, "strictly increasing");
  return o;
}

Outcome fano_switch() {
  Outcome o;
  const SpectralFeatures b = extract_features(spectrum(make(find_preset("fig4b").config), Engine::oracle, 2001, false));
  const SpectralFeatures c = extract_features(spectrum(make(find_preset("fig4c").config), Engine::oracle, 2001, false));
  o.check(b.dips.size() >= 4, "fig4b dips " + std::to_string(b.dips.size()) + " >= 4");
  o.check(b.max_abs_asymmetry() > kFanoAsymmetryThreshold,
          "fig4b max |asym| " + num(b.max_abs_asymmetry()) + " > " + num(kFanoAsymmetryThreshold));
  const auto ac = c.asymmetries();
  const bool all_below = !ac.empty() && std::all_of(ac.begin(), ac.end(), [](double a) {
    return std::abs(a) < kFanoAsymmetryThreshold;
  });
  o.check(all_below, "fig4c max |asym| " + num(c.max_abs_asymmetry()) + " < " + num(kFanoAsymmetryThreshold));
  return o;
}

Outcome steady_magnitude() {
  Outcome o;
  const System s = make(microscopic_base_json());
  const double n1 = std::abs(s.steady.magnon[0]);
  const auto& sp = s.config.spheres[0];
  const double five_n = 2.0 * s.config.constants.s * spin_count(*sp.diameter, s.config.constants.nu);
  const auto res = steady_state_residuals(s.config, s.steady);
  const double worst = *std::max_element(res.begin(), res.end());
  o.check(within(n1, 1.1e7, 0.15), "|n_1s| " + num(n1) + " (want 1.1e7 +-15%)");
  o.check(within(five_n, 1.8e17, 0.05) && n1 * n1 * 10.0 <= five_n,
          "|n_1s|^2 " + num(n1 * n1) + " << 5N " + num(five_n));
  o.check(worst <= 1e-10, "residual " + num(worst) + " <= 1e-10");
  return o;
}

Outcome validity_report() {
  Outcome o;
  const System s = make(microscopic_base_json());
  const ValidityReport r = validate_config(s.config, s.steady);
  const ValidityCheck& k = r.kerr.at(0);
  o.check(within(k.value, 5.7e13, 0.20), "Kerr term " + num(k.value) + " (want 5.7e13 +-20%)");
  o.check(k.status == CheckStatus::pass && r.rabi_frequency >= 2.23e14,
          "Kerr " + to_string(k.status) + " against Omega " + num(r.rabi_frequency) + " >= 2.23e14");
  return o;
}

std::string run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  cli::run(args, out, err);
  return out.str();
}

Outcome property_suites() {
  Outcome o;

  bool symmetric = true;
  std::vector<System> systems;
  for (const auto& name : preset_names()) systems.push_back(make(find_preset(name).config));
  systems.push_back(make(microscopic_base_json()));
  for (const auto& s : systems) symmetric = symmetric && build_drift_matrix(s.config, s.steady).has_conjugate_pair_symmetry();
  o.check(symmetric, "conjugate-pair symmetry exact");

  double linear = 0.0;
  for (const auto& s : systems) {
    const DriftMatrix d = build_drift_matrix(s.config, s.steady);
    LadderInputs in = ladder_inputs(s.config, s.steady);
    for (double f : {0.3, 0.97, 1.05, 1.8}) {
      const double delta = f * s.config.spheres[0].omega_d;
      in.eps_p = 1.0;
      const cd c1 = c_minus_closed(in, delta);
      const cd o1 = solve_fluctuations(d, delta, 1.0).c_minus();
      in.eps_p = 7.0;
      linear = std::max(linear, std::abs(c_minus_closed(in, delta) - 7.0 * c1) / std::abs(7.0 * c1));
      linear = std::max(linear, std::abs(solve_fluctuations(d, delta, 7.0).c_minus() - 7.0 * o1) / std::abs(7.0 * o1));
    }
  }
  o.check(linear <= 1e-14, "eps_p linearity " + num(linear));

  double min_re = INFINITY;
  for (const auto& s : systems) {
    if (s.config.opa.lambda != 0.0) continue;
    for (Engine e : {Engine::closed, Engine::oracle}) {
      for (cd v : spectrum(s, e, 2001, false).eout) min_re = std::min(min_re, v.real());
    }
  }
  o.check(min_re >= -1e-12, "lambda=0 min Re[eps_out] " + num(min_re) + " >= -1e-12");

  nlohmann::json bare = preset_base_json();
  for (auto& sp : bare["spheres"]) {
    sp["r"] = 0.0;
    sp["R_eff"] = 0.0;
  }
  const System b = make(bare);
  const double dc = detunings(b.config).cavity;
  const double kc = b.config.kappa_c;
  const ProbeResponse br(b.config, b.steady, Engine::closed);
  const cd eout = br.output_field(dc);
  const GroupDelay g = group_delay([&](double d) { return br.transmission(d); }, dc, default_delay_step(b.config));
  o.check(std::abs(eout - 2.0) <= 1e-12, "bare cavity eps_out " + num(eout.real(), 15));
  o.check(within(g.richardson, -2.0 / kc, 1e-6),
          "bare cavity tau " + num(g.richardson) + " s (want -2/kappa_c = " + num(-2.0 / kc) + ")");

  double richardson = 0.0;
  const System f6 = make(find_preset("fig6").config);
  const ProbeResponse fr(f6.config, f6.steady, Engine::closed);
  const TransmissionFn ft = [&](double d) { return fr.transmission(d); };
  const double wd = f6.config.spheres[0].omega_d;
  for (double f : {0.5, 0.92, 1.0, 1.074, 1.5}) {
    const double fine = group_delay(ft, f * wd, 1e-7 * wd).richardson;
    const double coarse = group_delay(ft, f * wd, default_delay_step(f6.config)).richardson;
    richardson = std::max(richardson, std::abs(coarse - fine) / std::abs(fine));
  }
  o.check(richardson <= 1e-4, "Richardson tau convergence " + num(richardson) + " <= 1e-4");

  const std::vector<std::string> args{"delay", "--preset", "fig5b", "--grid", "0:2:2001", "--features"};
  setenv("MAGNOMECH_THREADS", "1", 1);
  const std::string one = run_cli(args);
  const std::string again = run_cli(args);
  setenv("MAGNOMECH_THREADS", "4", 1);
  const std::string four = run_cli(args);
  unsetenv("MAGNOMECH_THREADS");
  o.check(!one.empty() && one == again && one == four, "CSV byte-identical across runs and 1/4 threads");
  return o;
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"oracle equivalence", oracle_equivalence},
      {"MMIT window counts", window_counts},
      {"slow/fast light numbers", slow_fast_light},
      {"OPA delay enhancement", opa_delay_enhancement},
      {"Fano symmetry switch", fano_switch},
      {"steady-state magnitude", steady_magnitude},
      {"validity report", validity_report},
      {"property suites", property_suites},
  };
  return all;
}

bool report(std::size_t index) {
  const Criterion& c = criteria()[index];
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << index + 1 << " (" << c.name << "): " << o.detail
            << std::endl;
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc == 3 && std::string(argv[1]) == "--criterion") {
    const int n = std::atoi(argv[2]);
    if (n < 1 || n > static_cast<int>(criteria().size())) {
      std::cerr << "criterion must be 1.." << criteria().size() << '\n';
      return 2;
    }
    return report(static_cast<std::size_t>(n - 1)) ? 0 : 1;
  }
  if (argc != 1) {
    std::cerr << "usage: acceptance [--criterion N]\n";
    return 2;
  }
  bool ok = true;
  for (std::size_t i = 0; i < criteria().size(); ++i) ok = report(i) && ok;
  return ok ? 0 : 1;
}
