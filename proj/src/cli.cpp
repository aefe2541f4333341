#include "magnomech/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "magnomech/config_io.hpp"
#include "magnomech/errors.hpp"
#include "magnomech/features.hpp"
#include "magnomech/linear_response.hpp"
#include "magnomech/observables.hpp"
#include "magnomech/presets.hpp"
#include "magnomech/steady_state.hpp"

namespace magnomech::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Source {
  std::string config_path;
  std::string preset;
  std::optional<double> lambda_over_kappa;
};

struct Loaded {
  json config_json;  // file units
  PresetGrid grid;
};

Loaded load_source(const Source& src) {
  if (src.config_path.empty() == src.preset.empty()) {
    throw UsageError("give exactly one of a config path or --preset");
  }
  Loaded l;
  if (!src.preset.empty()) {
    const Preset p = find_preset(src.preset);
    l.config_json = p.config;
    l.grid = p.grid;
  } else {
    std::ifstream in(src.config_path);
    if (!in) throw ConfigError("cannot open config file '" + src.config_path + "'");
    try {
      in >> l.config_json;
    } catch (const json::parse_error& e) {
      throw ConfigError("cannot parse '" + src.config_path + "': " + e.what());
    }
  }
  if (src.lambda_over_kappa) {
    const double kappa_c = get_numeric_path(l.config_json, "cavity.kappa_c");
    if (!l.config_json.contains("opa")) l.config_json["opa"] = {{"lambda", 0.0}, {"theta", 0.0}};
    l.config_json["opa"]["lambda"] = *src.lambda_over_kappa * kappa_c;
  }
  return l;
}

PresetGrid parse_grid(const std::string& spec) {
  double lo = 0.0, hi = 0.0;
  long long n = 0;
  char c1 = 0, c2 = 0;
  std::istringstream ss(spec);
  if (!(ss >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || !(ss >> std::ws).eof()) {
    throw UsageError("grid must look like min:max:n, got '" + spec + "'");
  }
  if (n < 2) throw UsageError("grid needs at least 2 points");
  if (!(lo < hi)) throw UsageError("grid needs min < max (zero-width grid '" + spec + "')");
  return {lo, hi, static_cast<std::size_t>(n)};
}

struct Vary {
  std::string path;
  std::vector<double> values;
};

Vary parse_vary(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError("--vary must look like path=min:max:n or path=v1,v2,...");
  Vary v;
  v.path = spec.substr(0, eq);
  const std::string rhs = spec.substr(eq + 1);
  if (rhs.find(':') != std::string::npos) {
    double lo = 0.0, hi = 0.0;
    long long n = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(rhs);
    if (!(ss >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || !(ss >> std::ws).eof()) {
      throw UsageError("bad range '" + rhs + "'");
    }
    if (n < 1) throw UsageError("sweep range '" + rhs + "' is empty");
    if (n == 1) {
      v.values.push_back(lo);
    } else {
      const Grid g{lo, hi, static_cast<std::size_t>(n)};
      for (std::size_t i = 0; i < g.points; ++i) v.values.push_back(g.at(i));
    }
  } else {
    std::istringstream ss(rhs);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      double x = 0.0;
      try {
        x = std::stod(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != item.size()) throw UsageError("bad sweep value '" + item + "'");
      v.values.push_back(x);
    }
    if (v.values.empty()) throw UsageError("sweep list '" + rhs + "' is empty");
  }
  return v;
}

std::string echo(const std::vector<std::string>& args) {
  std::string s = "# magnomech";
  for (const auto& a : args) s += " " + a;
  return s;
}

// Writes the CSV either to a file or to `out`; report lines go to the CSV as
// comment rows and, when the CSV is a file, to `out` as well.
class CsvSink {
 public:
  CsvSink(const std::string& path, std::ostream& out) : out_(out) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot open output file '" + path + "'");
      to_file_ = true;
    }
  }
  std::ostream& csv() { return to_file_ ? static_cast<std::ostream&>(file_) : out_; }
  void report(const std::string& line) {
    csv() << "# " << line << '\n';
    if (to_file_) out_ << line << '\n';
  }

 private:
  std::ostream& out_;
  std::ofstream file_;
  bool to_file_ = false;
};

void write_spectrum_rows(std::ostream& os, const ResponseSpectrum& s) {
  os << "delta_over_omega_d,re_eout,im_eout,re_T,im_T,phase_rad,tau_us\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    os << fmt17(s.delta[i] / s.omega_d) << ',' << fmt17(s.eout[i].real()) << ',' << fmt17(s.eout[i].imag())
       << ',' << fmt17(s.transmission[i].real()) << ',' << fmt17(s.transmission[i].imag()) << ','
       << fmt17(s.phase[i]) << ',' << fmt17(s.tau[i] * 1e6) << '\n';
  }
}

struct Evaluated {
  SystemConfig config;
  SteadyState steady;
  ResponseSpectrum spectrum;
};

Evaluated evaluate(const json& config_json, const PresetGrid& g, Engine engine, bool with_delay = true) {
  Evaluated e{config_from_json(config_json), {}, {}};
  e.steady = solve_steady_state(e.config);
  SweepOptions opts;
  opts.group_delay = with_delay;
  e.spectrum = sweep_spectrum(e.config, e.steady, engine, grid_in_phonon_units(e.config, g.min, g.max, g.points),
                              opts);
  return e;
}

void report_features(CsvSink& sink, const ResponseSpectrum& s) {
  const SpectralFeatures f = extract_features(s);
  sink.report("peaks: " + std::to_string(f.peaks.size()));
  sink.report("dips: " + std::to_string(f.dips.size()));
  for (const auto& p : f.peaks) {
    sink.report("peak delta_over_omega_d=" + fmt6(p.delta / s.omega_d) + " height=" + fmt6(p.height));
  }
  for (const auto& d : f.dips) {
    std::string line = "dip delta_over_omega_d=" + fmt6(d.delta / s.omega_d) + " value=" + fmt6(d.value);
    if (d.width) line += " width_over_omega_d=" + fmt6(*d.width / s.omega_d);
    if (d.asymmetry) line += " asymmetry=" + fmt6(*d.asymmetry);
    sink.report(line);
  }
  const double m = f.max_abs_asymmetry();
  sink.report("max_abs_asymmetry: " + fmt6(m) + (m > kFanoAsymmetryThreshold ? " (Fano)" : " (symmetric)") +
              " threshold=" + fmt6(kFanoAsymmetryThreshold));
  for (const auto& w : f.warnings) sink.report("warning: " + w);
}

struct TauExtrema {
  double max_tau = -std::numeric_limits<double>::infinity();
  double max_at = 0.0;
  double min_tau = std::numeric_limits<double>::infinity();
  double min_at = 0.0;
};

TauExtrema tau_extrema(const ResponseSpectrum& s) {
  TauExtrema t;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.tau[i] > t.max_tau) {
      t.max_tau = s.tau[i];
      t.max_at = s.delta[i] / s.omega_d;
    }
    if (s.tau[i] < t.min_tau) {
      t.min_tau = s.tau[i];
      t.min_at = s.delta[i] / s.omega_d;
    }
  }
  return t;
}

ordered_json complex_json(cd z) { return {{"re", z.real()}, {"im", z.imag()}}; }

ordered_json check_json(const ValidityCheck& c) {
  return {{"name", c.name}, {"value", c.value}, {"bound", c.bound}, {"status", to_string(c.status)}, {"note", c.note}};
}

ordered_json validity_json(const ValidityReport& r) {
  ordered_json j;
  j["dominance_ratio"] = r.dominance_ratio;
  j["rabi_frequency_rad_s"] = r.rabi_frequency;
  j["kerr"] = ordered_json::array();
  for (const auto& c : r.kerr) j["kerr"].push_back(check_json(c));
  j["occupation"] = ordered_json::array();
  for (const auto& c : r.occupation) j["occupation"].push_back(check_json(c));
  j["hierarchy"] = check_json(r.hierarchy);
  j["all_pass"] = r.all_pass();
  return j;
}

ordered_json steady_json(const SystemConfig& config, const SteadyState& s) {
  ordered_json j;
  j["mode"] = s.mode == CouplingMode::microscopic ? "microscopic" : "effective";
  j["c_s"] = complex_json(s.cavity);
  for (std::size_t k = 0; k < 2; ++k) {
    const std::string idx = std::to_string(k + 1);
    j["n_" + idx + "s"] = complex_json(s.magnon[k]);
    j["abs_n_" + idx + "s"] = std::abs(s.magnon[k]);
    j["x_" + idx + "s"] = s.displacement[k];
    j["Delta_bar_n" + idx + "_hz"] = to_ordinary(s.shifted_detuning[k]);
  }
  const EffectiveCouplings e = effective_couplings(config, s);
  for (std::size_t k = 0; k < 2; ++k) {
    j["R_" + std::to_string(k + 1) + "_hz"] = complex_json(e.full[k] / kTwoPi);
  }
  j["residual"] = s.residual;
  j["iterations"] = s.iterations;
  const auto res = steady_state_residuals(config, s);
  j["back_substitution_residuals"] = res;
  return j;
}

int cmd_steady(const Source& src, std::ostream& out) {
  const Loaded l = load_source(src);
  const SystemConfig config = config_from_json(l.config_json);
  const SteadyState s = solve_steady_state(config);
  ordered_json j;
  j["steady_state"] = steady_json(config, s);
  j["validity"] = validity_json(validate_config(config, s));
  out << j.dump(2) << '\n';
  return kSuccess;
}

int cmd_validate(const Source& src, std::ostream& out) {
  const Loaded l = load_source(src);
  const SystemConfig config = config_from_json(l.config_json);
  const SteadyState s = solve_steady_state(config);
  out << validity_json(validate_config(config, s)).dump(2) << '\n';
  return kSuccess;
}

struct SpectrumArgs {
  Source src;
  std::string engine = "closed";
  std::string out_path;
  std::string grid;
  bool features = false;
};

int cmd_spectrum(const SpectrumArgs& a, const std::vector<std::string>& argv, std::ostream& out, bool delay_mode) {
  Loaded l = load_source(a.src);
  if (!a.grid.empty()) l.grid = parse_grid(a.grid);
  if (a.engine != "closed" && a.engine != "oracle" && a.engine != "both") {
    throw UsageError("--engine must be closed, oracle or both");
  }
  const bool both = a.engine == "both";
  const Engine primary = both ? Engine::closed : parse_engine(a.engine);

  const Evaluated e = evaluate(l.config_json, l.grid, primary);
  CsvSink sink(a.out_path, out);
  sink.csv() << echo(argv) << '\n';
  write_spectrum_rows(sink.csv(), e.spectrum);

  if (both) {
    SweepOptions opts;
    opts.group_delay = false;
    const ResponseSpectrum oracle =
        sweep_spectrum(e.config, e.steady, Engine::oracle,
                       grid_in_phonon_units(e.config, l.grid.min, l.grid.max, l.grid.points), opts);
    sink.report("max_relative_engine_difference: " + fmt17(max_relative_difference(e.spectrum, oracle)));
  }
  if (delay_mode) {
    const TauExtrema t = tau_extrema(e.spectrum);
    sink.report("max_tau_us: " + fmt6(t.max_tau * 1e6) + " at delta_over_omega_d=" + fmt6(t.max_at));
    sink.report("min_tau_us: " + fmt6(t.min_tau * 1e6) + " at delta_over_omega_d=" + fmt6(t.min_at));
  }
  if (a.features) report_features(sink, e.spectrum);
  if (e.spectrum.coarse) sink.report("warning: fewer than 3 grid points");
  return kSuccess;
}

struct SweepArgs {
  Source src;
  std::string vary;
  std::string vary2;
  std::string observable = "peak_tau";
  std::string out_path;
  std::string grid;
  std::string engine = "closed";
};

double observe(const std::string& name, const ResponseSpectrum& s) {
  if (name == "peak_tau") return tau_extrema(s).max_tau * 1e6;
  if (name == "min_tau") return tau_extrema(s).min_tau * 1e6;
  const SpectralFeatures f = extract_features(s);
  if (name == "n_dips") return static_cast<double>(f.dips.size());
  const auto w = f.window_widths();
  return w.empty() ? 0.0 : *std::max_element(w.begin(), w.end()) / s.omega_d;
}

int cmd_sweep(const SweepArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
  static const std::vector<std::string> kObservables = {"peak_tau", "min_tau", "n_dips", "window_width"};
  if (std::find(kObservables.begin(), kObservables.end(), a.observable) == kObservables.end()) {
    throw UsageError("--observable must be one of peak_tau, min_tau, n_dips, window_width");
  }
  Loaded l = load_source(a.src);
  if (!a.grid.empty()) l.grid = parse_grid(a.grid);
  const Engine engine = parse_engine(a.engine);
  const Vary v1 = parse_vary(a.vary);
  std::optional<Vary> v2;
  if (!a.vary2.empty()) v2 = parse_vary(a.vary2);

  // Validate paths before any work.
  json probe = l.config_json;
  set_numeric_path(probe, v1.path, v1.values.front());
  if (v2) set_numeric_path(probe, v2->path, v2->values.front());

  const bool needs_delay = a.observable == "peak_tau" || a.observable == "min_tau";
  const std::string unit = a.observable == "n_dips" ? "" : (a.observable == "window_width" ? "_over_omega_d" : "_us");

  CsvSink sink(a.out_path, out);
  sink.csv() << echo(argv) << '\n';
  sink.csv() << v1.path << ',';
  if (v2) sink.csv() << v2->path << ',';
  sink.csv() << a.observable << unit << ",stable,max_re_eigenvalue\n";

  const std::vector<double> second = v2 ? v2->values : std::vector<double>{0.0};
  for (double p1 : v1.values) {
    for (double p2 : second) {
      json cfg = l.config_json;
      set_numeric_path(cfg, v1.path, p1);
      if (v2) set_numeric_path(cfg, v2->path, p2);
      const Evaluated e = evaluate(cfg, l.grid, engine, needs_delay);
      const StabilityReport st = stability_check(build_drift_matrix(e.config, e.steady));
      sink.csv() << fmt17(p1) << ',';
      if (v2) sink.csv() << fmt17(p2) << ',';
      sink.csv() << fmt17(observe(a.observable, e.spectrum)) << ',' << (st.stable ? 1 : 0) << ','
                 << fmt17(st.max_real_part) << '\n';
    }
  }
  return kSuccess;
}

int cmd_presets(std::ostream& out) {
  for (const auto& name : preset_names()) out << name << "  " << find_preset(name).caption << '\n';
  return kSuccess;
}

int cmd_config(const Source& src, std::ostream& out) {
  const Loaded l = load_source(src);
  out << config_to_json(config_from_json(l.config_json)).dump(2) << '\n';
  return kSuccess;
}

void add_source(CLI::App* cmd, Source& src, bool with_lambda = true) {
  cmd->add_option("config", src.config_path, "JSON configuration file");
  cmd->add_option("--preset", src.preset, "figure preset (see 'magnomech presets')");
  if (with_lambda) {
    cmd->add_option("--lambda", src.lambda_over_kappa, "OPA gain override in units of kappa_c");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probe response of a two-sphere cavity magnomechanical system with a degenerate OPA"};
  app.require_subcommand(1);

  Source steady_src, validate_src, config_src;
  SpectrumArgs spectrum_args, delay_args;
  SweepArgs sweep_args;

  auto* steady = app.add_subcommand("steady", "solve the steady state and print it with the validity report");
  add_source(steady, steady_src);
  auto* validate = app.add_subcommand("validate", "print the physical-regime validity report");
  add_source(validate, validate_src);

  auto add_spectrum_flags = [](CLI::App* cmd, SpectrumArgs& a) {
    add_source(cmd, a.src);
    cmd->add_option("--engine", a.engine, "closed, oracle or both");
    cmd->add_option("--out", a.out_path, "CSV output path (default stdout)");
    cmd->add_option("--grid", a.grid, "min:max:n in units of omega_d");
    cmd->add_flag("--features", a.features, "report peaks, dips, widths and asymmetry");
  };
  auto* spectrum = app.add_subcommand("spectrum", "absorption/dispersion spectrum as CSV");
  add_spectrum_flags(spectrum, spectrum_args);
  auto* delay = app.add_subcommand("delay", "transmission group delay as CSV");
  add_spectrum_flags(delay, delay_args);

  auto* sweep = app.add_subcommand("sweep", "sweep config parameters and record an observable");
  add_source(sweep, sweep_args.src);
  sweep->add_option("--vary", sweep_args.vary, "path=min:max:n or path=v1,v2,... (file units)")->required();
  sweep->add_option("--vary2", sweep_args.vary2, "second swept parameter");
  sweep->add_option("--observable", sweep_args.observable, "peak_tau, min_tau, n_dips or window_width");
  sweep->add_option("--out", sweep_args.out_path, "CSV output path (default stdout)");
  sweep->add_option("--grid", sweep_args.grid, "min:max:n in units of omega_d");
  sweep->add_option("--engine", sweep_args.engine, "closed or oracle");

  auto* presets = app.add_subcommand("presets", "list figure presets");
  auto* config = app.add_subcommand("config", "print a configuration in canonical form");
  add_source(config, config_src);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputFailure;
  }

  try {
    if (steady->parsed()) return cmd_steady(steady_src, out);
    if (validate->parsed()) return cmd_validate(validate_src, out);
    if (spectrum->parsed()) return cmd_spectrum(spectrum_args, args, out, false);
    if (delay->parsed()) return cmd_spectrum(delay_args, args, out, true);
    if (sweep->parsed()) return cmd_sweep(sweep_args, args, out);
    if (presets->parsed()) return cmd_presets(out);
    if (config->parsed()) return cmd_config(config_src, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kInputFailure;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kInputFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: invalid parameter: " << e.what() << '\n';
    return kInputFailure;
  } catch (const NumericalError& e) {
    err << "error: numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kInputFailure;
}

}  // namespace magnomech::cli
