#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "magnomech/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = magnomech::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string config_path(const std::string& name) { return std::string(MAGNOMECH_SOURCE_DIR) + "/configs/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> data_rows(const std::string& csv) {
  std::vector<std::string> rows;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  }
  return rows;
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 2);
  CHECK(run({"spectrum", "--preset", "fig2a", "--bogus"}).code == 2);
  CHECK(run({"spectrum", "--preset", "nofig"}).code == 2);
  CHECK(run({"spectrum", "--preset", "fig2a", "--engine", "magic"}).code == 2);
  CHECK(run({"spectrum"}).code == 2);
}

TEST_CASE("presets") {
  const Result r = run({"presets"});
  CHECK(r.code == 0);
  for (const char* name : {"fig2a", "fig2b", "fig2c", "fig2d", "fig3a", "fig3b", "fig4a", "fig4b", "fig4c", "fig5a",
                           "fig5b", "fig6"}) {
    CHECK(r.out.find(std::string(name) + " ") != std::string::npos);
  }
}

TEST_CASE("preset configs carry the caption values") {
  auto cfg = [](const std::string& name) { return nlohmann::json::parse(run({"config", "--preset", name}).out); };
  const auto b = cfg("fig2b");
  CHECK(b["spheres"][0]["R_eff"] == 2e6);
  CHECK(b["spheres"][1]["R_eff"] == 1e6);
  CHECK(b["opa"]["lambda"] == 0.0);
  const auto f = cfg("fig4b");
  CHECK(f["detuning_overrides"]["Delta_n1"].get<double>() == doctest::Approx(5e6));
  CHECK(f["detuning_overrides"]["Delta_n2"].get<double>() == doctest::Approx(5e6));
  CHECK(f["spheres"][0]["R_eff"] == 1e6);
  CHECK(f["spheres"][1]["R_eff"] == 3.5e6);
  const auto g = cfg("fig5b");
  CHECK(g["opa"]["lambda"].get<double>() == doctest::Approx(1.5 * 2.1e6));
  CHECK(cfg("fig6")["spheres"][1]["R_eff"] == 1e6);
}

TEST_CASE("steady report") {
  const Result r = run({"steady", config_path("paper_microscopic.json")});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["steady_state"]["abs_n_1s"].get<double>() == doctest::Approx(1.1e7).epsilon(0.15));
  CHECK(j["validity"]["kerr"][0]["status"] == "pass");
  // Stable key order.
  CHECK(r.out.find("\"steady_state\"") < r.out.find("\"validity\""));

  const Result missing = run({"steady", "/nonexistent.json"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("nonexistent") != std::string::npos);
}

TEST_CASE("undriven steady state") {
  auto j = nlohmann::json::parse(slurp(config_path("paper_microscopic.json")));
  j["drive"]["B"] = 0.0;
  const std::string path = "test_cli_undriven.json";
  std::ofstream(path) << j.dump();
  const Result r = run({"steady", path});
  REQUIRE(r.code == 0);
  const auto s = nlohmann::json::parse(r.out)["steady_state"];
  CHECK(s["abs_n_1s"] == 0.0);
  CHECK(s["abs_n_2s"] == 0.0);
  std::remove(path.c_str());
}

TEST_CASE("validate") {
  const Result r = run({"validate", config_path("paper_microscopic.json")});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["kerr"][0]["value"].get<double>() == doctest::Approx(5.7e13).epsilon(0.2));
  CHECK(j["kerr"][0]["status"] == "pass");

  const auto big = nlohmann::json::parse(run({"validate", config_path("sphere_1mm.json")}).out);
  CHECK(big["kerr"][0]["status"] == "pass");

  auto cfg = nlohmann::json::parse(slurp(config_path("paper_effective.json")));
  cfg["detuning_overrides"]["Delta_c"] = cfg["cavity"]["kappa_c"];
  const std::string path = "test_cli_hierarchy.json";
  std::ofstream(path) << cfg.dump();
  const auto h = nlohmann::json::parse(run({"validate", path}).out);
  CHECK(h["hierarchy"]["status"] == "warn");
  std::remove(path.c_str());
}

TEST_CASE("spectrum CSV") {
  const Result r = run({"spectrum", "--preset", "fig2b", "--engine", "both"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# magnomech spectrum --preset fig2b --engine both\n", 0) == 0);
  const auto rows = data_rows(r.out);
  REQUIRE(rows.size() == 2002);
  CHECK(rows[0] == "delta_over_omega_d,re_eout,im_eout,re_T,im_T,phase_rad,tau_us");
  const auto pos = r.out.find("# max_relative_engine_difference: ");
  REQUIRE(pos != std::string::npos);
  const double diff = std::stod(r.out.substr(pos + 34));
  CHECK(diff <= 1e-9);

  const Result a = run({"spectrum", "--preset", "fig2a", "--features"});
  CHECK(a.out.find("# dips: 3\n") != std::string::npos);
  const Result c = run({"spectrum", "--preset", "fig4c", "--features"});
  CHECK(c.out.find("(symmetric)") != std::string::npos);
}

TEST_CASE("spectrum to a file") {
  const std::string path = "test_cli_spectrum.csv";
  const Result r = run({"spectrum", "--preset", "fig2a", "--grid", "0.5:1.5:101", "--out", path, "--features"});
  REQUIRE(r.code == 0);
  CHECK(data_rows(slurp(path)).size() == 102);
  CHECK(r.out.find("dips: 3") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("delay") {
  const Result r = run({"delay", "--preset", "fig6", "--lambda", "0"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# max_tau_us: ") != std::string::npos);
  CHECK(r.out.find("# min_tau_us: ") != std::string::npos);
  CHECK(run({"delay", "--preset", "fig6", "--grid", "1:1:5"}).code == 2);
  CHECK(run({"delay", "--preset", "fig6", "--grid", "0:2"}).code == 2);
}

TEST_CASE("sweeps") {
  const Result r = run({"sweep", "--preset", "fig2a", "--vary", "spheres.0.R_eff=0,2e6,3.5e6,4e6", "--observable",
                        "n_dips"});
  REQUIRE(r.code == 0);
  const auto rows = data_rows(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "spheres.0.R_eff,n_dips,stable,max_re_eigenvalue");
  const char* expected[] = {"0,3,1,", "2000000,4,1,", "3500000,4,1,", "4000000,4,1,"};
  for (int i = 0; i < 4; ++i) CHECK(rows[i + 1].rfind(expected[i], 0) == 0);

  const Result two = run({"sweep", "--preset", "fig6", "--vary", "opa.lambda=0:2e6:2", "--vary2",
                          "spheres.0.R_eff=1e6,2e6", "--observable", "window_width", "--grid", "0.8:1.2:201"});
  REQUIRE(two.code == 0);
  const auto t = data_rows(two.out);
  REQUIRE(t.size() == 5);
  CHECK(t[0] == "opa.lambda,spheres.0.R_eff,window_width_over_omega_d,stable,max_re_eigenvalue");

  const Result bad = run({"sweep", "--preset", "fig2a", "--vary", "opa.gain=0:1:3"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("opa.lambda") != std::string::npos);
  CHECK(run({"sweep", "--preset", "fig2a", "--vary", "opa.lambda=0:1:0"}).code == 2);
  CHECK(run({"sweep", "--preset", "fig2a", "--vary", "opa.lambda=0:1:2", "--observable", "mood"}).code == 2);
}

TEST_CASE("CSV output is deterministic across runs and thread counts") {
  const std::vector<std::string> args{"delay", "--preset", "fig5b", "--grid", "0.8:1.2:401"};
  CHECK(run(args).out == run(args).out);

  const std::string bin = MAGNOMECH_BIN;
  std::string outputs[2];
  const char* threads[2] = {"1", "3"};
  for (int k = 0; k < 2; ++k) {
    const std::string path = "test_cli_threads.csv";
    const std::string cmd = std::string("MAGNOMECH_THREADS=") + threads[k] + " '" + bin +
                            "' delay --preset fig5b --grid 0.8:1.2:401 --out " + path + " > /dev/null";
    REQUIRE(std::system(cmd.c_str()) == 0);
    outputs[k] = slurp(path);
    std::remove(path.c_str());
  }
  CHECK(!outputs[0].empty());
  CHECK(outputs[0] == outputs[1]);
}
