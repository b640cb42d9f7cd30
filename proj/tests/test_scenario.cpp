#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slowlight/scenario.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace slowlight;
using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kSmallRabi = R"({
  "scenario": "rabi-check",
  "grid": {"tau_min": 0.0, "tau_max": 6.283185307179586, "n_tau": 6284,
           "zeta_min": 0.0, "zeta_max": 0.1, "n_zeta": 2},
  "envelope": {"family": "constant", "amplitude": 1.0}
})";

} // namespace

TEST_CASE("defaults document round-trips through the parser") {
  json d = default_config_json();
  ScenarioConfig c = parse_config(d.dump());
  CHECK(c.scenario == "adiabaton-propagation");
  CHECK(c.grid.n_tau == 2000);
  CHECK(c.grid.tau_max == 200.0);
  CHECK(c.medium.g == 100.0);
  CHECK(c.envelope.family == EnvelopeFamily::Constant);
  CHECK(c.theta.family == ShapeFamily::TanhKink);
  CHECK(c.theta.center == 0.5);
  CHECK(c.phi.amplitude == 0.0);
  CHECK(c.output_dir == "out");
  CHECK(c.seed == 0);
  CHECK(c.write_histories);
  CHECK_FALSE(c.loss.has_value());
}

TEST_CASE("config rejection paths") {
  SUBCASE("syntax error carries a line number") {
    try {
      parse_config("{\n  \"scenario\": oops\n}");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
  SUBCASE("missing scenario") {
    CHECK_THROWS_WITH_AS(parse_config("{}"), "missing block 'scenario'",
                         ConfigError);
  }
  SUBCASE("unknown scenario") {
    CHECK_THROWS_WITH_AS(parse_config(R"({"scenario": "warp-drive"})"),
                         "unknown scenario 'warp-drive'", ConfigError);
  }
  SUBCASE("negative coupling") {
    CHECK_THROWS_WITH_AS(
        parse_config(R"({"scenario": "rabi-check", "medium": {"g": -1.0}})"),
        "medium.g must be > 0", ConfigError);
  }
  SUBCASE("unknown envelope family") {
    CHECK_THROWS_WITH_AS(
        parse_config(
            R"({"scenario": "rabi-check", "envelope": {"family": "sawtooth"}})"),
        "unknown envelope family 'sawtooth'", ConfigError);
  }
  SUBCASE("bad grid") {
    CHECK_THROWS_AS(
        parse_config(R"({"scenario": "rabi-check", "grid": {"n_tau": 1}})"),
        ConfigError);
  }
  SUBCASE("storage needs a fully closing gate") {
    ScenarioConfig c = parse_config(R"({"scenario": "storage-retrieval"})");
    CHECK_THROWS_AS(run_scenario(c), ConfigError);
  }
}

TEST_CASE("rabi-check reproduces the two-level closed form") {
  ScenarioConfig c = parse_config(kSmallRabi);
  ScenarioResult r = run_scenario(c);
  CHECK(r.has_record);
  CHECK(r.summary.at("max_rabi_deviation").get<double>() <= 1e-8);
  CHECK(r.summary.at("scenario") == "rabi-check");
  CHECK(r.summary.at("schema_version") == 1);
  CHECK(r.summary.at("vacuum_propagation") == true);
}

TEST_CASE("speed-measurement in vacuum flags itself instead of fitting") {
  ScenarioConfig c = parse_config(R"({
    "scenario": "speed-measurement",
    "grid": {"tau_min": 0.0, "tau_max": 10.0, "n_tau": 201,
             "zeta_min": 0.0, "zeta_max": 0.5, "n_zeta": 6},
    "medium": {"g": 0.0},
    "theta": {"family": "gaussian-bump", "amplitude": 0.5, "width": 1.0,
              "center": 5.0}
  })");
  ScenarioResult r = run_scenario(c);
  CHECK(r.summary.at("vacuum_propagation") == true);
  CHECK_FALSE(r.summary.contains("measured_speed"));
}

TEST_CASE("adiabaton-propagation summary and output files") {
  ScenarioConfig c = parse_config(R"({
    "scenario": "adiabaton-propagation",
    "grid": {"tau_min": 0.0, "tau_max": 40.0, "n_tau": 801,
             "zeta_min": 0.0, "zeta_max": 0.5, "n_zeta": 26},
    "medium": {"g": 30.0},
    "envelope": {"family": "constant", "amplitude": 1.0},
    "theta": {"family": "tanh-kink", "amplitude": 1.5707963267948966,
              "width": 0.5, "center": 0.25},
    "output_dir": "scenario_out_a"
  })");
  ScenarioResult r = run_scenario(c);
  REQUIRE(r.has_record);

  for (const char* key :
       {"norm_drift_max", "dark_state_fidelity_min", "max_psi_e_sq_measured",
        "max_psi_e_sq_predicted", "field_deviation_l2_rel",
        "conservation_residual", "adiabaticity_ratio", "envelope_family",
        "theta_family", "seed"})
    CHECK_MESSAGE(r.summary.contains(key), key);
  CHECK(r.summary.at("field_deviation_l2_rel").get<double>() <= 0.05);
  CHECK(r.summary.at("norm_drift_max").get<double>() <= 1e-8);
  CHECK(r.summary.at("envelope_family") == "constant");
  CHECK(r.summary.at("theta_family") == "tanh-kink");

  write_outputs(r, c);
  namespace fs = std::filesystem;
  for (const char* f : {"fields.csv", "atoms.csv", "diagnostics.csv",
                        "summary.json"})
    CHECK(fs::exists(fs::path(c.output_dir) / f));

  SUBCASE("summary.json parses back to the in-memory summary") {
    json loaded = json::parse(slurp(fs::path(c.output_dir) / "summary.json"));
    CHECK(loaded == r.summary);
  }

  SUBCASE("field history round-trips at full precision") {
    std::ifstream in(fs::path(c.output_dir) / "fields.csv");
    std::string line;
    std::getline(in, line); // header
    CHECK(line ==
          "tau,zeta,re_omega_plus,im_omega_plus,re_omega_minus,im_omega_minus");
    const SimulationGrid& grid = r.record.grid;
    for (int j = 0; j < grid.n_zeta; ++j)
      for (int i = 0; i < grid.n_tau; ++i) {
        REQUIRE(std::getline(in, line));
        double v[6];
        const char* p = line.c_str();
        for (double& vi : v) {
          char* end = nullptr;
          vi = std::strtod(p, &end);
          REQUIRE(end != p);
          p = (*end == ',') ? end + 1 : end;
        }
        CHECK(v[0] == grid.tau(i));
        CHECK(v[1] == grid.zeta(j));
        CHECK(v[2] == r.record.field_plus(i, j).real());
        CHECK(v[3] == r.record.field_plus(i, j).imag());
        CHECK(v[4] == r.record.field_minus(i, j).real());
        CHECK(v[5] == r.record.field_minus(i, j).imag());
      }
    CHECK_FALSE(std::getline(in, line));
  }

  SUBCASE("repeated runs are byte-identical") {
    ScenarioConfig c2 = c;
    c2.output_dir = "scenario_out_b";
    ScenarioResult r2 = run_scenario(c2);
    write_outputs(r2, c2);
    for (const char* f : {"fields.csv", "atoms.csv", "diagnostics.csv",
                          "summary.json"})
      CHECK(slurp(fs::path(c.output_dir) / f) ==
            slurp(fs::path(c2.output_dir) / f));
  }
}

TEST_CASE("lz-scan summary lists crossings with tunneling data") {
  ScenarioConfig c = parse_config(R"({
    "scenario": "lz-scan",
    "medium": {"g": 50.0},
    "envelope": {"family": "lorentzian-hump", "amplitude": 1.0, "width": 1.0},
    "theta": {"family": "tanh-kink", "amplitude": 1.5707963267948966,
              "width": 0.5, "center": 0.0},
    "strip": {"re_min": -1.0, "re_max": 1.0, "im_max": 2.0,
              "n_re": 48, "n_im": 12}
  })");
  ScenarioResult r = run_scenario(c);
  CHECK_FALSE(r.has_record);
  const json& list = r.summary.at("crossings");
  REQUIRE(list.size() == 2);
  const double pi4 = 3.14159265358979323846 / 4.0;
  for (const json& e : list) {
    CHECK(std::abs(std::abs(e.at("im").get<double>()) - 1.0) <= 1e-8);
    CHECK(std::abs(e.at("exponent").get<double>() - pi4) <= 1e-6);
  }
  const json& imm = r.summary.at("immunity");
  CHECK(imm.at("max_identity_deviation").get<double>() <= 1e-10);
  CHECK(imm.at("envelope_crossing_count") == 2);
  CHECK(imm.at("assembled_crossing_count") == 2);
}

TEST_CASE("loss block feeds a rate estimate into the summary") {
  std::string text = std::string(kSmallRabi);
  text.insert(text.rfind('}'),
              R"(, "loss": {"wavelength": 1.0, "density_param": 1.0,
                  "pulse_scale": 100.0, "propagation_length": 100.0})");
  ScenarioConfig c = parse_config(text);
  ScenarioResult r = run_scenario(c);
  CHECK(r.summary.at("loss_rate_estimate").get<double>() ==
        doctest::Approx(0.32 * 3.14159265358979323846).epsilon(1e-12));
}
