#pragma once

#include "slowlight/adiabaticity.hpp"
#include "slowlight/bloch.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace slowlight {

// Config error -> process exit code 2, numerical failure -> exit code 3.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
  std::string scenario; // adiabaton-propagation | storage-retrieval |
                        // speed-measurement | lz-scan | rabi-check
  SimulationGrid grid;
  MediumParams medium;
  EnvelopeSpec envelope;
  ShapeSpec theta;
  ShapeSpec phi;
  std::optional<LossParams> loss;
  SearchStrip strip;          // lz-scan search region
  bool strip_given = false;   // otherwise derived from the envelope
  double tau_ref = 0.0;       // defaults to grid.tau_min
  double xi_ref = 0.0;        // defaults to grid.zeta_min
  std::string output_dir = "out";
  unsigned long seed = 0;
  bool write_histories = true;

  AdiabatonSpec adiabaton() const;
};

/// Parse and fully validate a JSON config document.  Throws ConfigError with
/// a line-anchored message on syntax errors and a path-anchored message on
/// semantic errors.
ScenarioConfig parse_config(const std::string& text);

/// The defaults document echoed by --print-defaults.
nlohmann::json default_config_json();

struct ScenarioResult {
  nlohmann::json summary;
  RunRecord record;
  bool has_record = false;
};

/// Aggregated diagnostics for a completed run: drift maxima, conservation
/// residual, measured vs predicted excited population, adiabaticity ratio.
nlohmann::json emit_report(const RunRecord& record, const ScenarioConfig& config);

/// Execute the configured scenario in-process.  Throws NumericalError on
/// solver failure.
ScenarioResult run_scenario(const ScenarioConfig& config);

/// Write fields.csv / atoms.csv / diagnostics.csv (when a record exists and
/// write_histories is set) and summary.json into config.output_dir.
void write_outputs(const ScenarioResult& result, const ScenarioConfig& config);

} // namespace slowlight
