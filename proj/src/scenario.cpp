#include "slowlight/scenario.hpp"

#include "slowlight/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

namespace slowlight {

using nlohmann::json;

namespace {

const std::map<std::string, EnvelopeFamily>& envelope_families() {
  static const std::map<std::string, EnvelopeFamily> m = {
      {"constant", EnvelopeFamily::Constant},
      {"gaussian-dip", EnvelopeFamily::GaussianDip},
      {"tanh-ramp", EnvelopeFamily::TanhRamp},
      {"lorentzian-hump", EnvelopeFamily::LorentzianHump},
      {"quartic-hump", EnvelopeFamily::QuarticHump},
      {"raised-cosine-gate", EnvelopeFamily::RaisedCosineGate}};
  return m;
}

const std::map<std::string, ShapeFamily>& shape_families() {
  static const std::map<std::string, ShapeFamily> m = {
      {"constant", ShapeFamily::Constant},
      {"tanh-kink", ShapeFamily::TanhKink},
      {"gaussian-bump", ShapeFamily::GaussianBump},
      {"linear", ShapeFamily::Linear},
      {"atan-tanh", ShapeFamily::AtanTanh}};
  return m;
}

const char* envelope_family_name(EnvelopeFamily f) {
  for (const auto& [k, v] : envelope_families())
    if (v == f) return k.c_str();
  return "?";
}

const char* shape_family_name(ShapeFamily f) {
  for (const auto& [k, v] : shape_families())
    if (v == f) return k.c_str();
  return "?";
}

double get_num(const json& j, const std::string& block, const char* key,
               double def) {
  if (!j.contains(key)) return def;
  if (!j.at(key).is_number())
    throw ConfigError(block + "." + key + " must be a number");
  return j.at(key).get<double>();
}

int get_int(const json& j, const std::string& block, const char* key, int def) {
  if (!j.contains(key)) return def;
  if (!j.at(key).is_number_integer())
    throw ConfigError(block + "." + key + " must be an integer");
  return j.at(key).get<int>();
}

EnvelopeSpec parse_envelope(const json& j) {
  EnvelopeSpec e;
  if (j.contains("family")) {
    const std::string name = j.at("family").get<std::string>();
    auto it = envelope_families().find(name);
    if (it == envelope_families().end())
      throw ConfigError("unknown envelope family '" + name + "'");
    e.family = it->second;
  }
  e.amplitude = get_num(j, "envelope", "amplitude", e.amplitude);
  e.width = get_num(j, "envelope", "width", e.width);
  e.center = get_num(j, "envelope", "center", e.center);
  e.level = get_num(j, "envelope", "level", e.level);
  e.edge = get_num(j, "envelope", "edge", e.edge);
  return e;
}

ShapeSpec parse_shape(const json& j, const std::string& block) {
  ShapeSpec s;
  if (j.contains("family")) {
    const std::string name = j.at("family").get<std::string>();
    auto it = shape_families().find(name);
    if (it == shape_families().end())
      throw ConfigError("unknown " + block + " family '" + name + "'");
    s.family = it->second;
  }
  s.amplitude = get_num(j, block, "amplitude", s.amplitude);
  s.width = get_num(j, block, "width", s.width);
  s.center = get_num(j, block, "center", s.center);
  return s;
}

int line_of_byte(const std::string& text, size_t byte) {
  int line = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

constexpr double kPi = 3.14159265358979323846;

} // namespace

AdiabatonSpec ScenarioConfig::adiabaton() const {
  return {envelope, theta, phi, medium, tau_ref, xi_ref};
}

json default_config_json() {
  json j;
  j["scenario"] = "adiabaton-propagation";
  j["grid"] = {{"tau_min", 0.0}, {"tau_max", 200.0}, {"n_tau", 2000},
               {"zeta_min", 0.0}, {"zeta_max", 2.0}, {"n_zeta", 200}};
  j["medium"] = {{"g", 100.0}, {"gamma_e", 0.0}};
  j["envelope"] = {{"family", "constant"}, {"amplitude", 1.0}, {"width", 1.0},
                   {"center", 0.0}, {"level", 0.0}, {"edge", 0.25}};
  j["theta"] = {{"family", "tanh-kink"}, {"amplitude", 0.5 * kPi},
                {"width", 1.0}, {"center", 0.5}};
  j["phi"] = {{"family", "constant"}, {"amplitude", 0.0}, {"width", 1.0},
              {"center", 0.0}};
  j["tau_ref"] = 0.0;
  j["xi_ref"] = 0.0;
  j["output_dir"] = "out";
  j["seed"] = 0;
  j["write_histories"] = true;
  return j;
}

ScenarioConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error at line " +
                      std::to_string(line_of_byte(text, e.byte)) + ": " +
                      e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (!j.contains("scenario")) throw ConfigError("missing block 'scenario'");

  ScenarioConfig c;
  c.scenario = j.at("scenario").get<std::string>();
  static const char* known[] = {"adiabaton-propagation", "storage-retrieval",
                                "speed-measurement", "lz-scan", "rabi-check"};
  bool ok = false;
  for (const char* k : known) ok = ok || c.scenario == k;
  if (!ok) throw ConfigError("unknown scenario '" + c.scenario + "'");

  json defaults = default_config_json();
  auto block = [&](const char* name) -> json {
    if (!j.contains(name)) return defaults.at(name);
    if (!j.at(name).is_object())
      throw ConfigError(std::string("block '") + name + "' must be an object");
    return j.at(name);
  };

  const json jg = block("grid");
  c.grid.tau_min = get_num(jg, "grid", "tau_min", defaults["grid"]["tau_min"]);
  c.grid.tau_max = get_num(jg, "grid", "tau_max", defaults["grid"]["tau_max"]);
  c.grid.n_tau = get_int(jg, "grid", "n_tau", defaults["grid"]["n_tau"]);
  c.grid.zeta_min = get_num(jg, "grid", "zeta_min", defaults["grid"]["zeta_min"]);
  c.grid.zeta_max = get_num(jg, "grid", "zeta_max", defaults["grid"]["zeta_max"]);
  c.grid.n_zeta = get_int(jg, "grid", "n_zeta", defaults["grid"]["n_zeta"]);

  const json jm = block("medium");
  c.medium.g = get_num(jm, "medium", "g", defaults["medium"]["g"]);
  c.medium.gamma_e = get_num(jm, "medium", "gamma_e", 0.0);
  if (c.medium.g < 0.0) throw ConfigError("medium.g must be > 0");
  if (c.medium.gamma_e < 0.0) throw ConfigError("medium.gamma_e must be >= 0");

  c.envelope = parse_envelope(block("envelope"));
  c.theta = parse_shape(block("theta"), "theta");
  c.phi = parse_shape(block("phi"), "phi");

  if (j.contains("loss")) {
    const json jl = j.at("loss");
    LossParams l;
    l.wavelength = get_num(jl, "loss", "wavelength", l.wavelength);
    l.density_param = get_num(jl, "loss", "density_param", l.density_param);
    l.pulse_scale = get_num(jl, "loss", "pulse_scale", l.pulse_scale);
    l.propagation_length =
        get_num(jl, "loss", "propagation_length", l.propagation_length);
    c.loss = l;
  }

  if (j.contains("strip")) {
    const json js = j.at("strip");
    c.strip.re_min = get_num(js, "strip", "re_min", c.strip.re_min);
    c.strip.re_max = get_num(js, "strip", "re_max", c.strip.re_max);
    c.strip.im_max = get_num(js, "strip", "im_max", c.strip.im_max);
    c.strip.n_re = get_int(js, "strip", "n_re", c.strip.n_re);
    c.strip.n_im = get_int(js, "strip", "n_im", c.strip.n_im);
    c.strip_given = true;
  }

  c.tau_ref = j.contains("tau_ref") ? j.at("tau_ref").get<double>() : c.grid.tau_min;
  c.xi_ref = j.contains("xi_ref") ? j.at("xi_ref").get<double>() : c.grid.zeta_min;
  c.output_dir = j.value("output_dir", defaults["output_dir"].get<std::string>());
  c.seed = j.value("seed", 0ul);
  c.write_histories = j.value("write_histories", true);

  try {
    validate(c.grid);
    validate(c.envelope);
    validate(c.theta);
    validate(c.phi);
    if (c.loss) validate(*c.loss);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

namespace {

// (1/2g) * integral_{tau_ref}^{tau_i} Omega^2, accumulated per tau node so
// grid-wide analytic fields cost one pass instead of one quadrature each.
std::vector<double> accumulated_half_intensity(const AdiabatonSpec& spec,
                                               const SimulationGrid& grid) {
  std::vector<double> acc(grid.n_tau);
  const double inv2g = 1.0 / (2.0 * spec.medium.g);
  if (envelope_has_closed_antiderivative(spec.envelope)) {
    const double base =
        envelope_intensity_antiderivative(spec.envelope, spec.tau_ref).real();
    for (int i = 0; i < grid.n_tau; ++i)
      acc[i] =
          (envelope_intensity_antiderivative(spec.envelope, grid.tau(i)).real() -
           base) *
          inv2g;
    return acc;
  }
  auto inten = [&](cplx t) { return envelope_intensity(spec.envelope, t); };
  double running =
      integrate_segment(inten, cplx(spec.tau_ref), cplx(grid.tau(0)), 1e-13)
          .real();
  acc[0] = running * inv2g;
  for (int i = 1; i < grid.n_tau; ++i) {
    running +=
        integrate_segment(inten, cplx(grid.tau(i - 1)), cplx(grid.tau(i)), 1e-13)
            .real();
    acc[i] = running * inv2g;
  }
  return acc;
}

struct AnalyticComparison {
  double deviation_l2_rel = 0.0;
  double predicted_max_psi_e_sq = 0.0;
};

AnalyticComparison compare_with_analytic(const RunRecord& rec,
                                         const AdiabatonSpec& spec) {
  const SimulationGrid& grid = rec.grid;
  const std::vector<double> acc = accumulated_half_intensity(spec, grid);
  double num = 0.0, den = 0.0, pred = 0.0;
  for (int j = 0; j < grid.n_zeta; ++j) {
    const double zeta = grid.zeta(j);
    for (int i = 0; i < grid.n_tau; ++i) {
      const double tau = grid.tau(i);
      const double xi = zeta - acc[i];
      FieldPair a = assemble_ansatz(spec, xi, tau);
      num += std::norm(rec.field_plus(i, j) - a.omega_plus) +
             std::norm(rec.field_minus(i, j) - a.omega_minus);
      den += std::norm(a.omega_plus) + std::norm(a.omega_minus);
      pred = std::max(pred, excited_population_estimate(spec, xi, tau));
    }
  }
  AnalyticComparison out;
  out.deviation_l2_rel = den > 0.0 ? std::sqrt(num / den) : 0.0;
  out.predicted_max_psi_e_sq = pred;
  return out;
}

json crossing_to_json(const CrossingPoint& c) {
  return json{{"re", c.tau_c.real()},
              {"im", c.tau_c.imag()},
              {"multiplicity", c.multiplicity},
              {"residual", c.residual},
              {"degenerate", c.degenerate}};
}

RunRecord simulate(const ScenarioConfig& config, const BoundaryCondition& bc) {
  try {
    return run_simulation(config.grid, config.medium, bc);
  } catch (const std::runtime_error& e) {
    throw NumericalError(e.what());
  }
}

json run_adiabaton_like(const ScenarioConfig& config, ScenarioResult& result) {
  const AdiabatonSpec spec = config.adiabaton();
  result.record = simulate(config, adiabaton_boundary(spec, config.grid));
  result.has_record = true;
  json summary = emit_report(result.record, config);
  AnalyticComparison cmp = compare_with_analytic(result.record, spec);
  summary["field_deviation_l2_rel"] = cmp.deviation_l2_rel;
  summary["max_psi_e_sq_predicted"] = cmp.predicted_max_psi_e_sq;
  const double measured = summary["max_psi_e_sq_measured"].get<double>();
  if (cmp.predicted_max_psi_e_sq > 0.0)
    summary["psi_e_sq_ratio"] = measured / cmp.predicted_max_psi_e_sq;
  return summary;
}

json run_storage(const ScenarioConfig& config, ScenarioResult& result) {
  if (config.envelope.family != EnvelopeFamily::RaisedCosineGate ||
      config.envelope.level != 0.0)
    throw ConfigError(
        "storage-retrieval requires a raised-cosine-gate envelope with level 0");
  json summary = run_adiabaton_like(config, result);
  const RunRecord& rec = result.record;
  const SimulationGrid& grid = rec.grid;

  // Dark window: the interval where the gate is exactly closed.
  const double w_lo = config.envelope.center - 0.5 * config.envelope.width;
  const double w_hi = config.envelope.center + 0.5 * config.envelope.width;
  int i_lo = -1, i_hi = -1;
  for (int i = 0; i < grid.n_tau; ++i) {
    const double tau = grid.tau(i);
    if (tau >= w_lo && tau <= w_hi) {
      if (i_lo < 0) i_lo = i;
      i_hi = i;
    }
  }
  if (i_lo < 0 || i_hi <= i_lo)
    throw ConfigError("dark window lies outside the tau grid");

  double drift = 0.0;
  for (int j = 0; j < grid.n_zeta; ++j) {
    const AtomicState& a = rec.atom(i_lo, j);
    const AtomicState& b = rec.atom(i_hi, j);
    if (std::abs(a.psi_plus) > 1e-12 && std::abs(b.psi_plus) > 1e-12)
      drift = std::max(drift, std::abs(b.psi_minus / b.psi_plus -
                                       a.psi_minus / a.psi_plus));
  }
  summary["coherence_drift_max"] = drift;
  summary["dark_window"] = {{"tau_lo", w_lo}, {"tau_hi", w_hi}};

  // Retrieved polarization profile at the output slice vs the analytic
  // (shape-preserved) input profile, over the open-gate nodes.
  const AdiabatonSpec spec = config.adiabaton();
  const std::vector<double> acc = accumulated_half_intensity(spec, grid);
  const int j_out = grid.n_zeta - 1;
  double uv = 0.0, uu = 0.0, vv = 0.0;
  for (int i = 0; i < grid.n_tau; ++i) {
    const double tau = grid.tau(i);
    const double env = evaluate_envelope(config.envelope, tau).real();
    if (std::abs(env) < 0.5 * std::abs(config.envelope.amplitude)) continue;
    const double ip = std::norm(rec.field_plus(i, j_out));
    const double im = std::norm(rec.field_minus(i, j_out));
    if (ip + im <= 0.0) continue;
    const double u = im / (ip + im);
    const double theta =
        evaluate_shape(config.theta, grid.zeta(j_out) - acc[i]).real();
    const double v = std::sin(theta) * std::sin(theta);
    uv += u * v;
    uu += u * u;
    vv += v * v;
  }
  summary["retrieval_fidelity"] = (uu > 0.0 && vv > 0.0) ? uv * uv / (uu * vv) : 0.0;
  return summary;
}

json run_speed(const ScenarioConfig& config, ScenarioResult& result) {
  if (config.medium.g == 0.0) {
    // Vacuum: boundary polarization profile imprinted directly in tau.
    BoundaryCondition bc;
    const EnvelopeSpec env = config.envelope;
    const ShapeSpec theta = config.theta;
    bc.incoming_fields = [env, theta](double tau) {
      const double om = evaluate_envelope(env, tau).real();
      const double th = evaluate_shape(theta, tau).real();
      return std::make_pair(cplx(om * std::cos(th)), cplx(om * std::sin(th)));
    };
    result.record = simulate(config, bc);
    result.has_record = true;
    json summary = emit_report(result.record, config);
    summary["vacuum_propagation"] = true;
    return summary;
  }

  json summary = run_adiabaton_like(config, result);
  const RunRecord& rec = result.record;
  const SimulationGrid& grid = rec.grid;
  const double omega0 = config.envelope.amplitude;

  // Centroid of the minus-beam intensity fraction sin^2(Theta) per slice,
  // least-squares slope of centroid(tau) vs zeta.
  std::vector<double> zs, cs;
  for (int j = 0; j < grid.n_zeta; ++j) {
    double num = 0.0, den = 0.0;
    for (int i = 0; i < grid.n_tau; ++i) {
      const double ip = std::norm(rec.field_plus(i, j));
      const double im = std::norm(rec.field_minus(i, j));
      if (ip + im < 1e-12 * omega0 * omega0) continue;
      const double s = im / (ip + im);
      num += grid.tau(i) * s;
      den += s;
    }
    if (den > 0.0) {
      zs.push_back(grid.zeta(j));
      cs.push_back(num / den);
    }
  }
  if (zs.size() < 2) throw NumericalError("speed measurement: no usable slices");
  double mz = 0.0, mc = 0.0;
  for (size_t k = 0; k < zs.size(); ++k) {
    mz += zs[k];
    mc += cs[k];
  }
  mz /= zs.size();
  mc /= cs.size();
  double cov = 0.0, var = 0.0;
  for (size_t k = 0; k < zs.size(); ++k) {
    cov += (zs[k] - mz) * (cs[k] - mc);
    var += (zs[k] - mz) * (zs[k] - mz);
  }
  const double dtau_dzeta = cov / var;
  if (dtau_dzeta == 0.0) throw NumericalError("speed measurement: flat centroid");
  const double measured = 1.0 / dtau_dzeta;
  const double characteristic = omega0 * omega0 / (2.0 * config.medium.g);
  summary["measured_speed"] = measured;
  summary["speed_characteristic"] = characteristic;
  // Commonly quoted delay estimate without the factor 1/2 of the
  // characteristic; reported alongside for comparison.
  summary["speed_omega_sq_over_g"] = omega0 * omega0 / config.medium.g;
  summary["speed_relative_error"] =
      std::abs(measured - characteristic) / characteristic;
  return summary;
}

json run_lz_scan(const ScenarioConfig& config, ScenarioResult& result) {
  (void)result;
  SearchStrip strip = config.strip;
  if (!config.strip_given) {
    strip.re_min = config.envelope.center - 4.0 * config.envelope.width;
    strip.re_max = config.envelope.center + 4.0 * config.envelope.width;
    strip.im_max = 4.0 * config.envelope.width;
  }
  json summary;
  std::vector<CrossingPoint> crossings;
  try {
    crossings = locate_crossings(config.envelope, strip);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  json list = json::array();
  for (const CrossingPoint& c : crossings) {
    json entry = crossing_to_json(c);
    TunnelingResult t = lz_amplitude(config.envelope, c);
    entry["exponent"] = t.exponent;
    entry["amplitude_magnitude"] = t.amplitude_magnitude;
    list.push_back(entry);
  }
  summary["crossings"] = list;
  summary["strip"] = {{"re_min", strip.re_min},
                      {"re_max", strip.re_max},
                      {"im_max", strip.im_max}};
  if (crossings.empty()) summary["no_crossings_found"] = true;

  if (config.medium.g > 0.0) {
    ImmunityReport rep = crossing_immunity_check(config.adiabaton(), strip);
    summary["immunity"] = {
        {"max_identity_deviation", rep.max_identity_deviation},
        {"envelope_crossing_count", rep.envelope_crossings.size()},
        {"assembled_crossing_count", rep.assembled_crossings.size()},
        {"all_real_crossings_degenerate", rep.all_real_crossings_degenerate}};
  }
  return summary;
}

json run_rabi_check(const ScenarioConfig& config, ScenarioResult& result) {
  ScenarioConfig c = config;
  c.medium.g = 0.0; // the closed-form oracle assumes zeta-independent fields
  const double omega0 = config.envelope.amplitude;
  BoundaryCondition bc;
  bc.incoming_fields = [omega0](double) {
    return std::make_pair(cplx(omega0), cplx(0.0));
  };
  bc.initial_atoms = [](double) { return AtomicState{1.0, 0.0, 0.0}; };
  result.record = simulate(c, bc);
  result.has_record = true;

  const RunRecord& rec = result.record;
  double max_dev = 0.0;
  for (int i = 0; i < rec.grid.n_tau; ++i) {
    const double phase = 0.5 * omega0 * (rec.grid.tau(i) - rec.grid.tau_min);
    const AtomicState& a = rec.atom(i, 0);
    max_dev = std::max(max_dev, std::abs(a.psi_plus - std::cos(phase)));
    max_dev = std::max(max_dev, std::abs(a.psi_minus));
    max_dev = std::max(max_dev, std::abs(a.psi_e - cplx(0.0, std::sin(phase))));
  }
  json summary = emit_report(rec, c);
  summary["max_rabi_deviation"] = max_dev;
  return summary;
}

} // namespace

json emit_report(const RunRecord& rec, const ScenarioConfig& config) {
  json r;
  double drift = 0.0, fid = 1.0, psi_e_sq = 0.0;
  for (const SliceDiagnostics& d : rec.diagnostics) {
    drift = std::max(drift, d.norm_drift);
    fid = std::min(fid, d.min_fidelity);
    psi_e_sq = std::max(psi_e_sq, d.max_psi_e_sq);
  }
  r["norm_drift_max"] = drift;
  r["dark_state_fidelity_min"] = fid;
  r["max_psi_e_sq_measured"] = psi_e_sq;
  if (config.medium.gamma_e == 0.0)
    r["conservation_residual"] =
        excitation_conservation_residual(rec, config.medium.g);
  if (config.medium.g > 0.0) {
    const double a = config.theta.width;
    r["adiabaticity_ratio"] = config.envelope.amplitude *
                              config.envelope.amplitude /
                              (config.medium.g * config.medium.g * a * a);
  } else {
    r["vacuum_propagation"] = true;
  }
  if (config.loss) r["loss_rate_estimate"] = loss_rate(*config.loss);
  return r;
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  ScenarioResult result;
  json summary;
  if (config.scenario == "adiabaton-propagation")
    summary = run_adiabaton_like(config, result);
  else if (config.scenario == "storage-retrieval")
    summary = run_storage(config, result);
  else if (config.scenario == "speed-measurement")
    summary = run_speed(config, result);
  else if (config.scenario == "lz-scan")
    summary = run_lz_scan(config, result);
  else if (config.scenario == "rabi-check")
    summary = run_rabi_check(config, result);
  else
    throw ConfigError("unknown scenario '" + config.scenario + "'");

  summary["schema_version"] = 1;
  summary["scenario"] = config.scenario;
  summary["seed"] = config.seed;
  summary["envelope_family"] = envelope_family_name(config.envelope.family);
  summary["theta_family"] = shape_family_name(config.theta.family);
  result.summary = summary;
  return result;
}

namespace {

void append_num(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

} // namespace

void write_outputs(const ScenarioResult& result, const ScenarioConfig& config) {
  namespace fs = std::filesystem;
  fs::create_directories(config.output_dir);

  if (result.has_record && config.write_histories) {
    const RunRecord& rec = result.record;
    const SimulationGrid& grid = rec.grid;

    std::string fields = "tau,zeta,re_omega_plus,im_omega_plus,re_omega_minus,"
                         "im_omega_minus\n";
    std::string atoms = "tau,zeta,re_psi_plus,im_psi_plus,re_psi_minus,"
                        "im_psi_minus,re_psi_e,im_psi_e\n";
    for (int j = 0; j < grid.n_zeta; ++j) {
      for (int i = 0; i < grid.n_tau; ++i) {
        const double tau = grid.tau(i), zeta = grid.zeta(j);
        append_num(fields, tau);
        fields += ',';
        append_num(fields, zeta);
        for (cplx v : {rec.field_plus(i, j), rec.field_minus(i, j)}) {
          fields += ',';
          append_num(fields, v.real());
          fields += ',';
          append_num(fields, v.imag());
        }
        fields += '\n';
        append_num(atoms, tau);
        atoms += ',';
        append_num(atoms, zeta);
        const AtomicState& a = rec.atom(i, j);
        for (cplx v : {a.psi_plus, a.psi_minus, a.psi_e}) {
          atoms += ',';
          append_num(atoms, v.real());
          atoms += ',';
          append_num(atoms, v.imag());
        }
        atoms += '\n';
      }
    }
    std::ofstream(fs::path(config.output_dir) / "fields.csv") << fields;
    std::ofstream(fs::path(config.output_dir) / "atoms.csv") << atoms;

    std::string diag = "zeta,norm_drift,min_fidelity,max_psi_e_sq\n";
    for (const SliceDiagnostics& d : rec.diagnostics) {
      append_num(diag, d.zeta);
      diag += ',';
      append_num(diag, d.norm_drift);
      diag += ',';
      append_num(diag, d.min_fidelity);
      diag += ',';
      append_num(diag, d.max_psi_e_sq);
      diag += '\n';
    }
    std::ofstream(fs::path(config.output_dir) / "diagnostics.csv") << diag;
  }

  std::ofstream(fs::path(config.output_dir) / "summary.json")
      << result.summary.dump(2) << "\n";
}

} // namespace slowlight
