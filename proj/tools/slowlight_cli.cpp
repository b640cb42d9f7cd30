#include "slowlight/scenario.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

int run_command(const std::string& config_path, const std::string& out_override,
                long seed_override, double resolution_scale) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot open config file: " << config_path << "\n";
    return 2;
  }
  std::stringstream ss;
  ss << in.rdbuf();

  slowlight::ScenarioConfig config;
  try {
    config = slowlight::parse_config(ss.str());
  } catch (const slowlight::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  if (!out_override.empty()) config.output_dir = out_override;
  if (seed_override >= 0) config.seed = static_cast<unsigned long>(seed_override);
  if (resolution_scale != 1.0) {
    config.grid.n_tau =
        std::max(2, static_cast<int>(std::lround(config.grid.n_tau * resolution_scale)));
    config.grid.n_zeta =
        std::max(2, static_cast<int>(std::lround(config.grid.n_zeta * resolution_scale)));
  }

  try {
    slowlight::ScenarioResult result = slowlight::run_scenario(config);
    slowlight::write_outputs(result, config);
    std::cout << result.summary.dump(2) << "\n";
  } catch (const slowlight::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    std::filesystem::create_directories(config.output_dir);
    std::ofstream(std::filesystem::path(config.output_dir) / "PARTIAL_OUTPUT")
        << e.what() << "\n";
    return 3;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maxwell-Schroedinger simulator for slow light in Lambda media"};

  bool print_defaults = false;
  app.add_flag("--print-defaults", print_defaults,
               "print the default config document and exit");

  std::string config_path, out_dir;
  long seed = -1;
  double resolution_scale = 1.0;
  CLI::App* run = app.add_subcommand("run", "execute a scenario config");
  run->add_option("config", config_path, "path to JSON config")->required();
  run->add_option("--out", out_dir, "output directory override");
  run->add_option("--seed", seed, "random seed override");
  run->add_option("--resolution-scale", resolution_scale,
                  "multiply n_tau and n_zeta (convergence studies)");

  CLI11_PARSE(app, argc, argv);

  if (print_defaults) {
    std::cout << slowlight::default_config_json().dump(2) << "\n";
    return 0;
  }
  if (!run->parsed()) {
    std::cout << app.help();
    return 0;
  }
  return run_command(config_path, out_dir, seed, resolution_scale);
}
