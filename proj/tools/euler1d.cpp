#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "euler1d/commands.hpp"

namespace {

void configure_logging() {
  spdlog::set_pattern("[%l] %v");
  if (const char* level = std::getenv("EULER1D_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  } else {
    spdlog::set_level(spdlog::level::warn);
  }
}

int report(const euler1d::CommandResult& r) {
  if (!r.message.empty()) (r.exit_code == euler1d::kExitFault ? std::cerr : std::cout) << r.message << '\n';
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();

  CLI::App app{"1D Lagrangian Euler simulator and diagnostics"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  int jobs = 1;
  std::string param;
  std::vector<std::string> values;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (defaults to output.dir)");
    sub->add_option("--override", overrides, "KEY=VALUE, repeatable");
  };

  auto* run = app.add_subcommand("run", "simulate, certify and write the full report");
  add_common(run);
  auto* certify = app.add_subcommand("certify", "simulate and certify both theorems");
  add_common(certify);
  auto* oracle = app.add_subcommand("oracle", "compare field gradients with the Riccati ODE");
  add_common(oracle);
  auto* sweep = app.add_subcommand("sweep", "run over a list of parameter values");
  add_common(sweep);
  sweep->add_option("--param", param, "config key to vary")->required();
  sweep->add_option("--values", values, "values (comma separated or repeated)")->required()->delimiter(',');
  sweep->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help is a success; every other argument error is a fault
    return app.exit(e) == 0 ? euler1d::kExitOk : euler1d::kExitFault;
  }

  try {
    if (sweep->parsed()) {
      auto doc = euler1d::read_json_file(config_path);
      for (const auto& o : overrides) euler1d::apply_override(doc, o);
      const auto base = euler1d::parse_config(doc);
      return report(euler1d::cmd_sweep(doc, param, values, out_dir.empty() ? base.out_dir : out_dir, jobs));
    }
    const auto config = euler1d::load_config(config_path, overrides);
    const std::string dir = out_dir.empty() ? config.out_dir : out_dir;
    if (run->parsed()) return report(euler1d::cmd_run(config, dir));
    if (certify->parsed()) return report(euler1d::cmd_certify(config, dir));
    return report(euler1d::cmd_oracle(config, dir));
  } catch (const euler1d::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
  }
  return euler1d::kExitFault;
}
