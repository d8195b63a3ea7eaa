#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "fluxstab/harness/config.hpp"
#include "fluxstab/harness/descriptors.hpp"
#include "fluxstab/harness/experiments.hpp"

namespace fh = fluxstab::harness;

int main(int argc, char** argv) {
  CLI::App app{"fluxstab: flux-stability experiments for 1D conservation laws"};
  app.require_subcommand(0, 1);
  bool list = false;
  app.add_flag("--list", list, "List built-in fluxes, data and experiment kinds");

  std::string config_path;
  std::vector<std::string> assignments;
  fh::RunOptions opt;
  bool no_svg = false;

  for (const auto& kind : fh::experiment_kinds()) {
    CLI::App* sub = app.add_subcommand(kind, "Run the " + kind + " experiment");
    sub->add_option("--config", config_path, "Config file")->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out_dir, "Output directory")->capture_default_str();
    sub->add_option("--seed", opt.ctx.seed, "Seed for randomized sampling")->capture_default_str();
    sub->add_option("--jobs", opt.ctx.jobs, "Worker threads for sweeps")
        ->check(CLI::Range(1u, 256u))
        ->capture_default_str();
    sub->add_flag("--no-svg", no_svg, "Skip the SVG plot");
    sub->add_option("assignments", assignments, "key=value overrides");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fh::kConfigError;
  }

  if (list) {
    for (const auto& line : fh::builtin_catalogue()) std::cout << line << '\n';
    std::cout << "experiments:";
    for (const auto& k : fh::experiment_kinds()) std::cout << ' ' << k;
    std::cout << '\n';
    return 0;
  }
  const auto subs = app.get_subcommands();
  if (subs.empty()) {
    std::cerr << app.help();
    return fh::kConfigError;
  }
  const std::string kind = subs.front()->get_name();

  fh::Config cfg;
  try {
    if (!config_path.empty()) cfg = fh::Config::parse_file(config_path);
    for (const auto& a : assignments) cfg.set_assignment(a);
  } catch (const fh::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return fh::kConfigError;
  }
  opt.write_svg = !no_svg;
  return fh::run(kind, cfg, opt, std::cout);
}
