#ifndef FLUXSTAB_HARNESS_EXPERIMENTS_HPP_
#define FLUXSTAB_HARNESS_EXPERIMENTS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fluxstab/harness/config.hpp"
#include "fluxstab/harness/output.hpp"

namespace fluxstab::harness {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ExperimentResult {
  Table table;
  std::optional<PlotSpec> plot;
  std::vector<Check> checks;
  std::vector<std::string> summary;  // lines for the terminal
};

struct RunContext {
  std::uint64_t seed = 1;
  unsigned jobs = 1;
};

/// riemann, evolve, hatd, hatd-lin, tmain, pgeneral, linfty, oleinik-tv,
/// rexp, classical-limit, lerrest.
const std::vector<std::string>& experiment_kinds();

/// Runs one experiment. Checks requested with `expect.<column> = lo,hi`
/// are appended to the built-in ones. Throws ConfigError on bad input.
ExperimentResult run_experiment(const std::string& kind, const Config& cfg, const RunContext& ctx);

enum ExitCode : int { kOk = 0, kAcceptanceFailure = 1, kConfigError = 2, kNumericalAbort = 3 };

struct RunOptions {
  std::string out_dir = "out";
  RunContext ctx;
  bool write_svg = true;
};

/// Runs the experiment, writes `<out>/<kind>.csv` (and `.svg`), prints the
/// summary and one PASS/FAIL line per check to `log`, and returns the exit
/// code. Nothing is written when the config or the run fails.
int run(const std::string& kind, Config cfg, const RunOptions& opt, std::ostream& log);

}  // namespace fluxstab::harness

#endif  // FLUXSTAB_HARNESS_EXPERIMENTS_HPP_
