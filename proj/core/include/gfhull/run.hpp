#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "gfhull/config.hpp"

// Experiment dispatch and artifact writing for the command-line tool.
//
// Subcommands: converge, continuous, maxima, bounds, moments (must match the
// config's experiment kind), plus validate (checks only, no simulation) and
// hull-demo (one replicate, prints hull statistics, writes 2D polylines).
//
// Artifacts in out_dir: records.csv (one row per record), summary.txt
// (resolved config, tool version, master seed, per-n aggregates, band
// verdicts) and, when polylines = true and d = 2, hull_n<N>_rep0.csv plus
// ellipsoid.csv (one "x,y" vertex per line).
//
// Exit status: 0 iff every declared band passes (and checks succeed);
// 1 band failure, 2 configuration/usage error, 3 I/O error.

namespace gfhull::cli {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> out_dir;
  std::optional<int> directions;
};

void apply_overrides(cfg::RunConfig& config, const Overrides& overrides);

int run_command(const std::string& subcommand, cfg::RunConfig config, std::ostream& log);

// Parses the config file, applies overrides, dispatches.  Parse errors are
// reported (all of them) on the log stream.
int run_from_path(const std::string& subcommand, const std::string& config_path,
                  const Overrides& overrides, std::ostream& log);

}  // namespace gfhull::cli
