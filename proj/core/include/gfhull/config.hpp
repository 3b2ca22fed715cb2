#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gfhull/functionals.hpp"
#include "gfhull/gaussian.hpp"
#include "gfhull/regions.hpp"

// Experiment configuration files.
//
// Format: INI-style sections with whitespace-separated list values and '#'
// comments.  Parsing is strict (unknown sections or keys are errors) and
// reports every validation problem, not just the first.
//
//   [kernel]   kind, lambda, rho, r
//   [cross]    dim, sigma (d*d reals, row-major)
//   [region]   shape, m, mode, index_list, mesh_list, box_rates
//   [run]      experiment, replicates, seed (required), directions, workers,
//              out_dir, polylines, containment_delta, cond3_eps,
//              cond3_max_ratio, sequence_length, functional, functional_theta,
//              moment_order, exp_coeff, mc_volume_samples, band.<name>
//
// band.<name> = <lo> <hi> declares an acceptance band on a summary scalar;
// the run exits nonzero if any declared band fails.

namespace gfhull::cfg {

struct Band {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
};

struct RunConfig {
  std::string experiment;  // converge | continuous | maxima | bounds | moments

  gaussian::CorrelationKernel kernel;
  gaussian::CrossCovariance cross;

  regions::RegionSequence region;
  bool has_region = false;
  std::vector<double> mesh_list;  // continuous mode, strictly decreasing

  int replicates = 20;
  std::uint64_t master_seed = 0;
  int directions = 0;  // 0 = dimension default (720 for d<=2, 2048 above)
  int workers = 1;
  std::string out_dir = "out";
  bool polylines = false;

  double containment_delta = 0.05;  // converge
  double cond3_eps = 1.0;           // continuous
  double cond3_max_ratio = 0.75;    // continuous
  long long sequence_length = 10000;  // bounds

  geo::FunctionalKind functional = geo::FunctionalKind::diameter;  // moments
  std::vector<double> functional_theta;
  int moment_order = 1;
  double exp_coeff = 0.1;
  int mc_volume_samples = 20000;

  std::vector<Band> bands;

  int direction_count() const {
    if (directions > 0) return directions;
    return cross.dim() <= 2 ? 720 : 2048;
  }
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

// Resolved configuration in the file schema, suitable for summaries and for
// reproducing the run.
std::string render_config(const RunConfig& config);

}  // namespace gfhull::cfg
