#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gfhull/config.hpp"
#include "gfhull/records.hpp"

// Replicated Monte Carlo runners.  Every runner is a pure function of
// (config, master seed): replicates fill pre-indexed slots, so results are
// byte-identical at any worker count.
//
// Summary scalar vocabulary (band targets):
//   converge    median_rho_final, median_rho_at_<n>, rho_strictly_decreasing,
//               containment_fraction_final
//   continuous  median_rho_final, sigma_h_strictly_decreasing,
//               mesh_frac_ok_h<i> (coarse to fine, 1-based, reference mesh
//               excluded; fraction of replicates with mesh discrepancy
//               <= 1.25 * sigma(h)), rho_mesh_refine_max_increase
//   maxima      median_z_final, iqr_z_final, median_z_at_<n>
//   bounds      median_z, frac_in_proven_band, frac_in_conjecture_band
//   moments     mean_f_final, se_f_final, mean_f_pow_m_final, target_f,
//               target_f_pow_m, exp_moment_mean_max, exp_moment_saturating,
//               exp_moment_mean_at_<n>

namespace gfhull::experiments {

std::vector<records::ExperimentRecord> convergence_run(const cfg::RunConfig& config);
std::vector<records::ExperimentRecord> continuous_run(const cfg::RunConfig& config);
std::vector<records::MaximaEstimate> maxima_law_run(const cfg::RunConfig& config);
std::vector<records::ExperimentRecord> slepian_bounds_run(const cfg::RunConfig& config);
std::vector<records::ExperimentRecord> functional_moments_run(const cfg::RunConfig& config);

// Dispatch on config.experiment; maxima estimates are converted to records.
std::vector<records::ExperimentRecord> run_experiment(const cfg::RunConfig& config);

struct Summary {
  std::vector<std::pair<std::string, double>> scalars;

  bool has(const std::string& name) const;
  double scalar(const std::string& name) const;  // throws if missing
  void put(const std::string& name, double value);
};

Summary summarize(const cfg::RunConfig& config,
                  const std::vector<records::ExperimentRecord>& recs);

struct BandVerdict {
  cfg::Band band;
  double value = 0.0;
  bool known = false;
  bool pass = false;
};

std::vector<BandVerdict> check_bands(const cfg::RunConfig& config, const Summary& summary);

// Factor applied to sigma(h) in the mesh-discrepancy pass fraction
// (finite-n slack on the limsup bound).
inline constexpr double kMeshSlack = 1.25;

// Runs fn(0..n_tasks-1) on a small worker pool; exceptions propagate.
void parallel_for(int n_tasks, int workers, const std::function<void(int)>& fn);

}  // namespace gfhull::experiments
