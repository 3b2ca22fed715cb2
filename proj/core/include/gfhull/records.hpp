#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

// Tabular experiment output.  The statistic vocabulary is closed:
//
//   converge    rho_to_ellipsoid, support_overshoot, support_deficit,
//               contained_in_inflated
//   continuous  rho_to_ellipsoid, mesh_discrepancy, sigma_h, cover_ratio
//   maxima      z_n
//   bounds      z_n, bound_lower, bound_upper, conjecture_upper
//   moments     f_value, f_pow_m, exp_moment, target_f, target_f_pow_m
//
// Rows with replicate = -1 carry analytic (replicate-independent) values.
// The CSV column set depends only on the experiment kind.

namespace gfhull::records {

struct ExperimentRecord {
  std::string experiment;
  long long n = 0;
  double nu_n = 0.0;
  int replicate = 0;           // -1 for analytic rows
  std::uint64_t seed = 0;      // per-replicate derived key (0 for analytic)
  std::string statistic;
  double value = 0.0;

  // Auxiliary fields; which ones reach the CSV depends on the kind.
  double h = 0.0;
  double a = 0.0;
  double r = 0.0;
  double sigma_target = 0.0;
  int theta_count = 0;
  std::string note;
};

// Normalized maximum of a scalar field, eq.-(5) style.
struct MaximaEstimate {
  double z_n = 0.0;
  double sigma_target = 0.0;
  double r = 0.0;      // correlation level of the construction (0 when n/a)
  double phi_r = 1.0;  // sqrt(1-r) - sqrt(r)
  long long n = 0;
  double nu_n = 0.0;
  int replicate = 0;
  std::uint64_t seed = 0;
};

// Column names for a kind (stable order, header row of the CSV).
std::vector<std::string> csv_columns(const std::string& experiment_kind);

// RFC-4180-style CSV: header + one row per record, fields quoted only when
// needed.  All records must share one experiment kind.
void write_records_csv(std::ostream& os, const std::vector<ExperimentRecord>& recs);

std::string csv_escape(const std::string& field);

std::vector<ExperimentRecord> to_records(const std::vector<MaximaEstimate>& est,
                                         const std::string& experiment_kind);

// Order-independent aggregation helpers (inputs get sorted internally).
double median(std::vector<double> v);
double quantile(std::vector<double> v, double q);
double mean(const std::vector<double>& v);
double std_error(const std::vector<double>& v);

}  // namespace gfhull::records
