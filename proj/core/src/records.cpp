#include "gfhull/records.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace gfhull::records {
namespace {

const std::vector<std::string> kBase = {"experiment", "n",         "nu_n", "replicate",
                                        "seed",       "statistic", "value"};

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::vector<std::string> csv_columns(const std::string& kind) {
  std::vector<std::string> cols = kBase;
  if (kind == "converge") {
    cols.push_back("theta_count");
  } else if (kind == "continuous") {
    cols.push_back("h");
    cols.push_back("theta_count");
  } else if (kind == "maxima") {
    cols.push_back("sigma_target");
  } else if (kind == "bounds") {
    cols.push_back("r");
    cols.push_back("sigma_target");
  } else if (kind == "moments") {
    cols.push_back("theta_count");
    cols.push_back("note");
  } else {
    throw std::invalid_argument("csv_columns: unknown experiment kind '" + kind + "'");
  }
  return cols;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_records_csv(std::ostream& os, const std::vector<ExperimentRecord>& recs) {
  if (recs.empty()) throw std::invalid_argument("write_records_csv: no records");
  const std::string kind = recs.front().experiment;
  const auto cols = csv_columns(kind);
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
  for (const auto& rec : recs) {
    if (rec.experiment != kind)
      throw std::invalid_argument("write_records_csv: mixed experiment kinds");
    if (!std::isfinite(rec.value))
      throw std::invalid_argument("write_records_csv: non-finite statistic " + rec.statistic);
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) os << ",";
      const auto& c = cols[i];
      if (c == "experiment") os << csv_escape(rec.experiment);
      else if (c == "n") os << rec.n;
      else if (c == "nu_n") os << format_double(rec.nu_n);
      else if (c == "replicate") os << rec.replicate;
      else if (c == "seed") os << rec.seed;
      else if (c == "statistic") os << csv_escape(rec.statistic);
      else if (c == "value") os << format_double(rec.value);
      else if (c == "h") os << format_double(rec.h);
      else if (c == "r") os << format_double(rec.r);
      else if (c == "sigma_target") os << format_double(rec.sigma_target);
      else if (c == "theta_count") os << rec.theta_count;
      else if (c == "note") os << csv_escape(rec.note);
    }
    os << "\n";
  }
}

std::vector<ExperimentRecord> to_records(const std::vector<MaximaEstimate>& est,
                                         const std::string& kind) {
  std::vector<ExperimentRecord> out;
  out.reserve(est.size());
  for (const auto& e : est) {
    ExperimentRecord rec;
    rec.experiment = kind;
    rec.n = e.n;
    rec.nu_n = e.nu_n;
    rec.replicate = e.replicate;
    rec.seed = e.seed;
    rec.statistic = "z_n";
    rec.value = e.z_n;
    rec.r = e.r;
    rec.sigma_target = e.sigma_target;
    out.push_back(std::move(rec));
  }
  return out;
}

double median(std::vector<double> v) { return quantile(std::move(v), 0.5); }

double quantile(std::vector<double> v, double q) {
  if (v.empty()) throw std::invalid_argument("quantile: empty sample");
  std::sort(v.begin(), v.end());
  const double pos = q * (static_cast<double>(v.size()) - 1.0);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] * (1.0 - frac) + v[hi] * frac;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("mean: empty sample");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double std_error(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s2 = 0.0;
  for (double x : v) s2 += (x - m) * (x - m);
  s2 /= static_cast<double>(v.size() - 1);
  return std::sqrt(s2 / static_cast<double>(v.size()));
}

}  // namespace gfhull::records
