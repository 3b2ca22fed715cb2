#include "gfhull/run.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "gfhull/experiments.hpp"
#include "gfhull/functionals.hpp"
#include "gfhull/gaussian.hpp"
#include "gfhull/records.hpp"
#include "gfhull/version.hpp"

namespace gfhull::cli {
namespace {

namespace fs = std::filesystem;

const char* kRunnerSubcommands[] = {"converge", "continuous", "maxima", "bounds", "moments"};

bool is_runner(const std::string& sub) {
  for (const char* s : kRunnerSubcommands) {
    if (sub == s) return true;
  }
  return false;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void write_polyline(const fs::path& path, const geo::Mat& verts) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.precision(17);
  for (Eigen::Index j = 0; j < verts.cols(); ++j)
    out << verts(0, j) << "," << verts(1, j) << "\n";
}

// Re-derives replicate 0's scaled hull per n for plotting.
void export_polylines(const cfg::RunConfig& config, const fs::path& dir, std::ostream& log) {
  if (config.cross.dim() != 2 || !config.has_region) return;
  const double mesh = config.mesh_list.empty() ? 1.0 : config.mesh_list.back();
  for (long long n : config.region.index_set) {
    const auto lattice = regions::lattice_sites(config.region, n, mesh);
    const double b = regions::b_normalizer(lattice.nu);
    const gaussian::FieldSampler sampler(config.kernel, config.cross, lattice.sites);
    const geo::ConvexBody hull = geo::convex_hull(sampler.sample(config.master_seed, 0));
    write_polyline(dir / ("hull_n" + std::to_string(n) + "_rep0.csv"),
                   geo::Mat(hull.vertices() / b));
  }
  const auto ellipsoid = gaussian::concentration_ellipsoid(config.cross);
  write_polyline(dir / "ellipsoid.csv",
                 geo::ellipsoid_to_body(ellipsoid, config.direction_count()).vertices());
  log << "polylines written to " << dir.string() << "\n";
}

void print_summary_file(std::ostream& os, const std::string& subcommand,
                        const cfg::RunConfig& config, const experiments::Summary& summary,
                        const std::vector<experiments::BandVerdict>& verdicts, bool all_pass) {
  os << "# gfhull summary\n";
  os << "version = " << kVersion << "\n";
  os << "subcommand = " << subcommand << "\n";
  os << "master_seed = " << config.master_seed << "\n";
  os << "\n[resolved_config]\n" << cfg::render_config(config) << "\n";
  os << "[summary]\n";
  for (const auto& [name, value] : summary.scalars) os << name << " = " << fmt(value) << "\n";
  os << "\n[bands]\n";
  if (verdicts.empty()) os << "(none declared)\n";
  for (const auto& v : verdicts) {
    os << v.band.name << ": ";
    if (!v.known) {
      os << "UNKNOWN summary scalar -> FAIL\n";
      continue;
    }
    os << fmt(v.value) << " in [" << fmt(v.band.lo) << ", " << fmt(v.band.hi) << "] -> "
       << (v.pass ? "PASS" : "FAIL") << "\n";
  }
  os << "\nresult = " << (all_pass ? "PASS" : "FAIL") << "\n";
}

int run_validate(const cfg::RunConfig& config, std::ostream& log) {
  log << "resolved configuration:\n" << cfg::render_config(config) << "\n";
  bool ok = true;

  const bool needs_decay = config.experiment != "bounds";
  if (needs_decay && !config.kernel.decaying()) {
    log << "FAIL kernel-decay: '" << config.kernel.id()
        << "' has non-vanishing covariances at large lags\n";
    ok = false;
  } else {
    log << "ok   kernel-decay: " << config.kernel.id() << "\n";
  }

  if (config.has_region && config.region.mode == regions::Mode::continuous) {
    for (long long n : config.region.index_set) {
      const double ratio = regions::boundary_ratio(config.region, n, config.cond3_eps);
      const bool pass = ratio <= config.cond3_max_ratio;
      log << (pass ? "ok  " : "FAIL") << " boundary-thinness: n=" << n << " eps="
          << config.cond3_eps << " ratio=" << fmt(ratio) << " (max " << config.cond3_max_ratio
          << ")\n";
      if (!pass) ok = false;
    }
  }
  log << "validate: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

int run_hull_demo(const cfg::RunConfig& config, std::ostream& log) {
  if (!config.has_region) {
    log << "hull-demo needs a [region] section\n";
    return 2;
  }
  const long long n = config.region.index_set.back();
  const double mesh = config.mesh_list.empty() ? 1.0 : config.mesh_list.back();
  const auto lattice = regions::lattice_sites(config.region, n, mesh);
  const double b = regions::b_normalizer(lattice.nu);
  const gaussian::FieldSampler sampler(config.kernel, config.cross, lattice.sites);
  const geo::ConvexBody hull = geo::convex_hull(sampler.sample(config.master_seed, 0));
  const auto ellipsoid = gaussian::concentration_ellipsoid(config.cross);
  const geo::Mat dirs = geo::default_directions(config.cross.dim(), config.direction_count());

  log << "sites = " << lattice.sites.count() << ", nu_n = " << fmt(lattice.nu)
      << ", b(nu_n) = " << fmt(b) << "\n";
  log << "hull vertices = " << hull.vertex_count() << "\n";
  log << "diameter(W_n)/b = " << fmt(geo::diameter(hull) / b) << " (ellipsoid "
      << fmt(geo::HomogeneousFunctional::make_diameter().value_on(ellipsoid)) << ")\n";
  if (config.cross.dim() <= 3) {
    log << "volume(W_n)/b^d = "
        << fmt(geo::volume(hull) / std::pow(b, config.cross.dim())) << " (ellipsoid "
        << fmt(geo::HomogeneousFunctional::make_volume(config.cross.dim()).value_on(ellipsoid))
        << ")\n";
  }
  const geo::ConvexBody scaled = geo::scale(hull, 1.0 / b);
  log << "rho(W_n/b, E) = " << fmt(geo::hausdorff_support(scaled, ellipsoid, dirs)) << "\n";

  if (config.polylines && config.cross.dim() == 2) {
    fs::create_directories(config.out_dir);
    write_polyline(fs::path(config.out_dir) / "hull_demo.csv", scaled.vertices());
    write_polyline(fs::path(config.out_dir) / "ellipsoid.csv",
                   geo::ellipsoid_to_body(ellipsoid, config.direction_count()).vertices());
    log << "polylines written to " << config.out_dir << "\n";
  }
  return 0;
}

}  // namespace

void apply_overrides(cfg::RunConfig& config, const Overrides& overrides) {
  if (overrides.seed) config.master_seed = *overrides.seed;
  if (overrides.workers) config.workers = *overrides.workers;
  if (overrides.out_dir) config.out_dir = *overrides.out_dir;
  if (overrides.directions) config.directions = *overrides.directions;
}

int run_command(const std::string& subcommand, cfg::RunConfig config, std::ostream& log) {
  try {
    if (subcommand == "validate") return run_validate(config, log);
    if (subcommand == "hull-demo") return run_hull_demo(config, log);
    if (!is_runner(subcommand)) {
      log << "unknown subcommand '" << subcommand << "'\n";
      return 2;
    }
    if (subcommand != config.experiment) {
      log << "subcommand '" << subcommand << "' does not match experiment '" << config.experiment
          << "' declared in the config\n";
      return 2;
    }

    const auto recs = experiments::run_experiment(config);
    const auto summary = experiments::summarize(config, recs);
    const auto verdicts = experiments::check_bands(config, summary);
    bool all_pass = true;
    for (const auto& v : verdicts) all_pass = all_pass && v.known && v.pass;

    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    const fs::path dir(config.out_dir);
    {
      std::ofstream out(dir / "records.csv", std::ios::binary);
      if (!out) {
        log << "cannot write records to " << (dir / "records.csv").string() << "\n";
        return 3;
      }
      records::write_records_csv(out, recs);
    }
    {
      std::ofstream out(dir / "summary.txt", std::ios::binary);
      if (!out) {
        log << "cannot write summary to " << (dir / "summary.txt").string() << "\n";
        return 3;
      }
      print_summary_file(out, subcommand, config, summary, verdicts, all_pass);
    }
    if (config.polylines) export_polylines(config, dir, log);

    log << recs.size() << " records -> " << (dir / "records.csv").string() << "\n";
    for (const auto& [name, value] : summary.scalars)
      log << "  " << name << " = " << fmt(value) << "\n";
    for (const auto& v : verdicts) {
      log << "band " << v.band.name << ": "
          << (v.known ? fmt(v.value) : std::string("<unknown scalar>")) << " in ["
          << fmt(v.band.lo) << ", " << fmt(v.band.hi) << "] -> "
          << (v.known && v.pass ? "PASS" : "FAIL") << "\n";
    }
    if (!all_pass) {
      log << "result = FAIL\n";
      return 1;
    }
    log << "result = PASS\n";
    return 0;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_from_path(const std::string& subcommand, const std::string& config_path,
                  const Overrides& overrides, std::ostream& log) {
  cfg::RunConfig config;
  try {
    config = cfg::parse_config(config_path);
  } catch (const cfg::ConfigError& e) {
    log << e.what() << "\n";
    return 2;
  }
  apply_overrides(config, overrides);
  return run_command(subcommand, std::move(config), log);
}

}  // namespace gfhull::cli
