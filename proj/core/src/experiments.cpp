#include "gfhull/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "gfhull/functionals.hpp"
#include "gfhull/gaussian.hpp"
#include "gfhull/rng.hpp"

namespace gfhull::experiments {
namespace {

using records::ExperimentRecord;
using records::MaximaEstimate;

geo::Mat experiment_directions(const cfg::RunConfig& config) {
  return geo::default_directions(config.cross.dim(), config.direction_count());
}

void require_decaying(const gaussian::CorrelationKernel& kernel) {
  if (!kernel.decaying())
    throw std::invalid_argument(
        "kernel '" + kernel.id() +
        "' has non-vanishing covariances at large lags; the weak-dependence "
        "hypothesis fails, so hull convergence is not guaranteed");
}

ExperimentRecord base_record(const cfg::RunConfig& config, long long n, double nu, int rep) {
  ExperimentRecord rec;
  rec.experiment = config.experiment;
  rec.n = n;
  rec.nu_n = nu;
  rec.replicate = rep;
  rec.seed = rep >= 0 ? rng::replicate_key(config.master_seed, static_cast<std::uint64_t>(rep)) : 0;
  rec.theta_count = config.direction_count();
  return rec;
}

geo::HomogeneousFunctional make_functional(const cfg::RunConfig& config) {
  switch (config.functional) {
    case geo::FunctionalKind::diameter:
      return geo::HomogeneousFunctional::make_diameter();
    case geo::FunctionalKind::volume:
      return geo::HomogeneousFunctional::make_volume(config.cross.dim());
    case geo::FunctionalKind::width: {
      if (static_cast<int>(config.functional_theta.size()) != config.cross.dim())
        throw std::invalid_argument("width functional needs a direction of the field dimension");
      geo::Vec theta(config.cross.dim());
      for (int i = 0; i < config.cross.dim(); ++i) theta[i] = config.functional_theta[i];
      const double nrm = theta.norm();
      if (!(nrm > 0.0)) throw std::invalid_argument("width functional: zero direction");
      return geo::HomogeneousFunctional::make_width(theta / nrm);
    }
  }
  throw std::logic_error("unknown functional kind");
}

}  // namespace

void parallel_for(int n_tasks, int workers, const std::function<void(int)>& fn) {
  workers = std::max(1, std::min(workers, n_tasks));
  if (workers == 1) {
    for (int i = 0; i < n_tasks; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&]() {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= n_tasks) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// --- converge ---------------------------------------------------------------

std::vector<ExperimentRecord> convergence_run(const cfg::RunConfig& config) {
  require_decaying(config.kernel);
  if (config.region.mode != regions::Mode::discrete)
    throw std::invalid_argument("convergence_run: discrete-mode regions required");

  const auto ellipsoid = gaussian::concentration_ellipsoid(config.cross);
  const geo::Mat dirs = experiment_directions(config);
  geo::Mat ell_support(1, dirs.cols());
  for (Eigen::Index j = 0; j < dirs.cols(); ++j)
    ell_support(0, j) = ellipsoid.support(dirs.col(j));

  std::vector<ExperimentRecord> out;
  for (long long n : config.region.index_set) {
    const auto lattice = regions::lattice_sites(config.region, n);
    const double b = regions::b_normalizer(lattice.nu);
    const gaussian::FieldSampler sampler(config.kernel, config.cross, lattice.sites);

    const int reps = config.replicates;
    std::vector<std::array<double, 4>> stats(reps);  // rho, overshoot, deficit, contained
    parallel_for(reps, config.workers, [&](int rep) {
      const geo::Mat values =
          sampler.sample(config.master_seed, static_cast<std::uint64_t>(rep));
      const geo::ConvexBody hull = geo::convex_hull(values);
      double overshoot = 0.0, deficit = 0.0;
      bool contained = true;
      for (Eigen::Index j = 0; j < dirs.cols(); ++j) {
        const double sw = hull.support(dirs.col(j)) / b;
        const double se = ell_support(0, j);
        overshoot = std::max(overshoot, sw - se);
        deficit = std::max(deficit, se - sw);
        if (sw > (1.0 + config.containment_delta) * se + 1e-12) contained = false;
      }
      stats[rep] = {std::max(overshoot, deficit), overshoot, deficit, contained ? 1.0 : 0.0};
    });

    for (int rep = 0; rep < reps; ++rep) {
      static const char* names[4] = {"rho_to_ellipsoid", "support_overshoot", "support_deficit",
                                     "contained_in_inflated"};
      for (int s = 0; s < 4; ++s) {
        ExperimentRecord rec = base_record(config, n, lattice.nu, rep);
        rec.statistic = names[s];
        rec.value = stats[rep][s];
        out.push_back(std::move(rec));
      }
    }
  }
  return out;
}

// --- continuous -------------------------------------------------------------

std::vector<ExperimentRecord> continuous_run(const cfg::RunConfig& config) {
  require_decaying(config.kernel);
  if (config.region.mode != regions::Mode::continuous)
    throw std::invalid_argument("continuous_run: continuous-mode regions required");
  if (!config.kernel.continuous_parameter())
    throw std::invalid_argument("continuous_run: kernel '" + config.kernel.id() +
                                "' is not continuous-parameter");
  if (config.mesh_list.empty())
    throw std::invalid_argument("continuous_run: mesh list required");

  // Boundary-thinness check at the largest realized index.
  const long long n_max = config.region.index_set.back();
  const double ratio = regions::boundary_ratio(config.region, n_max, config.cond3_eps);
  if (ratio > config.cond3_max_ratio)
    throw std::invalid_argument(
        "continuous_run: boundary-neighborhood volume ratio " + std::to_string(ratio) +
        " at n=" + std::to_string(n_max) + " exceeds " + std::to_string(config.cond3_max_ratio) +
        "; the region sequence is not boundary-thin enough");

  const auto ellipsoid = gaussian::concentration_ellipsoid(config.cross);
  const geo::Mat dirs = experiment_directions(config);
  std::vector<double> ell_support(dirs.cols());
  for (Eigen::Index j = 0; j < dirs.cols(); ++j)
    ell_support[j] = ellipsoid.support(dirs.col(j));

  const std::vector<double>& meshes = config.mesh_list;
  const double h_ref = meshes.back();
  const int n_mesh = static_cast<int>(meshes.size());

  std::vector<ExperimentRecord> out;
  for (long long n : config.region.index_set) {
    const auto fine = regions::lattice_sites(config.region, n, h_ref);
    const double b = regions::b_normalizer(fine.nu);
    const gaussian::FieldSampler sampler(config.kernel, config.cross, fine.sites);

    // Column indices of each coarser mesh inside the fine grid.
    if (!fine.sites.grid_dims.has_value())
      throw std::invalid_argument("continuous_run: region does not produce a full grid");
    const auto& dims = *fine.sites.grid_dims;
    const int m = fine.sites.m;
    std::vector<std::vector<Eigen::Index>> mesh_cols(n_mesh);
    for (int mi = 0; mi < n_mesh; ++mi) {
      const auto step = static_cast<std::int64_t>(std::llround(meshes[mi] / h_ref));
      std::vector<Eigen::Index> cols;
      const std::size_t count = fine.sites.count();
      for (std::size_t i = 0; i < count; ++i) {
        bool keep = true;
        for (int k = 0; k < m; ++k) {
          if ((fine.sites.site(i)[k] - fine.sites.grid_min[k]) % step != 0) {
            keep = false;
            break;
          }
        }
        if (keep) cols.push_back(static_cast<Eigen::Index>(i));
      }
      mesh_cols[mi] = std::move(cols);
    }
    (void)dims;

    // Analytic rows: sigma(h) and the cube-cover diagnostics per mesh.
    for (int mi = 0; mi < n_mesh; ++mi) {
      ExperimentRecord rec = base_record(config, n, fine.nu, -1);
      rec.statistic = "sigma_h";
      rec.h = meshes[mi];
      rec.value = gaussian::sigma_h(config.kernel, config.cross, meshes[mi]);
      out.push_back(rec);
      rec.statistic = "cover_ratio";
      rec.value = regions::cube_cover(config.region, n, meshes[mi]).coverage_ratio;
      out.push_back(rec);
    }

    const int reps = config.replicates;
    // Per replicate: rho per mesh, discrepancy per non-reference mesh.
    std::vector<std::vector<double>> rho(reps), disc(reps);
    parallel_for(reps, config.workers, [&](int rep) {
      const geo::Mat values =
          sampler.sample(config.master_seed, static_cast<std::uint64_t>(rep));
      std::vector<geo::ConvexBody> hulls;
      hulls.reserve(n_mesh);
      for (int mi = 0; mi < n_mesh; ++mi) {
        geo::Mat sub(values.rows(), static_cast<Eigen::Index>(mesh_cols[mi].size()));
        for (std::size_t c = 0; c < mesh_cols[mi].size(); ++c)
          sub.col(static_cast<Eigen::Index>(c)) = values.col(mesh_cols[mi][c]);
        hulls.push_back(geo::convex_hull(sub));
      }
      rho[rep].resize(n_mesh);
      disc[rep].assign(n_mesh - 1, 0.0);
      for (Eigen::Index j = 0; j < dirs.cols(); ++j) {
        const geo::Vec theta = dirs.col(j);
        const double s_ref = hulls[n_mesh - 1].support(theta);
        for (int mi = 0; mi < n_mesh; ++mi) {
          const double s = hulls[mi].support(theta);
          rho[rep][mi] = std::max(rho[rep][mi], std::abs(s / b - ell_support[j]));
          if (mi < n_mesh - 1)
            disc[rep][mi] = std::max(disc[rep][mi], std::abs(s - s_ref) / b);
        }
      }
    });

    for (int rep = 0; rep < reps; ++rep) {
      for (int mi = 0; mi < n_mesh; ++mi) {
        ExperimentRecord rec = base_record(config, n, fine.nu, rep);
        rec.statistic = "rho_to_ellipsoid";
        rec.h = meshes[mi];
        rec.value = rho[rep][mi];
        out.push_back(std::move(rec));
      }
      for (int mi = 0; mi + 1 < n_mesh; ++mi) {
        ExperimentRecord rec = base_record(config, n, fine.nu, rep);
        rec.statistic = "mesh_discrepancy";
        rec.h = meshes[mi];
        rec.value = disc[rep][mi];
        out.push_back(std::move(rec));
      }
    }
  }
  return out;
}

// --- maxima -----------------------------------------------------------------

std::vector<MaximaEstimate> maxima_law_run(const cfg::RunConfig& config) {
  require_decaying(config.kernel);
  if (config.cross.dim() != 1)
    throw std::invalid_argument("maxima_law_run: scalar field (d = 1) required");
  const double sigma = std::sqrt(config.cross.sigma(0, 0));

  std::vector<MaximaEstimate> out;
  for (long long n : config.region.index_set) {
    const auto lattice = regions::lattice_sites(config.region, n);
    const double b = regions::b_normalizer(lattice.nu);
    const gaussian::FieldSampler sampler(config.kernel, config.cross, lattice.sites);

    const int reps = config.replicates;
    std::vector<double> z(reps);
    parallel_for(reps, config.workers, [&](int rep) {
      const geo::Mat values =
          sampler.sample(config.master_seed, static_cast<std::uint64_t>(rep));
      z[rep] = values.row(0).maxCoeff() / b;
    });
    for (int rep = 0; rep < reps; ++rep) {
      MaximaEstimate est;
      est.z_n = z[rep];
      est.sigma_target = sigma;
      est.r = 0.0;
      est.phi_r = 1.0;
      est.n = n;
      est.nu_n = lattice.nu;
      est.replicate = rep;
      est.seed = rng::replicate_key(config.master_seed, static_cast<std::uint64_t>(rep));
      out.push_back(est);
    }
  }
  return out;
}

// --- bounds -----------------------------------------------------------------

std::vector<ExperimentRecord> slepian_bounds_run(const cfg::RunConfig& config) {
  if (config.kernel.kind != gaussian::KernelKind::equicorrelated)
    throw std::invalid_argument("slepian_bounds_run: equicorrelated kernel required");
  const double r = config.kernel.r;
  if (!(r >= 0.0 && r < 0.5))
    throw std::invalid_argument(
        "slepian_bounds_run: needs r in [0, 1/2); the comparison bound assumes the "
        "normalized cross-correlation stays below 1/2, got r = " + std::to_string(r));
  if (config.cross.dim() != 1)
    throw std::invalid_argument("slepian_bounds_run: scalar field (d = 1) required");

  const double sigma = std::sqrt(config.cross.sigma(0, 0));
  const double phi = std::sqrt(1.0 - r) - std::sqrt(r);
  const long long n = config.sequence_length;
  const double b = regions::b_normalizer(static_cast<double>(n));

  std::vector<ExperimentRecord> out;
  {
    ExperimentRecord rec = base_record(config, n, static_cast<double>(n), -1);
    rec.r = r;
    rec.sigma_target = sigma;
    rec.statistic = "bound_lower";
    rec.value = sigma * phi;
    out.push_back(rec);
    rec.statistic = "bound_upper";
    rec.value = sigma;
    out.push_back(rec);
    // Open question: whether sigma*sqrt(1-r) is a valid lower-bound sharpening;
    // reported descriptively, never asserted.
    rec.statistic = "conjecture_upper";
    rec.value = sigma * std::sqrt(1.0 - r);
    out.push_back(rec);
  }

  const int reps = config.replicates;
  std::vector<double> z(reps);
  parallel_for(reps, config.workers, [&](int rep) {
    const gaussian::Vec seq = gaussian::sample_equicorrelated(
        sigma, r, static_cast<int>(n), config.master_seed, static_cast<std::uint64_t>(rep));
    z[rep] = seq.maxCoeff() / b;
  });
  for (int rep = 0; rep < reps; ++rep) {
    ExperimentRecord rec = base_record(config, n, static_cast<double>(n), rep);
    rec.statistic = "z_n";
    rec.value = z[rep];
    rec.r = r;
    rec.sigma_target = sigma;
    out.push_back(std::move(rec));
  }
  return out;
}

// --- moments ----------------------------------------------------------------

std::vector<ExperimentRecord> functional_moments_run(const cfg::RunConfig& config) {
  require_decaying(config.kernel);
  const geo::HomogeneousFunctional f = make_functional(config);
  const auto ellipsoid = gaussian::concentration_ellipsoid(config.cross);
  const double target = f.value_on(ellipsoid);
  const int p = f.degree();
  const int mo = config.moment_order;
  const double a = config.exp_coeff;
  const bool mc_volume = config.functional == geo::FunctionalKind::volume && config.cross.dim() >= 4;

  std::vector<ExperimentRecord> out;
  for (long long n : config.region.index_set) {
    const auto lattice = regions::lattice_sites(config.region, n,
                                                config.mesh_list.empty() ? 1.0
                                                                         : config.mesh_list.back());
    const double b = regions::b_normalizer(lattice.nu);
    const gaussian::FieldSampler sampler(config.kernel, config.cross, lattice.sites);

    {
      ExperimentRecord rec = base_record(config, n, lattice.nu, -1);
      rec.statistic = "target_f";
      rec.value = target;
      out.push_back(rec);
      rec.statistic = "target_f_pow_m";
      rec.value = std::pow(target, mo);
      out.push_back(rec);
    }

    const int reps = config.replicates;
    std::vector<std::array<double, 3>> stats(reps);  // f, f^m, exp moment
    parallel_for(reps, config.workers, [&](int rep) {
      const geo::Mat values =
          sampler.sample(config.master_seed, static_cast<std::uint64_t>(rep));
      const geo::ConvexBody hull = geo::convex_hull(values);
      // f(W/b) = f(W) / b^p by homogeneity.
      const double fv = f(hull) / std::pow(b, p);
      stats[rep] = {fv, std::pow(fv, mo), std::exp(a * std::pow(fv, 2.0 / p))};
    });
    for (int rep = 0; rep < reps; ++rep) {
      static const char* names[3] = {"f_value", "f_pow_m", "exp_moment"};
      for (int s = 0; s < 3; ++s) {
        ExperimentRecord rec = base_record(config, n, lattice.nu, rep);
        rec.statistic = names[s];
        rec.value = stats[rep][s];
        if (mc_volume) rec.note = "mc_volume";
        out.push_back(std::move(rec));
      }
    }
  }
  return out;
}

// --- dispatch / summaries ---------------------------------------------------

std::vector<ExperimentRecord> run_experiment(const cfg::RunConfig& config) {
  if (config.experiment == "converge") return convergence_run(config);
  if (config.experiment == "continuous") return continuous_run(config);
  if (config.experiment == "maxima")
    return records::to_records(maxima_law_run(config), config.experiment);
  if (config.experiment == "bounds") return slepian_bounds_run(config);
  if (config.experiment == "moments") return functional_moments_run(config);
  throw std::invalid_argument("run_experiment: unknown experiment '" + config.experiment + "'");
}

bool Summary::has(const std::string& name) const {
  for (const auto& [k, v] : scalars) {
    if (k == name) return true;
  }
  return false;
}

double Summary::scalar(const std::string& name) const {
  for (const auto& [k, v] : scalars) {
    if (k == name) return v;
  }
  throw std::invalid_argument("summary scalar '" + name + "' not found");
}

void Summary::put(const std::string& name, double value) { scalars.push_back({name, value}); }

namespace {

// values of one statistic grouped by n (ascending), then by h if keyed.
struct Grouped {
  std::map<long long, std::vector<double>> by_n;
  std::map<long long, std::map<double, std::vector<double>>> by_n_h;
};

Grouped group(const std::vector<ExperimentRecord>& recs, const std::string& stat) {
  Grouped g;
  for (const auto& rec : recs) {
    if (rec.statistic != stat) continue;
    g.by_n[rec.n].push_back(rec.value);
    g.by_n_h[rec.n][rec.h].push_back(rec.value);
  }
  return g;
}

std::string n_tag(long long n) { return std::to_string(n); }

}  // namespace

Summary summarize(const cfg::RunConfig& config, const std::vector<ExperimentRecord>& recs) {
  Summary s;
  const std::string& kind = config.experiment;

  if (kind == "converge") {
    const auto rho = group(recs, "rho_to_ellipsoid");
    double prev = 0.0;
    bool first = true, decreasing = true;
    double final_median = 0.0;
    for (const auto& [n, vals] : rho.by_n) {
      const double med = records::median(vals);
      s.put("median_rho_at_" + n_tag(n), med);
      if (!first && med >= prev) decreasing = false;
      prev = med;
      first = false;
      final_median = med;
    }
    s.put("median_rho_final", final_median);
    s.put("rho_strictly_decreasing", decreasing ? 1.0 : 0.0);
    const auto cont = group(recs, "contained_in_inflated");
    if (!cont.by_n.empty())
      s.put("containment_fraction_final", records::mean(cont.by_n.rbegin()->second));
  } else if (kind == "maxima") {
    const auto z = group(recs, "z_n");
    double final_median = 0.0, final_iqr = 0.0;
    for (const auto& [n, vals] : z.by_n) {
      const double med = records::median(vals);
      s.put("median_z_at_" + n_tag(n), med);
      final_median = med;
      final_iqr = records::quantile(vals, 0.75) - records::quantile(vals, 0.25);
    }
    s.put("median_z_final", final_median);
    s.put("iqr_z_final", final_iqr);
  } else if (kind == "bounds") {
    double lo = 0.0, hi = 0.0, conj = 0.0;
    for (const auto& rec : recs) {
      if (rec.statistic == "bound_lower") lo = rec.value;
      if (rec.statistic == "bound_upper") hi = rec.value;
      if (rec.statistic == "conjecture_upper") conj = rec.value;
    }
    std::vector<double> z;
    for (const auto& rec : recs) {
      if (rec.statistic == "z_n") z.push_back(rec.value);
    }
    if (!z.empty()) {
      int in_proven = 0, in_conj = 0;
      for (double v : z) {
        if (v >= lo && v <= hi) ++in_proven;
        if (v >= lo && v <= conj) ++in_conj;
      }
      s.put("median_z", records::median(z));
      s.put("frac_in_proven_band", static_cast<double>(in_proven) / z.size());
      s.put("frac_in_conjecture_band", static_cast<double>(in_conj) / z.size());
      s.put("bound_lower", lo);
      s.put("bound_upper", hi);
      s.put("conjecture_upper", conj);
    }
  } else if (kind == "continuous") {
    // sigma(h) strictly decreasing under refinement (h list is coarse->fine).
    const auto sig = group(recs, "sigma_h");
    bool sig_dec = true;
    if (!sig.by_n_h.empty()) {
      const auto& at_final = sig.by_n_h.rbegin()->second;  // keyed by h ascending
      double prev = 0.0;
      bool first = true;
      for (const auto& [h, vals] : at_final) {  // ascending h = fine->coarse
        if (!first && vals.front() <= prev) sig_dec = false;
        prev = vals.front();
        first = false;
      }
    }
    s.put("sigma_h_strictly_decreasing", sig_dec ? 1.0 : 0.0);

    const auto disc = group(recs, "mesh_discrepancy");
    if (!disc.by_n_h.empty()) {
      const long long n_final = disc.by_n_h.rbegin()->first;
      for (std::size_t mi = 0; mi + 1 < config.mesh_list.size(); ++mi) {
        const double h = config.mesh_list[mi];
        const double bound =
            kMeshSlack * gaussian::sigma_h(config.kernel, config.cross, h);
        const auto it = disc.by_n_h.at(n_final).find(h);
        if (it == disc.by_n_h.at(n_final).end()) continue;
        int ok = 0;
        for (double v : it->second) {
          if (v <= bound) ++ok;
        }
        s.put("mesh_frac_ok_h" + std::to_string(mi + 1),
              static_cast<double>(ok) / it->second.size());
      }
    }

    const auto rho = group(recs, "rho_to_ellipsoid");
    if (!rho.by_n_h.empty()) {
      const auto& at_final = rho.by_n_h.rbegin()->second;
      // medians from coarse to fine mesh
      std::vector<double> med;
      for (auto it = at_final.rbegin(); it != at_final.rend(); ++it)
        med.push_back(records::median(it->second));
      double max_increase = 0.0;
      for (std::size_t i = 0; i + 1 < med.size(); ++i)
        max_increase = std::max(max_increase, med[i + 1] - med[i]);
      s.put("rho_mesh_refine_max_increase", max_increase);
      s.put("median_rho_final", med.empty() ? 0.0 : med.back());
    }
  } else if (kind == "moments") {
    const auto fv = group(recs, "f_value");
    const auto fm = group(recs, "f_pow_m");
    const auto em = group(recs, "exp_moment");
    double target_f = 0.0, target_fm = 0.0;
    for (const auto& rec : recs) {
      if (rec.statistic == "target_f") target_f = rec.value;
      if (rec.statistic == "target_f_pow_m") target_fm = rec.value;
    }
    s.put("target_f", target_f);
    s.put("target_f_pow_m", target_fm);
    std::vector<double> em_means;
    for (const auto& [n, vals] : em.by_n) {
      const double m = records::mean(vals);
      s.put("exp_moment_mean_at_" + n_tag(n), m);
      em_means.push_back(m);
    }
    if (!fv.by_n.empty()) {
      s.put("mean_f_final", records::mean(fv.by_n.rbegin()->second));
      s.put("se_f_final", records::std_error(fv.by_n.rbegin()->second));
    }
    if (!fm.by_n.empty()) {
      s.put("mean_f_pow_m_final", records::mean(fm.by_n.rbegin()->second));
      s.put("se_f_pow_m_final", records::std_error(fm.by_n.rbegin()->second));
    }
    if (!em_means.empty()) {
      s.put("exp_moment_mean_max", *std::max_element(em_means.begin(), em_means.end()));
      // Saturation: successive increments must not grow (small noise slack).
      bool saturating = true;
      for (std::size_t i = 0; i + 2 < em_means.size(); ++i) {
        const double d1 = em_means[i + 1] - em_means[i];
        const double d2 = em_means[i + 2] - em_means[i + 1];
        if (d2 > d1 + 0.015) saturating = false;
      }
      s.put("exp_moment_saturating", saturating ? 1.0 : 0.0);
    }
  }
  return s;
}

std::vector<BandVerdict> check_bands(const cfg::RunConfig& config, const Summary& summary) {
  std::vector<BandVerdict> out;
  for (const auto& band : config.bands) {
    BandVerdict v;
    v.band = band;
    v.known = summary.has(band.name);
    if (v.known) {
      v.value = summary.scalar(band.name);
      v.pass = v.value >= band.lo && v.value <= band.hi;
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace gfhull::experiments
