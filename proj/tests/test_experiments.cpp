#include <doctest.h>

#include <cmath>
#include <sstream>

#include "gfhull/experiments.hpp"
#include "gfhull/records.hpp"

using namespace gfhull;
using cfg::RunConfig;
using records::ExperimentRecord;

namespace {

RunConfig converge_config(std::vector<long long> idx, int reps, std::uint64_t seed) {
  RunConfig c;
  c.experiment = "converge";
  c.kernel.kind = gaussian::KernelKind::iid;
  c.kernel.domain_dim = 1;
  c.cross = gaussian::CrossCovariance::from_matrix(Eigen::MatrixXd::Identity(2, 2));
  c.region.shape = regions::Shape::cube;
  c.region.m = 1;
  c.region.mode = regions::Mode::discrete;
  c.region.index_set = std::move(idx);
  c.has_region = true;
  c.replicates = reps;
  c.master_seed = seed;
  c.directions = 180;
  return c;
}

std::vector<double> stat_values(const std::vector<ExperimentRecord>& recs,
                                const std::string& stat, long long n) {
  std::vector<double> out;
  for (const auto& r : recs) {
    if (r.statistic == stat && r.n == n && r.replicate >= 0) out.push_back(r.value);
  }
  return out;
}

}  // namespace

TEST_CASE("convergence run: records, medians and re-run determinism") {
  auto c = converge_config({99, 999}, 10, 2025);
  const auto recs = experiments::convergence_run(c);
  // 2 sizes x 10 replicates x 4 statistics
  CHECK(recs.size() == 80);
  for (const auto& r : recs) {
    CHECK(std::isfinite(r.value));
    CHECK(r.theta_count == 180);
  }

  const auto summary = experiments::summarize(c, recs);
  CHECK(summary.scalar("median_rho_at_99") > summary.scalar("median_rho_at_999"));
  CHECK(summary.scalar("median_rho_final") == summary.scalar("median_rho_at_999"));
  CHECK(summary.scalar("rho_strictly_decreasing") == 1.0);

  // identical config + seed reproduces records exactly, at any worker count
  auto c4 = c;
  c4.workers = 4;
  const auto recs4 = experiments::convergence_run(c4);
  REQUIRE(recs4.size() == recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(recs[i].value == recs4[i].value);
    CHECK(recs[i].statistic == recs4[i].statistic);
    CHECK(recs[i].seed == recs4[i].seed);
  }
}

TEST_CASE("convergence run rejects non-decaying kernels") {
  auto c = converge_config({99}, 2, 1);
  c.kernel.kind = gaussian::KernelKind::equicorrelated;
  c.kernel.r = 0.3;
  c.cross = gaussian::CrossCovariance::from_matrix(Eigen::MatrixXd::Identity(2, 2));
  CHECK_THROWS_WITH_AS(experiments::convergence_run(c), doctest::Contains("weak-dependence"),
                       std::invalid_argument);
}

TEST_CASE("scaling equivariance: sigma -> 4 sigma scales rho statistics by exactly 2") {
  auto c1 = converge_config({199}, 6, 91);
  auto c2 = c1;
  c2.cross = gaussian::CrossCovariance::from_matrix(Eigen::MatrixXd(4.0 * Eigen::MatrixXd::Identity(2, 2)));
  const auto r1 = experiments::convergence_run(c1);
  const auto r2 = experiments::convergence_run(c2);
  REQUIRE(r1.size() == r2.size());
  for (std::size_t i = 0; i < r1.size(); ++i) {
    if (r1[i].statistic == "contained_in_inflated") {
      CHECK(r1[i].value == r2[i].value);  // containment is scale-free
    } else {
      CHECK(r2[i].value == 2.0 * r1[i].value);
    }
  }
}

TEST_CASE("maxima law: sigma = 2 doubles every Z_n at identical seeds") {
  RunConfig c;
  c.experiment = "maxima";
  c.kernel.kind = gaussian::KernelKind::iid;
  c.kernel.domain_dim = 1;
  c.cross = gaussian::CrossCovariance::from_matrix(Eigen::MatrixXd::Identity(1, 1));
  c.region.shape = regions::Shape::cube;
  c.region.m = 1;
  c.region.mode = regions::Mode::discrete;
  c.region.index_set = {999};
  c.has_region = true;
  c.replicates = 8;
  c.master_seed = 313;

  const auto est1 = experiments::maxima_law_run(c);
  auto c2 = c;
  c2.cross = gaussian::CrossCovariance::from_matrix(Eigen::MatrixXd(4.0 * Eigen::MatrixXd::Identity(1, 1)));
  const auto est2 = experiments::maxima_law_run(c2);
  REQUIRE(est1.size() == est2.size());
  for (std::size_t i = 0; i < est1.size(); ++i) {
    CHECK(est2[i].z_n == 2.0 * est1[i].z_n);
    CHECK(est2[i].sigma_target == 2.0);
  }

  // weak-dependence precondition
  auto bad = c;
  bad.kernel.kind = gaussian::KernelKind::equicorrelated;
  bad.kernel.r = 0.4;
  CHECK_THROWS_AS(experiments::maxima_law_run(bad), std::invalid_argument);
}

TEST_CASE("slepian bounds: analytic band values and the r < 1/2 hypothesis") {
  RunConfig c;
  c.experiment = "bounds";
  c.kernel.kind = gaussian::KernelKind::equicorrelated;
  c.kernel.r = 0.25;
  c.kernel.domain_dim = 1;
  c.cross = gaussian::CrossCovariance::from_matrix(Eigen::MatrixXd::Identity(1, 1));
  c.sequence_length = 2000;
  c.replicates = 10;
  c.master_seed = 5;

  const auto recs = experiments::slepian_bounds_run(c);
  double lo = -1, hi = -1, conj = -1;
  int z_count = 0;
  for (const auto& r : recs) {
    if (r.statistic == "bound_lower") lo = r.value;
    if (r.statistic == "bound_upper") hi = r.value;
    if (r.statistic == "conjecture_upper") conj = r.value;
    if (r.statistic == "z_n") ++z_count;
  }
  CHECK(z_count == 10);
  CHECK(lo == doctest::Approx(std::sqrt(0.75) - 0.5));
  CHECK(hi == doctest::Approx(1.0));
  CHECK(conj == doctest::Approx(std::sqrt(0.75)));

  const auto summary = experiments::summarize(c, recs);
  CHECK(summary.scalar("frac_in_proven_band") >= 0.0);
  CHECK(summary.scalar("frac_in_proven_band") <= 1.0);
  CHECK(summary.scalar("bound_lower") == lo);

  auto bad = c;
  bad.kernel.r = 0.5;
  CHECK_THROWS_WITH_AS(experiments::slepian_bounds_run(bad), doctest::Contains("1/2"),
                       std::invalid_argument);
}

TEST_CASE("functional moments: targets and exp-moment columns") {
  RunConfig c = converge_config({499}, 8, 777);
  c.experiment = "moments";
  c.functional = geo::FunctionalKind::volume;
  c.moment_order = 1;
  c.exp_coeff = 0.1;

  const auto recs = experiments::functional_moments_run(c);
  double target = -1;
  for (const auto& r : recs) {
    if (r.statistic == "target_f") target = r.value;
  }
  CHECK(target == doctest::Approx(M_PI));  // volume of the unit disk

  const auto summary = experiments::summarize(c, recs);
  CHECK(summary.scalar("target_f") == doctest::Approx(M_PI));
  CHECK(summary.scalar("mean_f_final") > 0.0);
  CHECK(summary.scalar("mean_f_final") < M_PI);  // inner approximation at finite n
  CHECK(summary.scalar("exp_moment_mean_max") > 1.0);

  // diameter targets 2 sqrt(lambda_max)
  auto cd = c;
  cd.functional = geo::FunctionalKind::diameter;
  const auto rd = experiments::functional_moments_run(cd);
  for (const auto& r : rd) {
    if (r.statistic == "target_f") CHECK(r.value == doctest::Approx(2.0));
  }

  // width along a direction
  auto cw = c;
  cw.functional = geo::FunctionalKind::width;
  cw.functional_theta = {1.0, 0.0};
  const auto rw = experiments::functional_moments_run(cw);
  for (const auto& r : rw) {
    if (r.statistic == "target_f") CHECK(r.value == doctest::Approx(2.0));
  }
}

TEST_CASE("continuous run: sigma(h) ladder, discrepancies, and validations") {
  RunConfig c;
  c.experiment = "continuous";
  c.kernel.kind = gaussian::KernelKind::exponential;
  c.kernel.lambda = 1.0;
  c.kernel.domain_dim = 2;
  c.cross = gaussian::CrossCovariance::from_matrix(Eigen::MatrixXd::Identity(2, 2));
  c.region.shape = regions::Shape::cube;
  c.region.m = 2;
  c.region.mode = regions::Mode::continuous;
  c.region.index_set = {4, 8};
  c.has_region = true;
  c.mesh_list = {1.0, 0.5, 0.25};
  c.replicates = 6;
  c.master_seed = 99;
  c.directions = 120;
  c.cond3_eps = 0.5;
  c.cond3_max_ratio = 0.75;

  const auto recs = experiments::continuous_run(c);
  const auto summary = experiments::summarize(c, recs);
  CHECK(summary.scalar("sigma_h_strictly_decreasing") == 1.0);
  CHECK(summary.has("mesh_frac_ok_h1"));
  CHECK(summary.has("mesh_frac_ok_h2"));
  CHECK(summary.scalar("median_rho_final") > 0.0);

  // discrepancy rows exist only for non-reference meshes and are nonnegative
  int disc_rows = 0;
  for (const auto& r : recs) {
    if (r.statistic == "mesh_discrepancy") {
      CHECK(r.value >= 0.0);
      CHECK(r.h > 0.25);
      ++disc_rows;
    }
  }
  CHECK(disc_rows == 2 * 6 * 2);  // 2 sizes x 6 replicates x 2 coarse meshes

  // worker invariance through the grid/spectral machinery
  auto c4 = c;
  c4.workers = 3;
  const auto recs4 = experiments::continuous_run(c4);
  REQUIRE(recs4.size() == recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) CHECK(recs[i].value == recs4[i].value);

  // boundary-thinness gate
  auto tight = c;
  tight.cond3_max_ratio = 0.01;
  CHECK_THROWS_WITH_AS(experiments::continuous_run(tight), doctest::Contains("boundary"),
                       std::invalid_argument);

  // continuous-parameter kernel required
  auto iid = c;
  iid.kernel.kind = gaussian::KernelKind::iid;
  CHECK_THROWS_AS(experiments::continuous_run(iid), std::invalid_argument);
}

TEST_CASE("records: schema depends only on the experiment kind") {
  CHECK(records::csv_columns("converge") ==
        std::vector<std::string>{"experiment", "n", "nu_n", "replicate", "seed", "statistic",
                                 "value", "theta_count"});
  CHECK(records::csv_columns("continuous").back() == "theta_count");
  CHECK(records::csv_columns("maxima").back() == "sigma_target");
  CHECK(records::csv_columns("bounds").back() == "sigma_target");
  CHECK(records::csv_columns("moments").back() == "note");
  CHECK_THROWS_AS(records::csv_columns("mystery"), std::invalid_argument);

  CHECK(records::csv_escape("plain") == "plain");
  CHECK(records::csv_escape("a,b") == "\"a,b\"");
  CHECK(records::csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("records: csv output is stable and parseable") {
  auto c = converge_config({99}, 3, 11);
  const auto recs = experiments::convergence_run(c);
  std::ostringstream a, b;
  records::write_records_csv(a, recs);
  records::write_records_csv(b, recs);
  CHECK(a.str() == b.str());
  // header + one line per record
  std::istringstream in(a.str());
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == static_cast<int>(recs.size()) + 1);
  CHECK(a.str().rfind("experiment,n,nu_n,replicate,seed,statistic,value,theta_count", 0) == 0);
}

TEST_CASE("band checks") {
  auto c = converge_config({99}, 4, 3);
  c.bands.push_back({"median_rho_final", 0.0, 10.0});
  c.bands.push_back({"median_rho_final", 0.0, 1e-9});
  c.bands.push_back({"no_such_scalar", 0.0, 1.0});
  const auto recs = experiments::convergence_run(c);
  const auto summary = experiments::summarize(c, recs);
  const auto verdicts = experiments::check_bands(c, summary);
  REQUIRE(verdicts.size() == 3);
  CHECK(verdicts[0].pass);
  CHECK(verdicts[0].known);
  CHECK(!verdicts[1].pass);
  CHECK(!verdicts[2].known);
}

TEST_CASE("parallel_for covers every index exactly once and propagates errors") {
  std::vector<int> hits(100, 0);
  experiments::parallel_for(100, 4, [&](int i) { hits[i]++; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(
      experiments::parallel_for(8, 3, [](int i) {
        if (i == 5) throw std::runtime_error("boom");
      }),
      std::runtime_error);
}
