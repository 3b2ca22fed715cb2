#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gfhull/run.hpp"

using namespace gfhull;
namespace fs = std::filesystem;

namespace {

const char* kMaximaConfig = R"(
[kernel]
kind = iid

[cross]
dim = 1
sigma = 1

[region]
shape = cube
m = 1
mode = discrete
index_list = 9999

[run]
experiment = maxima
replicates = 10
seed = 20250810
band.median_z_final = 0.80 1.00
)";

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("gfhull_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string write_config(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "config.ini";
  std::ofstream out(p);
  out << text;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("maxima run writes records, summary and passes its band") {
  const auto dir = fresh_dir("maxima");
  const auto cfg_path = write_config(dir, kMaximaConfig);
  cli::Overrides ov;
  ov.out_dir = (dir / "out").string();
  std::ostringstream log;
  const int rc = cli::run_from_path("maxima", cfg_path, ov, log);
  CHECK(rc == 0);
  CHECK(fs::exists(dir / "out" / "records.csv"));
  CHECK(fs::exists(dir / "out" / "summary.txt"));

  const std::string summary = slurp(dir / "out" / "summary.txt");
  CHECK(summary.find("median_z_final") != std::string::npos);
  CHECK(summary.find("PASS") != std::string::npos);
  CHECK(summary.find("master_seed = 20250810") != std::string::npos);
  CHECK(summary.find("version = ") != std::string::npos);
  CHECK(summary.find("[resolved_config]") != std::string::npos);

  const std::string records = slurp(dir / "out" / "records.csv");
  CHECK(records.rfind("experiment,n,nu_n,replicate,seed,statistic,value,sigma_target", 0) == 0);
}

TEST_CASE("identical config and seed give byte-identical records at any worker count") {
  const auto dir = fresh_dir("det");
  const auto cfg_path = write_config(dir, kMaximaConfig);
  std::ostringstream log;

  cli::Overrides a;
  a.out_dir = (dir / "a").string();
  a.workers = 1;
  CHECK(cli::run_from_path("maxima", cfg_path, a, log) == 0);

  cli::Overrides b;
  b.out_dir = (dir / "b").string();
  b.workers = 4;
  CHECK(cli::run_from_path("maxima", cfg_path, b, log) == 0);

  CHECK(slurp(dir / "a" / "records.csv") == slurp(dir / "b" / "records.csv"));
}

TEST_CASE("band failure produces a nonzero exit and names the statistic") {
  const auto dir = fresh_dir("bandfail");
  std::string text = kMaximaConfig;
  text += "band.impossible = 5 6\n";
  const auto cfg_path = write_config(dir, text);
  cli::Overrides ov;
  ov.out_dir = (dir / "out").string();
  std::ostringstream log;
  const int rc = cli::run_from_path("maxima", cfg_path, ov, log);
  CHECK(rc == 1);
  CHECK(log.str().find("impossible") != std::string::npos);
  CHECK(slurp(dir / "out" / "summary.txt").find("result = FAIL") != std::string::npos);
}

TEST_CASE("subcommand must match the configured experiment") {
  const auto dir = fresh_dir("mismatch");
  const auto cfg_path = write_config(dir, kMaximaConfig);
  std::ostringstream log;
  CHECK(cli::run_from_path("converge", cfg_path, {}, log) == 2);
  CHECK(log.str().find("does not match") != std::string::npos);
}

TEST_CASE("config errors are reported in full with exit code 2") {
  const auto dir = fresh_dir("badcfg");
  const auto cfg_path = write_config(dir, "[run]\nexperiment = maxima\nmystery = 1\n");
  std::ostringstream log;
  CHECK(cli::run_from_path("maxima", cfg_path, {}, log) == 2);
  CHECK(log.str().find("unknown key 'mystery'") != std::string::npos);
  CHECK(log.str().find("seed") != std::string::npos);

  std::ostringstream log2;
  CHECK(cli::run_from_path("maxima", (dir / "missing.ini").string(), {}, log2) == 2);
}

TEST_CASE("validate prints the resolved config and runs checks only") {
  const auto dir = fresh_dir("validate");
  const auto cfg_path = write_config(dir, kMaximaConfig);
  std::ostringstream log;
  CHECK(cli::run_from_path("validate", cfg_path, {}, log) == 0);
  CHECK(log.str().find("kernel-decay") != std::string::npos);
  CHECK(log.str().find("[run]") != std::string::npos);
  CHECK(log.str().find("validate: PASS") != std::string::npos);
  // no artifacts
  CHECK(!fs::exists(dir / "out" / "records.csv"));
}

TEST_CASE("validate flags boundary-thinness failures") {
  const auto dir = fresh_dir("validate3");
  const std::string cont = R"(
[kernel]
kind = exponential
lambda = 1.0

[cross]
dim = 2
sigma = 1 0 0 1

[region]
shape = cube
m = 2
mode = continuous
index_list = 1
mesh_list = 0.5

[run]
experiment = continuous
seed = 4
cond3_eps = 1.0
cond3_max_ratio = 0.5
)";
  const auto cfg_path = write_config(dir, cont);
  std::ostringstream log;
  CHECK(cli::run_from_path("validate", cfg_path, {}, log) == 1);
  CHECK(log.str().find("boundary-thinness") != std::string::npos);
  CHECK(log.str().find("validate: FAIL") != std::string::npos);
}

TEST_CASE("polylines are exported for 2D runs when enabled") {
  const auto dir = fresh_dir("poly");
  const std::string text = R"(
[kernel]
kind = iid

[cross]
dim = 2
sigma = 1 0 0 1

[region]
shape = cube
m = 1
mode = discrete
index_list = 499

[run]
experiment = converge
replicates = 3
seed = 8
directions = 90
polylines = true
)";
  const auto cfg_path = write_config(dir, text);
  cli::Overrides ov;
  ov.out_dir = (dir / "out").string();
  std::ostringstream log;
  CHECK(cli::run_from_path("converge", cfg_path, ov, log) == 0);
  CHECK(fs::exists(dir / "out" / "hull_n499_rep0.csv"));
  CHECK(fs::exists(dir / "out" / "ellipsoid.csv"));
  // x,y pairs, one per line
  std::ifstream in(dir / "out" / "ellipsoid.csv");
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    CHECK(line.find(',') != std::string::npos);
    ++lines;
  }
  CHECK(lines == 90);
}

TEST_CASE("hull-demo reports hull statistics") {
  const auto dir = fresh_dir("demo");
  const auto cfg_path = write_config(dir, kMaximaConfig);
  std::ostringstream log;
  CHECK(cli::run_from_path("hull-demo", cfg_path, {}, log) == 0);
  CHECK(log.str().find("hull vertices") != std::string::npos);
  CHECK(log.str().find("rho(W_n/b, E)") != std::string::npos);
}

TEST_CASE("installed binary end-to-end") {
  const auto dir = fresh_dir("binary");
  const auto cfg_path = write_config(dir, kMaximaConfig);
  const std::string out = (dir / "out").string();
  const std::string cmd = std::string(GFHULL_CLI_PATH) + " maxima --config " + cfg_path +
                          " --out " + out + " > " + (dir / "log.txt").string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  CHECK(rc == 0);
  CHECK(fs::exists(dir / "out" / "records.csv"));
  const std::string log = slurp(dir / "log.txt");
  CHECK(log.find("result = PASS") != std::string::npos);

  // --seed override changes the records
  const std::string cmd2 = std::string(GFHULL_CLI_PATH) + " maxima --config " + cfg_path +
                           " --out " + (dir / "out2").string() + " --seed 1 > /dev/null 2>&1";
  CHECK(std::system(cmd2.c_str()) == 0);
  CHECK(slurp(dir / "out" / "records.csv") != slurp(dir / "out2" / "records.csv"));
}
