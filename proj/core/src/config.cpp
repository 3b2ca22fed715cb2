#include "gfhull/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace gfhull::cfg {
namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  std::string s = "configuration invalid:";
  for (const auto& i : issues) s += "\n  - " + i;
  return s;
}

struct Raw {
  // section -> key -> value string, plus declaration order for diagnostics
  std::map<std::string, std::map<std::string, std::string>> kv;
  std::vector<std::string> issues;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Raw tokenize(const std::string& text) {
  Raw raw;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        raw.issues.push_back("line " + std::to_string(lineno) + ": malformed section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      raw.kv.try_emplace(section);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      raw.issues.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    if (section.empty()) {
      raw.issues.push_back("line " + std::to_string(lineno) + ": key outside any section");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!raw.kv[section].emplace(key, value).second)
      raw.issues.push_back("duplicate key '" + key + "' in section [" + section + "]");
  }
  return raw;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

class Reader {
 public:
  Reader(Raw raw) : raw_(std::move(raw)), issues_(std::move(raw_.issues)) {}

  bool has(const std::string& section, const std::string& key) const {
    const auto sit = raw_.kv.find(section);
    return sit != raw_.kv.end() && sit->second.count(key) > 0;
  }

  std::string take(const std::string& section, const std::string& key,
                   const std::string& fallback = "") {
    consumed_[section].insert(key);
    const auto sit = raw_.kv.find(section);
    if (sit == raw_.kv.end()) return fallback;
    const auto kit = sit->second.find(key);
    return kit == sit->second.end() ? fallback : kit->second;
  }

  double take_double(const std::string& section, const std::string& key, double fallback) {
    const std::string v = take(section, key);
    if (v.empty()) return fallback;
    try {
      std::size_t pos = 0;
      const double x = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument("trailing characters");
      return x;
    } catch (const std::exception&) {
      fail("[" + section + "] " + key + ": not a number: '" + v + "'");
      return fallback;
    }
  }

  long long take_int(const std::string& section, const std::string& key, long long fallback) {
    const std::string v = take(section, key);
    if (v.empty()) return fallback;
    try {
      std::size_t pos = 0;
      const long long x = std::stoll(v, &pos);
      if (pos != v.size()) throw std::invalid_argument("trailing characters");
      return x;
    } catch (const std::exception&) {
      fail("[" + section + "] " + key + ": not an integer: '" + v + "'");
      return fallback;
    }
  }

  bool take_bool(const std::string& section, const std::string& key, bool fallback) {
    const std::string v = take(section, key);
    if (v.empty()) return fallback;
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    fail("[" + section + "] " + key + ": expected true/false, got '" + v + "'");
    return fallback;
  }

  std::vector<double> take_doubles(const std::string& section, const std::string& key) {
    std::vector<double> out;
    for (const auto& tok : split_ws(take(section, key))) {
      try {
        out.push_back(std::stod(tok));
      } catch (const std::exception&) {
        fail("[" + section + "] " + key + ": not a number: '" + tok + "'");
      }
    }
    return out;
  }

  std::vector<long long> take_ints(const std::string& section, const std::string& key) {
    std::vector<long long> out;
    for (const auto& tok : split_ws(take(section, key))) {
      try {
        out.push_back(std::stoll(tok));
      } catch (const std::exception&) {
        fail("[" + section + "] " + key + ": not an integer: '" + tok + "'");
      }
    }
    return out;
  }

  void fail(const std::string& msg) { issues_.push_back(msg); }

  // Strict mode: every present key must have been consumed.
  void check_unknown(const std::vector<std::string>& known_sections) {
    for (const auto& [section, keys] : raw_.kv) {
      if (std::find(known_sections.begin(), known_sections.end(), section) ==
          known_sections.end()) {
        fail("unknown section [" + section + "]");
        continue;
      }
      for (const auto& [key, value] : keys) {
        if (section == "run" && key.rfind("band.", 0) == 0) continue;
        if (!consumed_[section].count(key))
          fail("unknown key '" + key + "' in section [" + section + "]");
      }
    }
  }

  // All band.<name> entries in [run].
  std::vector<std::pair<std::string, std::string>> bands() const {
    std::vector<std::pair<std::string, std::string>> out;
    const auto sit = raw_.kv.find("run");
    if (sit == raw_.kv.end()) return out;
    for (const auto& [key, value] : sit->second) {
      if (key.rfind("band.", 0) == 0) out.push_back({key.substr(5), value});
    }
    return out;
  }

  const std::vector<std::string>& issues() const { return issues_; }

 private:
  Raw raw_;
  std::vector<std::string> issues_;
  std::map<std::string, std::set<std::string>> consumed_;
};

const std::vector<std::string> kExperiments = {"converge", "continuous", "maxima", "bounds",
                                               "moments"};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

RunConfig parse_config_text(const std::string& text) {
  Reader rd(tokenize(text));
  RunConfig cfg;

  // [kernel]
  const std::string kind = rd.take("kernel", "kind", "iid");
  if (kind == "iid") cfg.kernel.kind = gaussian::KernelKind::iid;
  else if (kind == "exponential") cfg.kernel.kind = gaussian::KernelKind::exponential;
  else if (kind == "squared-exponential")
    cfg.kernel.kind = gaussian::KernelKind::squared_exponential;
  else if (kind == "ar-tensor") cfg.kernel.kind = gaussian::KernelKind::ar_tensor;
  else if (kind == "equicorrelated") cfg.kernel.kind = gaussian::KernelKind::equicorrelated;
  else rd.fail("[kernel] kind: unknown kind '" + kind + "'");
  cfg.kernel.lambda = rd.take_double("kernel", "lambda", 1.0);
  cfg.kernel.rho = rd.take_double("kernel", "rho", 0.0);
  cfg.kernel.r = rd.take_double("kernel", "r", 0.0);

  // [cross]
  const long long dim = rd.take_int("cross", "dim", 1);
  const std::vector<double> sig = rd.take_doubles("cross", "sigma");
  if (dim < 1) {
    rd.fail("[cross] dim must be >= 1");
  } else if (sig.empty()) {
    rd.fail("[cross] sigma is required");
  } else if (static_cast<long long>(sig.size()) != dim * dim) {
    rd.fail("[cross] sigma needs dim*dim = " + std::to_string(dim * dim) + " entries, got " +
            std::to_string(sig.size()));
  } else {
    Eigen::MatrixXd m(dim, dim);
    for (long long i = 0; i < dim; ++i)
      for (long long j = 0; j < dim; ++j) m(i, j) = sig[static_cast<std::size_t>(i * dim + j)];
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-9 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
      rd.fail("[cross] sigma asymmetric, max asymmetry " + std::to_string(asym));
    } else {
      try {
        cfg.cross = gaussian::CrossCovariance::from_matrix(m);
      } catch (const std::exception& e) {
        rd.fail(std::string("[cross] sigma: ") + e.what());
      }
    }
  }

  // [region] (optional for bounds)
  cfg.has_region = rd.has("region", "shape") || rd.has("region", "m") ||
                   rd.has("region", "index_list") || rd.has("region", "mode");
  {
    const std::string shape = rd.take("region", "shape", "cube");
    if (shape == "cube") cfg.region.shape = regions::Shape::cube;
    else if (shape == "ball") cfg.region.shape = regions::Shape::ball;
    else if (shape == "box") cfg.region.shape = regions::Shape::box;
    else rd.fail("[region] shape: unknown shape '" + shape + "'");
    cfg.region.m = static_cast<int>(rd.take_int("region", "m", 1));
    const std::string mode = rd.take("region", "mode", "discrete");
    if (mode == "discrete") cfg.region.mode = regions::Mode::discrete;
    else if (mode == "continuous") cfg.region.mode = regions::Mode::continuous;
    else rd.fail("[region] mode: expected discrete or continuous");
    cfg.region.index_set = rd.take_ints("region", "index_list");
    cfg.region.box_rates = rd.take_doubles("region", "box_rates");
    cfg.mesh_list = rd.take_doubles("region", "mesh_list");
    if (cfg.has_region) {
      try {
        cfg.region.validate();
      } catch (const std::exception& e) {
        rd.fail(std::string("[region] ") + e.what());
      }
      for (std::size_t i = 0; i + 1 < cfg.region.index_set.size(); ++i) {
        if (cfg.region.index_set[i] >= cfg.region.index_set[i + 1]) {
          rd.fail("[region] index_list must be strictly increasing");
          break;
        }
      }
      if (cfg.region.mode == regions::Mode::continuous) {
        if (cfg.mesh_list.empty()) rd.fail("[region] continuous mode needs mesh_list");
        for (std::size_t i = 0; i < cfg.mesh_list.size(); ++i) {
          if (!(cfg.mesh_list[i] > 0.0)) rd.fail("[region] mesh values must be positive");
          if (i > 0 && cfg.mesh_list[i] >= cfg.mesh_list[i - 1])
            rd.fail("[region] mesh_list must be strictly decreasing (coarse to fine)");
        }
        if (!cfg.mesh_list.empty()) {
          const double fine = cfg.mesh_list.back();
          for (double h : cfg.mesh_list) {
            const double ratio = h / fine;
            if (std::abs(ratio - std::round(ratio)) > 1e-9)
              rd.fail("[region] each mesh must be an integer multiple of the finest mesh");
          }
        }
      }
    }
  }
  cfg.kernel.domain_dim = cfg.has_region ? cfg.region.m : 1;
  try {
    cfg.kernel.validate();
  } catch (const std::exception& e) {
    rd.fail(std::string("[kernel] ") + e.what());
  }

  // [run]
  cfg.experiment = rd.take("run", "experiment");
  if (cfg.experiment.empty()) {
    rd.fail("[run] experiment is required");
  } else if (std::find(kExperiments.begin(), kExperiments.end(), cfg.experiment) ==
             kExperiments.end()) {
    rd.fail("[run] experiment: unknown kind '" + cfg.experiment + "'");
  }
  cfg.replicates = static_cast<int>(rd.take_int("run", "replicates", 20));
  if (cfg.replicates < 1) rd.fail("[run] replicates must be >= 1");
  if (rd.has("run", "seed")) {
    const std::string v = rd.take("run", "seed");
    try {
      std::size_t pos = 0;
      cfg.master_seed = std::stoull(v, &pos);
      if (pos != v.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      rd.fail("[run] seed: not a 64-bit unsigned integer: '" + v + "'");
    }
  } else {
    rd.fail("[run] explicit seed required (no wall-clock default)");
  }
  cfg.directions = static_cast<int>(rd.take_int("run", "directions", 0));
  if (cfg.directions < 0) rd.fail("[run] directions must be positive");
  cfg.workers = static_cast<int>(rd.take_int("run", "workers", 1));
  if (cfg.workers < 1) rd.fail("[run] workers must be >= 1");
  cfg.out_dir = rd.take("run", "out_dir", "out");
  cfg.polylines = rd.take_bool("run", "polylines", false);
  cfg.containment_delta = rd.take_double("run", "containment_delta", 0.05);
  cfg.cond3_eps = rd.take_double("run", "cond3_eps", 1.0);
  cfg.cond3_max_ratio = rd.take_double("run", "cond3_max_ratio", 0.75);
  cfg.sequence_length = rd.take_int("run", "sequence_length", 10000);
  if (cfg.sequence_length < 1) rd.fail("[run] sequence_length must be >= 1");
  const std::string fkind = rd.take("run", "functional", "diameter");
  if (fkind == "diameter") cfg.functional = geo::FunctionalKind::diameter;
  else if (fkind == "volume") cfg.functional = geo::FunctionalKind::volume;
  else if (fkind == "width") cfg.functional = geo::FunctionalKind::width;
  else rd.fail("[run] functional: expected diameter, volume or width");
  cfg.functional_theta = rd.take_doubles("run", "functional_theta");
  cfg.moment_order = static_cast<int>(rd.take_int("run", "moment_order", 1));
  if (cfg.moment_order < 1) rd.fail("[run] moment_order must be >= 1");
  cfg.exp_coeff = rd.take_double("run", "exp_coeff", 0.1);
  if (!(cfg.exp_coeff > 0.0)) rd.fail("[run] exp_coeff must be positive");
  cfg.mc_volume_samples = static_cast<int>(rd.take_int("run", "mc_volume_samples", 20000));
  if (cfg.mc_volume_samples < 1) rd.fail("[run] mc_volume_samples must be >= 1");

  for (const auto& [name, value] : rd.bands()) {
    const auto toks = split_ws(value);
    if (toks.size() != 2) {
      rd.fail("[run] band." + name + ": expected '<lo> <hi>'");
      continue;
    }
    try {
      cfg.bands.push_back({name, std::stod(toks[0]), std::stod(toks[1])});
    } catch (const std::exception&) {
      rd.fail("[run] band." + name + ": not numeric");
    }
  }

  // Per-experiment requirements.
  if (cfg.experiment == "converge" || cfg.experiment == "maxima") {
    if (!cfg.has_region) rd.fail("[region] required for experiment '" + cfg.experiment + "'");
    else if (cfg.region.mode != regions::Mode::discrete)
      rd.fail("[region] experiment '" + cfg.experiment + "' needs discrete mode");
  }
  if (cfg.experiment == "continuous") {
    if (!cfg.has_region) rd.fail("[region] required for experiment 'continuous'");
    else if (cfg.region.mode != regions::Mode::continuous)
      rd.fail("[region] experiment 'continuous' needs continuous mode");
  }
  if (cfg.experiment == "moments" && !cfg.has_region)
    rd.fail("[region] required for experiment 'moments'");
  if (cfg.experiment == "maxima" && cfg.cross.sigma.size() > 0 && cfg.cross.dim() != 1)
    rd.fail("[cross] maxima experiment needs a scalar field (dim = 1)");
  if (cfg.experiment == "bounds") {
    if (cfg.cross.sigma.size() > 0 && cfg.cross.dim() != 1)
      rd.fail("[cross] bounds experiment needs a scalar field (dim = 1)");
    if (cfg.kernel.kind != gaussian::KernelKind::equicorrelated)
      rd.fail("[kernel] bounds experiment needs the equicorrelated kernel");
  }
  if (cfg.functional == geo::FunctionalKind::width) {
    if (cfg.cross.sigma.size() > 0 &&
        static_cast<int>(cfg.functional_theta.size()) != cfg.cross.dim())
      rd.fail("[run] functional_theta must have cross dimension entries");
  }

  rd.check_unknown({"kernel", "cross", "region", "run"});
  if (!rd.issues().empty()) throw ConfigError(rd.issues());
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file: " + path});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string render_config(const RunConfig& c) {
  std::ostringstream os;
  os.precision(17);
  os << "[kernel]\n";
  os << "kind = ";
  switch (c.kernel.kind) {
    case gaussian::KernelKind::iid: os << "iid"; break;
    case gaussian::KernelKind::exponential: os << "exponential"; break;
    case gaussian::KernelKind::squared_exponential: os << "squared-exponential"; break;
    case gaussian::KernelKind::ar_tensor: os << "ar-tensor"; break;
    case gaussian::KernelKind::equicorrelated: os << "equicorrelated"; break;
  }
  os << "\n";
  if (c.kernel.continuous_parameter()) os << "lambda = " << c.kernel.lambda << "\n";
  if (c.kernel.kind == gaussian::KernelKind::ar_tensor) os << "rho = " << c.kernel.rho << "\n";
  if (c.kernel.kind == gaussian::KernelKind::equicorrelated) os << "r = " << c.kernel.r << "\n";

  os << "\n[cross]\n";
  os << "dim = " << c.cross.dim() << "\n";
  os << "sigma =";
  for (Eigen::Index i = 0; i < c.cross.sigma.rows(); ++i)
    for (Eigen::Index j = 0; j < c.cross.sigma.cols(); ++j) os << " " << c.cross.sigma(i, j);
  os << "\n";

  if (c.has_region) {
    os << "\n[region]\n";
    os << "shape = "
       << (c.region.shape == regions::Shape::cube
               ? "cube"
               : (c.region.shape == regions::Shape::ball ? "ball" : "box"))
       << "\n";
    os << "m = " << c.region.m << "\n";
    os << "mode = " << (c.region.mode == regions::Mode::discrete ? "discrete" : "continuous")
       << "\n";
    os << "index_list =";
    for (long long n : c.region.index_set) os << " " << n;
    os << "\n";
    if (!c.mesh_list.empty()) {
      os << "mesh_list =";
      for (double h : c.mesh_list) os << " " << h;
      os << "\n";
    }
    if (!c.region.box_rates.empty()) {
      os << "box_rates =";
      for (double r : c.region.box_rates) os << " " << r;
      os << "\n";
    }
  }

  os << "\n[run]\n";
  os << "experiment = " << c.experiment << "\n";
  os << "replicates = " << c.replicates << "\n";
  os << "seed = " << c.master_seed << "\n";
  os << "directions = " << c.direction_count() << "\n";
  os << "workers = " << c.workers << "\n";
  os << "out_dir = " << c.out_dir << "\n";
  os << "polylines = " << (c.polylines ? "true" : "false") << "\n";
  if (c.experiment == "converge") os << "containment_delta = " << c.containment_delta << "\n";
  if (c.experiment == "continuous") {
    os << "cond3_eps = " << c.cond3_eps << "\n";
    os << "cond3_max_ratio = " << c.cond3_max_ratio << "\n";
  }
  if (c.experiment == "bounds") os << "sequence_length = " << c.sequence_length << "\n";
  if (c.experiment == "moments") {
    os << "functional = "
       << (c.functional == geo::FunctionalKind::diameter
               ? "diameter"
               : (c.functional == geo::FunctionalKind::volume ? "volume" : "width"))
       << "\n";
    if (!c.functional_theta.empty()) {
      os << "functional_theta =";
      for (double t : c.functional_theta) os << " " << t;
      os << "\n";
    }
    os << "moment_order = " << c.moment_order << "\n";
    os << "exp_coeff = " << c.exp_coeff << "\n";
  }
  for (const auto& b : c.bands)
    os << "band." << b.name << " = " << b.lo << " " << b.hi << "\n";
  return os.str();
}

}  // namespace gfhull::cfg
