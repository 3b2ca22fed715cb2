#include "gfhull/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gfhull::regions {
namespace {

void check_index(const RegionSequence& seq, long long n) {
  if (n < 1) throw std::invalid_argument("region index n must be >= 1, got " + std::to_string(n));
  if (seq.shape == Shape::box && static_cast<int>(seq.box_rates.size()) != seq.m)
    throw std::invalid_argument("box shape needs one growth rate per axis");
}

// Lexicographic enumeration of the integer box [lo_i, hi_i].
template <class Fn>
void scan_box(const std::vector<std::int64_t>& lo, const std::vector<std::int64_t>& hi, Fn&& fn) {
  const int m = static_cast<int>(lo.size());
  std::vector<std::int64_t> k(lo);
  while (true) {
    fn(k);
    int axis = m - 1;
    while (axis >= 0) {
      if (++k[axis] <= hi[axis]) break;
      k[axis] = lo[axis];
      --axis;
    }
    if (axis < 0) break;
  }
}

double sup_dist(const std::int64_t* a, const std::int64_t* b, int m) {
  std::int64_t best = 0;
  for (int i = 0; i < m; ++i) best = std::max(best, std::abs(a[i] - b[i]));
  return static_cast<double>(best);
}

std::vector<std::size_t> lex_order(const SiteSet& s) {
  std::vector<std::size_t> order(s.count());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const auto* a = s.site(i);
    const auto* b = s.site(j);
    for (int k = 0; k < s.m; ++k) {
      if (a[k] != b[k]) return a[k] < b[k];
    }
    return false;
  });
  return order;
}

// Greedy core shared by the fresh and incremental constructions.
void greedy_select(const SiteSet& candidates, double a, std::vector<std::int64_t>& selected,
                   int m) {
  const auto order = lex_order(candidates);
  for (std::size_t idx : order) {
    const auto* site = candidates.site(idx);
    bool ok = true;
    for (std::size_t j = 0; j < selected.size() / m; ++j) {
      if (sup_dist(site, selected.data() + j * m, m) < a) {
        ok = false;
        break;
      }
    }
    if (ok) selected.insert(selected.end(), site, site + m);
  }
}

}  // namespace

void RegionSequence::validate() const {
  if (m < 1) throw std::invalid_argument("region dimension m must be >= 1");
  if (index_set.empty()) throw std::invalid_argument("region index set is empty");
  for (std::size_t i = 0; i < index_set.size(); ++i) {
    if (index_set[i] < 1)
      throw std::invalid_argument("region indices must be >= 1");
    if (i > 0 && index_set[i] <= index_set[i - 1])
      throw std::invalid_argument("region index set must be strictly increasing");
  }
  if (shape == Shape::box) {
    if (static_cast<int>(box_rates.size()) != m)
      throw std::invalid_argument("box shape needs one growth rate per axis");
    for (double r : box_rates) {
      if (!(r > 0.0)) throw std::invalid_argument("box growth rates must be positive");
    }
  }
}

Eigen::VectorXd SiteSet::position(std::size_t i) const {
  Eigen::VectorXd p(m);
  for (int k = 0; k < m; ++k) p[k] = mesh * static_cast<double>(site(i)[k]);
  return p;
}

double b_normalizer(double t) {
  if (!(t > 0.0)) throw std::invalid_argument("b_normalizer: t must be positive");
  return std::sqrt(2.0 * std::log(std::max(t, 2.0)));
}

LatticeResult lattice_sites(const RegionSequence& seq, long long n, double mesh) {
  check_index(seq, n);
  const int m = seq.m;
  const bool continuous = seq.mode == Mode::continuous;
  if (continuous && !(mesh > 0.0))
    throw std::invalid_argument("continuous mode needs a positive mesh");
  const double h = continuous ? mesh : 1.0;

  LatticeResult out;
  out.sites.m = m;
  out.sites.mesh = h;

  std::vector<std::int64_t> lo(m), hi(m);
  switch (seq.shape) {
    case Shape::cube: {
      for (int i = 0; i < m; ++i) {
        lo[i] = 0;
        hi[i] = continuous ? static_cast<std::int64_t>(std::floor(n / h + 1e-12))
                           : n;
      }
      break;
    }
    case Shape::box: {
      for (int i = 0; i < m; ++i) {
        const double side = seq.box_rates[i] * n;
        lo[i] = 0;
        hi[i] = static_cast<std::int64_t>(std::floor(side / h + 1e-12));
      }
      break;
    }
    case Shape::ball: {
      const double radius = static_cast<double>(n) / h;
      for (int i = 0; i < m; ++i) {
        lo[i] = -static_cast<std::int64_t>(std::floor(radius));
        hi[i] = static_cast<std::int64_t>(std::floor(radius));
      }
      const double r2 = radius * radius;
      scan_box(lo, hi, [&](const std::vector<std::int64_t>& k) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += static_cast<double>(k[i]) * k[i];
        if (s <= r2 * (1.0 + 1e-15))
          out.sites.coords.insert(out.sites.coords.end(), k.begin(), k.end());
      });
      out.nu = continuous
                   ? std::pow(M_PI, m / 2.0) / std::tgamma(m / 2.0 + 1.0) * std::pow(double(n), m)
                   : static_cast<double>(out.sites.count());
      return out;
    }
  }

  // cube / box: full rectangular grid.
  scan_box(lo, hi, [&](const std::vector<std::int64_t>& k) {
    out.sites.coords.insert(out.sites.coords.end(), k.begin(), k.end());
  });
  std::vector<std::int64_t> dims(m);
  for (int i = 0; i < m; ++i) dims[i] = hi[i] - lo[i] + 1;
  out.sites.grid_dims = dims;
  out.sites.grid_min = lo;

  if (continuous) {
    double measure = 1.0;
    for (int i = 0; i < m; ++i)
      measure *= (seq.shape == Shape::cube) ? static_cast<double>(n) : seq.box_rates[i] * n;
    out.nu = measure;
  } else {
    out.nu = static_cast<double>(out.sites.count());
  }
  return out;
}

double boundary_ratio(const RegionSequence& seq, long long n, double eps) {
  check_index(seq, n);
  if (seq.mode != Mode::continuous)
    throw std::invalid_argument("boundary_ratio: condition (3) applies to continuous regions only");
  if (!(eps > 0.0)) throw std::invalid_argument("boundary_ratio: eps must be positive");
  const int m = seq.m;
  const double nd = static_cast<double>(n);
  switch (seq.shape) {
    case Shape::cube: {
      const double outer = std::pow(nd + 2.0 * eps, m);
      const double inner = std::pow(std::max(nd - 2.0 * eps, 0.0), m);
      return (outer - inner) / std::pow(nd, m);
    }
    case Shape::ball: {
      const double outer = std::pow(nd + eps, m);
      const double inner = std::pow(std::max(nd - eps, 0.0), m);
      return (outer - inner) / std::pow(nd, m);
    }
    case Shape::box: {
      double outer = 1.0, inner = 1.0, vol = 1.0;
      for (int i = 0; i < m; ++i) {
        const double side = seq.box_rates[i] * nd;
        outer *= side + 2.0 * eps;
        inner *= std::max(side - 2.0 * eps, 0.0);
        vol *= side;
      }
      return (outer - inner) / vol;
    }
  }
  throw std::logic_error("unknown shape");
}

void SeparatedSubset::verify() const {
  const int m = parent.m;
  const std::size_t np = parent.count();
  const std::size_t ns = selected.count();
  if (ns != nu_tilde) throw std::runtime_error("separated subset: nu_tilde mismatch");
  // 1. selected subset of parent.
  for (std::size_t i = 0; i < ns; ++i) {
    bool found = false;
    for (std::size_t j = 0; j < np && !found; ++j)
      found = sup_dist(selected.site(i), parent.site(j), m) == 0.0;
    if (!found) throw std::runtime_error("separated subset: selected site outside parent");
  }
  // 2. parent a-covered by selected.
  for (std::size_t j = 0; j < np; ++j) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ns; ++i)
      best = std::min(best, sup_dist(parent.site(j), selected.site(i), m));
    if (best > a) throw std::runtime_error("separated subset: parent site not a-covered");
  }
  // 3. pairwise separation.
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = i + 1; j < ns; ++j) {
      if (sup_dist(selected.site(i), selected.site(j), m) < a)
        throw std::runtime_error("separated subset: separation violated");
    }
  }
  // 4. cardinality sandwich; meaningful once (2a)^m >= 1.
  const double bound = std::pow(2.0 * a, m);
  if (bound >= 1.0 && static_cast<double>(np) > bound * static_cast<double>(ns))
    throw std::runtime_error("separated subset: cardinality bound violated");
  if (ns > np) throw std::runtime_error("separated subset: selected larger than parent");
}

SeparatedSubset separated_subset(const SiteSet& sites, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("separated_subset: a must be positive");
  if (sites.count() == 0) throw std::invalid_argument("separated_subset: empty site set");
  SeparatedSubset out;
  out.parent = sites;
  out.a = a;
  out.selected.m = sites.m;
  out.selected.mesh = sites.mesh;
  greedy_select(sites, a, out.selected.coords, sites.m);
  out.nu_tilde = out.selected.count();
  return out;
}

SeparatedSubset extend_separated(const SeparatedSubset& prev, const SiteSet& new_sites) {
  if (new_sites.m != prev.parent.m)
    throw std::invalid_argument("extend_separated: dimension mismatch");
  SeparatedSubset out;
  out.a = prev.a;
  out.parent = prev.parent;
  out.parent.grid_dims.reset();
  out.parent.coords.insert(out.parent.coords.end(), new_sites.coords.begin(),
                           new_sites.coords.end());
  out.selected = prev.selected;
  greedy_select(new_sites, prev.a, out.selected.coords, prev.parent.m);
  out.nu_tilde = out.selected.count();
  return out;
}

CubeCover cube_cover(const RegionSequence& seq, long long n, double h) {
  check_index(seq, n);
  if (seq.mode != Mode::continuous)
    throw std::invalid_argument("cube_cover: continuous mode only");
  if (!(h > 0.0)) throw std::invalid_argument("cube_cover: h must be positive");
  const int m = seq.m;
  CubeCover out;
  out.h = h;
  out.m = m;

  std::vector<std::int64_t> lo(m), hi(m);
  auto push_all = [&]() {
    scan_box(lo, hi, [&](const std::vector<std::int64_t>& k) {
      out.cube_indices.insert(out.cube_indices.end(), k.begin(), k.end());
    });
  };

  double nu_n = 0.0;
  switch (seq.shape) {
    case Shape::cube: {
      // C_{k,h} has positive-volume intersection with [0,n]^m iff
      // 0 <= k < n/h on every axis.
      for (int i = 0; i < m; ++i) {
        lo[i] = 0;
        hi[i] = static_cast<std::int64_t>(std::ceil(n / h - 1e-12)) - 1;
      }
      push_all();
      nu_n = std::pow(static_cast<double>(n), m);
      break;
    }
    case Shape::box: {
      for (int i = 0; i < m; ++i) {
        const double side = seq.box_rates[i] * n;
        lo[i] = 0;
        hi[i] = static_cast<std::int64_t>(std::ceil(side / h - 1e-12)) - 1;
      }
      push_all();
      nu_n = 1.0;
      for (int i = 0; i < m; ++i) nu_n *= seq.box_rates[i] * n;
      break;
    }
    case Shape::ball: {
      const double radius = static_cast<double>(n);
      for (int i = 0; i < m; ++i) {
        lo[i] = -static_cast<std::int64_t>(std::ceil(radius / h)) - 1;
        hi[i] = static_cast<std::int64_t>(std::ceil(radius / h)) + 1;
      }
      const double r2 = radius * radius;
      scan_box(lo, hi, [&](const std::vector<std::int64_t>& k) {
        // Nearest point of the closed cube to the origin; the open sets
        // intersect with positive volume iff it is strictly inside the ball.
        double s = 0.0;
        for (int i = 0; i < m; ++i) {
          const double a = static_cast<double>(k[i]) * h;
          const double b = a + h;
          const double c = std::clamp(0.0, a, b);
          s += c * c;
        }
        if (s < r2 * (1.0 - 1e-15))
          out.cube_indices.insert(out.cube_indices.end(), k.begin(), k.end());
      });
      nu_n = std::pow(M_PI, m / 2.0) / std::tgamma(m / 2.0 + 1.0) * std::pow(radius, m);
      break;
    }
  }

  out.nu_tilde = out.cube_indices.size() / m;
  out.t_nh_measure = static_cast<double>(out.nu_tilde) * std::pow(h, m);
  out.coverage_ratio = out.t_nh_measure / nu_n;
  return out;
}

}  // namespace gfhull::regions
