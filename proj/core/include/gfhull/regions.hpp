#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

// Growing index regions T_n on the integer lattice or on meshes of R^m:
// enumeration, the log normalizer, boundary-neighborhood ratios, greedy
// separated subsets and cube covers.  Distances on the parameter space are
// sup-norm throughout.

namespace gfhull::regions {

enum class Shape { cube, ball, box };
enum class Mode { discrete, continuous };

struct RegionSequence {
  Shape shape = Shape::cube;
  int m = 1;  // domain dimension
  Mode mode = Mode::discrete;
  std::vector<long long> index_set;
  std::vector<double> box_rates;  // per-axis growth, box shape only

  void validate() const;  // throws on bad dimensions / non-increasing indices
};

// Enumerated sites.  coords holds lattice indices flattened site-major
// (site i occupies [i*m, (i+1)*m)); physical position = mesh * index.
// grid_dims is set when the sites form a full rectangular grid (cube and box
// shapes), which enables the spectral sampling path.
struct SiteSet {
  int m = 1;
  double mesh = 1.0;
  std::vector<std::int64_t> coords;
  std::optional<std::vector<std::int64_t>> grid_dims;
  std::vector<std::int64_t> grid_min;

  std::size_t count() const { return m > 0 ? coords.size() / m : 0; }
  Eigen::VectorXd position(std::size_t i) const;
  const std::int64_t* site(std::size_t i) const { return coords.data() + i * m; }
};

struct LatticeResult {
  SiteSet sites;
  double nu;  // card{T_n} in discrete mode, Lebesgue measure in continuous
};

// b(t) = sqrt(2 ln(t v 2)); throws for t <= 0.
double b_normalizer(double t);

// Sites of T_n.  mesh is used in continuous mode only (mesh > 0); discrete
// mode enumerates integer points.  Enumeration order is lexicographic.
LatticeResult lattice_sites(const RegionSequence& seq, long long n, double mesh = 1.0);

// lambda^m((dT_n)^eps) / lambda^m(T_n), closed form per shape:
//   cube [0,n]^m : ((n+2e)^m - max(n-2e,0)^m) / n^m
//   ball radius n: ((n+e)^m - max(n-e,0)^m) / n^m
//   box sides c_i n: (prod(L_i+2e) - prod max(L_i-2e,0)) / prod L_i
// Continuous mode only.
double boundary_ratio(const RegionSequence& seq, long long n, double eps);

struct SeparatedSubset {
  SiteSet parent;
  SiteSet selected;
  double a = 1.0;
  std::size_t nu_tilde = 0;

  // Exhaustively checks: selected subset of parent, parent a-covered by
  // selected, pairwise sup-norm separation >= a.  The cardinality bound
  // nu <= (2a)^m nu_tilde is checked when (2a)^m >= 1.  Throws on violation.
  void verify() const;
};

// Greedy selection in lexicographic coordinate order: a site is accepted iff
// its sup-norm distance (in lattice units) to every previously accepted site
// is >= a.  Deterministic; idempotent on its own output.
SeparatedSubset separated_subset(const SiteSet& sites, double a);

// Incremental extension: scan new_sites in lexicographic order and accept
// those >= a away from all previously selected and newly accepted sites.
// Previously selected sites are never removed.
SeparatedSubset extend_separated(const SeparatedSubset& prev, const SiteSet& new_sites);

struct CubeCover {
  double h = 1.0;
  int m = 1;
  std::vector<std::int64_t> cube_indices;  // flattened, lexicographic
  double t_nh_measure = 0.0;               // nu_tilde * h^m
  std::size_t nu_tilde = 0;
  double coverage_ratio = 0.0;             // t_nh_measure / nu_n

  std::size_t count() const { return nu_tilde; }
};

// Cubes C_{k,h} = [kh, (k+1)h] whose intersection with T_n has positive
// volume (measure-zero face touches excluded).  Continuous mode only.
CubeCover cube_cover(const RegionSequence& seq, long long n, double h);

}  // namespace gfhull::regions
