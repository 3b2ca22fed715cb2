#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

// Convex geometry over R^d: hulls, support functions, Hausdorff metrics,
// ellipsoids and polytopal approximations.  All free functions are pure;
// ConvexBody and Ellipsoid are value types and safe to share across workers
// once constructed.

namespace gfhull::geo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kUnitTol = 1e-9;  // ||theta|| - 1 tolerance

// Compact convex set given by generator points (matrix columns).
// Hull outputs in dimension <= 3 carry exactly the extreme points; in
// dimension >= 4 the generator set may be the raw input (support evaluations
// stay exact either way).
class ConvexBody {
 public:
  ConvexBody() = default;
  ConvexBody(int dim, Mat vertices);

  int dim() const { return dim_; }
  const Mat& vertices() const { return verts_; }
  Eigen::Index vertex_count() const { return verts_.cols(); }

  // max_v <v, theta>; consults the cached value for exactly-matching
  // directions first.  theta must be a unit vector.
  double support(const Vec& theta) const;

  // Precompute supports for a direction set (columns).  The cache is part of
  // the value; copies carry it, and lookups never mutate it.
  void cache_supports(const Mat& directions);
  const std::map<std::vector<double>, double>& support_cache() const {
    return support_cache_;
  }

 private:
  int dim_ = 0;
  Mat verts_;  // d x k
  std::map<std::vector<double>, double> support_cache_;
};

// Concentration ellipsoid: image of the unit ball under the symmetric PSD
// square root of a covariance matrix.
class Ellipsoid {
 public:
  // Validates symmetry and positive semi-definiteness.  Eigenvalues down to
  // -1e-10 * trace are clamped to zero; anything lower throws with the
  // offending eigenvalue in the message.
  static Ellipsoid from_covariance(const Mat& sigma);

  int dim() const { return static_cast<int>(sigma_.rows()); }
  const Mat& covariance() const { return sigma_; }
  const Mat& sqrt_covariance() const { return sqrt_sigma_; }

  // sqrt(theta' sigma theta) for unit theta.
  double support(const Vec& theta) const;

 private:
  Mat sigma_;
  Mat sqrt_sigma_;
};

// --- direction sets -------------------------------------------------------

// k directions at angles 2*pi*j/k, j = 0..k-1 (d = 2).
Mat equispaced_directions(int k);

// Fibonacci-sphere points (d = 3), deterministic.
Mat fibonacci_sphere_directions(int k);

// Normalized Gaussian directions from a fixed internal seed (d >= 4, also
// valid for smaller d); deterministic across runs and platforms.
Mat gaussian_directions(int dim, int k);

// Dispatch on dimension; k == 0 picks the defaults (720 for d <= 2, 2048
// otherwise).
Mat default_directions(int dim, int k = 0);

// --- operations -----------------------------------------------------------

// Convex hull of the column points.  Monotone chain for d = 2, incremental
// facet hull for d = 3, generator set for d >= 4.  Throws on an empty input
// ("empty point set") and on non-finite coordinates.  2D hull vertices come
// out in counter-clockwise order.
ConvexBody convex_hull(const Mat& points);

// Same, for a list of points; throws on mixed dimensions.
ConvexBody convex_hull(const std::vector<Vec>& points);

double support_function(const ConvexBody& body, const Vec& theta);
double support_function(const Ellipsoid& e, const Vec& theta);

// sup over the given unit directions of |M_a - M_b|.  For convex operands
// this is a lower bound of the Hausdorff distance that converges to it as
// the direction set densifies.  Throws on an empty direction set.
template <class A, class B>
double hausdorff_support(const A& a, const B& b, const Mat& directions);

// Hausdorff distance between finite point sets (columns), Euclidean norm.
double hausdorff_pointsets(const Mat& a, const Mat& b);

// sup-norm Hausdorff distance between finite point sets (columns).
double hausdorff_pointsets_sup(const Mat& a, const Mat& b);

// Diameter sup ||x - y||; attained at generator points.  For very large
// generator sets (> 8192) falls back to a support-based estimate over the
// default direction set.
double diameter(const ConvexBody& body);

// Exact volume for d <= 3 (length / shoelace / facet decomposition);
// delegates to monte_carlo_volume for d >= 4.  Degenerate bodies give 0.
double volume(const ConvexBody& body);

struct McVolume {
  double value = 0.0;
  double std_error = 0.0;
};
McVolume monte_carlo_volume(const ConvexBody& body, int n_samples,
                            std::uint64_t seed);

// Membership test q in conv(vertices), up to tol in the facet metric.
bool contains_point(const ConvexBody& body, const Vec& q, double tol = 1e-9);

// Every vertex multiplied by c >= 0 (throws for c < 0).
ConvexBody scale(const ConvexBody& body, double c);

// Inner polytopal approximation: boundary points sqrt_sigma * u over the
// direction set for dim(e).  Requires n_directions >= dim + 1.
ConvexBody ellipsoid_to_body(const Ellipsoid& e, int n_directions);

// Upper bound for the Hausdorff gap of ellipsoid_to_body's approximation;
// decreases in n_directions.
double ellipsoid_polytope_gap(const Ellipsoid& e, int n_directions);

// --- template implementation ----------------------------------------------

template <class A, class B>
double hausdorff_support(const A& a, const B& b, const Mat& directions) {
  if (directions.cols() == 0)
    throw std::invalid_argument("hausdorff_support: empty direction set");
  double best = 0.0;
  for (Eigen::Index j = 0; j < directions.cols(); ++j) {
    const Vec theta = directions.col(j);
    const double gap = std::abs(support_function(a, theta) - support_function(b, theta));
    if (gap > best) best = gap;
  }
  return best;
}

}  // namespace gfhull::geo
