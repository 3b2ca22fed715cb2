#include "gfhull/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "gfhull/rng.hpp"
#include "hull3d_impl.hpp"

namespace gfhull::geo {
namespace {

constexpr std::uint64_t kDirectionSeed = 0x6766687564697273ULL;  // direction-set stream
constexpr std::uint64_t kVolumeSeed = 0x67666875766f6c75ULL;     // default MC volume stream

void check_unit(const Vec& theta, int dim) {
  if (theta.size() != dim)
    throw std::invalid_argument("support_function: direction dimension mismatch");
  if (std::abs(theta.norm() - 1.0) > kUnitTol)
    throw std::invalid_argument("support_function: non-unit direction");
}

std::vector<int> lex_sorted_unique(const Mat& points) {
  std::vector<int> order(points.cols());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    for (int k = 0; k < points.rows(); ++k) {
      if (points(k, i) != points(k, j)) return points(k, i) < points(k, j);
    }
    return false;
  });
  std::vector<int> keep;
  for (int i : order) {
    if (!keep.empty() && points.col(keep.back()) == points.col(i)) continue;
    keep.push_back(i);
  }
  return keep;
}

// Monotone chain; returns CCW-ordered extreme vertex indices.
std::vector<int> hull2d_indices(const Mat& points) {
  const std::vector<int> order = lex_sorted_unique(points);
  const int n = static_cast<int>(order.size());
  if (n <= 2) return order;
  auto cross = [&](int o, int a, int b) {
    return (points(0, a) - points(0, o)) * (points(1, b) - points(1, o)) -
           (points(1, a) - points(1, o)) * (points(0, b) - points(0, o));
  };
  std::vector<int> h;
  for (int i = 0; i < n; ++i) {
    while (h.size() >= 2 && cross(h[h.size() - 2], h[h.size() - 1], order[i]) <= 0.0)
      h.pop_back();
    h.push_back(order[i]);
  }
  const std::size_t lower = h.size() + 1;
  for (int i = n - 2; i >= 0; --i) {
    while (h.size() >= lower && cross(h[h.size() - 2], h[h.size() - 1], order[i]) <= 0.0)
      h.pop_back();
    h.push_back(order[i]);
  }
  h.pop_back();
  return h;
}

Mat select_columns(const Mat& points, const std::vector<int>& ids) {
  Mat out(points.rows(), static_cast<Eigen::Index>(ids.size()));
  for (std::size_t j = 0; j < ids.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = points.col(ids[j]);
  return out;
}

// CCW angular order around the centroid; identity for already-ordered hulls.
std::vector<int> angular_order(const Mat& verts) {
  const Vec c = verts.rowwise().mean();
  std::vector<int> order(verts.cols());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    const double ai = std::atan2(verts(1, i) - c[1], verts(0, i) - c[0]);
    const double aj = std::atan2(verts(1, j) - c[1], verts(0, j) - c[0]);
    return ai < aj;
  });
  return order;
}

double polygon_area(const Mat& verts) {
  if (verts.cols() < 3) return 0.0;
  const std::vector<int> order = angular_order(verts);
  double twice = 0.0;
  for (std::size_t j = 0; j < order.size(); ++j) {
    const int i0 = order[j];
    const int i1 = order[(j + 1) % order.size()];
    twice += verts(0, i0) * verts(1, i1) - verts(0, i1) * verts(1, i0);
  }
  return std::abs(twice) / 2.0;
}

double point_segment_dist(const Vec& q, const Vec& a, const Vec& b) {
  const Vec ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (q - a).norm();
  const double t = std::clamp(ab.dot(q - a) / len2, 0.0, 1.0);
  return (q - (a + t * ab)).norm();
}

bool contains_2d(const Mat& verts, const Vec& q, double tol) {
  const double scale = std::max(1.0, verts.cwiseAbs().maxCoeff());
  if (verts.cols() == 1) return (q - verts.col(0)).norm() <= tol * scale;
  if (verts.cols() == 2)
    return point_segment_dist(q, verts.col(0), verts.col(1)) <= tol * scale;
  const std::vector<int> order = angular_order(verts);
  double area2 = 0.0;
  for (std::size_t j = 0; j < order.size(); ++j) {
    const int i0 = order[j], i1 = order[(j + 1) % order.size()];
    area2 += verts(0, i0) * verts(1, i1) - verts(0, i1) * verts(1, i0);
  }
  if (std::abs(area2) <= tol * scale * scale) {
    // Degenerate polygon: distance to the extreme segment.
    Eigen::Index lo, hi;
    verts.row(0).minCoeff(&lo);
    verts.row(0).maxCoeff(&hi);
    if (verts(0, lo) == verts(0, hi)) {
      verts.row(1).minCoeff(&lo);
      verts.row(1).maxCoeff(&hi);
    }
    return point_segment_dist(q, verts.col(lo), verts.col(hi)) <= tol * scale;
  }
  const double sign = area2 > 0 ? 1.0 : -1.0;
  for (std::size_t j = 0; j < order.size(); ++j) {
    const int i0 = order[j], i1 = order[(j + 1) % order.size()];
    const double cr = (verts(0, i1) - verts(0, i0)) * (q[1] - verts(1, i0)) -
                      (verts(1, i1) - verts(1, i0)) * (q[0] - verts(0, i0));
    if (sign * cr < -tol * scale * scale) return false;
  }
  return true;
}

bool contains_3d(const Mat& verts, const Vec& q, double tol) {
  const auto hull = detail::hull3d(verts);
  const double scale = std::max(1.0, verts.cwiseAbs().maxCoeff());
  if (hull.rank == 3) {
    for (const auto& f : hull.facets) {
      const Eigen::Vector3d a = verts.col(f[0]), b = verts.col(f[1]), c = verts.col(f[2]);
      Eigen::Vector3d n = (b - a).cross(c - a);
      const double len = n.norm();
      if (len == 0.0) continue;
      n /= len;
      if (n.dot(Eigen::Vector3d(q) - a) > tol * scale) return false;
    }
    return true;
  }
  if (hull.rank == 0) return (q - verts.col(hull.vertex_ids[0])).norm() <= tol * scale;
  if (hull.rank == 1)
    return point_segment_dist(q, verts.col(hull.vertex_ids[0]), verts.col(hull.vertex_ids[1])) <=
           tol * scale;
  // rank 2: check plane distance, then containment in plane coordinates.
  const Eigen::Vector3d p0 = verts.col(hull.vertex_ids[0]);
  Eigen::Vector3d u = Eigen::Vector3d(verts.col(hull.vertex_ids[1])) - p0;
  u.normalize();
  Eigen::Vector3d w;
  double best = 0.0;
  for (int id : hull.vertex_ids) {
    Eigen::Vector3d cand = Eigen::Vector3d(verts.col(id)) - p0;
    cand -= u * u.dot(cand);
    if (cand.norm() > best) best = cand.norm(), w = cand;
  }
  if (best == 0.0) return false;
  w.normalize();
  const Eigen::Vector3d nrm = u.cross(w);
  const Eigen::Vector3d d = Eigen::Vector3d(q) - p0;
  if (std::abs(nrm.dot(d)) > tol * scale) return false;
  Mat plane(2, static_cast<Eigen::Index>(hull.vertex_ids.size()));
  for (std::size_t j = 0; j < hull.vertex_ids.size(); ++j) {
    const Eigen::Vector3d r = Eigen::Vector3d(verts.col(hull.vertex_ids[j])) - p0;
    plane(0, static_cast<Eigen::Index>(j)) = u.dot(r);
    plane(1, static_cast<Eigen::Index>(j)) = w.dot(r);
  }
  Vec q2(2);
  q2 << u.dot(d), w.dot(d);
  return contains_2d(plane, q2, tol);
}

// Phase-1 simplex feasibility of { V*l = q, sum(l) = 1, l >= 0 } for d >= 4.
bool contains_lp(const Mat& verts, const Vec& q, double tol) {
  const int d = static_cast<int>(verts.rows());
  const int k = static_cast<int>(verts.cols());
  const int rows = d + 1;
  const double scale = std::max(1.0, std::max(verts.cwiseAbs().maxCoeff(), q.cwiseAbs().maxCoeff()));

  Mat a(rows, k);
  a.topRows(d) = verts;
  a.bottomRows(1).setOnes();
  Vec b(rows);
  b.head(d) = q;
  b[d] = 1.0;
  for (int i = 0; i < rows; ++i) {
    if (b[i] < 0.0) {
      a.row(i) = -a.row(i);
      b[i] = -b[i];
    }
  }

  // Tableau with artificial basis; minimize the sum of artificials.
  Mat t(rows + 1, k + rows + 1);
  t.setZero();
  t.block(0, 0, rows, k) = a;
  t.block(0, k, rows, rows).setIdentity();
  t.col(k + rows).head(rows) = b;
  for (int j = 0; j < k; ++j) t(rows, j) = -a.col(j).sum();
  t(rows, k + rows) = -b.sum();

  std::vector<int> basis(rows);
  for (int i = 0; i < rows; ++i) basis[i] = k + i;

  const int max_iter = 200 * (k + rows);
  for (int iter = 0; iter < max_iter; ++iter) {
    int pivot_col = -1;  // Bland: smallest index with negative reduced cost
    for (int j = 0; j < k + rows; ++j) {
      if (t(rows, j) < -1e-11) {
        pivot_col = j;
        break;
      }
    }
    if (pivot_col < 0) break;
    int pivot_row = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < rows; ++i) {
      if (t(i, pivot_col) > 1e-11) {
        const double ratio = t(i, k + rows) / t(i, pivot_col);
        if (pivot_row < 0 || ratio < best_ratio - 1e-14 ||
            (std::abs(ratio - best_ratio) <= 1e-14 && basis[i] < basis[pivot_row])) {
          pivot_row = i;
          best_ratio = ratio;
        }
      }
    }
    if (pivot_row < 0) break;  // unbounded (cannot happen for phase 1)
    t.row(pivot_row) /= t(pivot_row, pivot_col);
    for (int i = 0; i <= rows; ++i) {
      if (i == pivot_row) continue;
      const double f = t(i, pivot_col);
      if (f != 0.0) t.row(i) -= f * t.row(pivot_row);
    }
    basis[pivot_row] = pivot_col;
  }
  return -t(rows, k + rows) <= tol * scale * rows;
}

}  // namespace

// --- ConvexBody -------------------------------------------------------------

ConvexBody::ConvexBody(int dim, Mat vertices) : dim_(dim), verts_(std::move(vertices)) {
  if (dim_ < 1) throw std::invalid_argument("ConvexBody: dimension must be >= 1");
  if (verts_.rows() != dim_) throw std::invalid_argument("ConvexBody: vertex dimension mismatch");
  if (verts_.cols() == 0) throw std::invalid_argument("ConvexBody: empty point set");
  if (!verts_.allFinite()) throw std::invalid_argument("ConvexBody: non-finite vertex");
}

double ConvexBody::support(const Vec& theta) const {
  check_unit(theta, dim_);
  if (!support_cache_.empty()) {
    const std::vector<double> key(theta.data(), theta.data() + theta.size());
    const auto it = support_cache_.find(key);
    if (it != support_cache_.end()) return it->second;
  }
  return (verts_.transpose() * theta).maxCoeff();
}

void ConvexBody::cache_supports(const Mat& directions) {
  for (Eigen::Index j = 0; j < directions.cols(); ++j) {
    const Vec theta = directions.col(j);
    check_unit(theta, dim_);
    const std::vector<double> key(theta.data(), theta.data() + theta.size());
    support_cache_[key] = (verts_.transpose() * theta).maxCoeff();
  }
}

// --- Ellipsoid --------------------------------------------------------------

Ellipsoid Ellipsoid::from_covariance(const Mat& sigma) {
  if (sigma.rows() != sigma.cols() || sigma.rows() < 1)
    throw std::invalid_argument("Ellipsoid: covariance must be square");
  const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
  const double asym = (sigma - sigma.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-9 * scale)
    throw std::invalid_argument("Ellipsoid: covariance asymmetry " + std::to_string(asym));
  const Mat s = (sigma + sigma.transpose()) / 2.0;

  Eigen::SelfAdjointEigenSolver<Mat> es(s);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("Ellipsoid: eigendecomposition failed");
  const double tol = 1e-10 * std::max(s.trace(), 1e-300);
  Vec lambda = es.eigenvalues();
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda[i] < -tol)
      throw std::invalid_argument("Ellipsoid: covariance not PSD, eigenvalue " +
                                  std::to_string(lambda[i]));
    lambda[i] = std::max(lambda[i], 0.0);
  }
  Ellipsoid e;
  e.sigma_ = s;
  e.sqrt_sigma_ =
      es.eigenvectors() * lambda.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
  return e;
}

double Ellipsoid::support(const Vec& theta) const {
  check_unit(theta, dim());
  return std::sqrt(std::max(0.0, theta.dot(sigma_ * theta)));
}

// --- direction sets ---------------------------------------------------------

Mat equispaced_directions(int k) {
  if (k < 1) throw std::invalid_argument("equispaced_directions: k must be >= 1");
  Mat dirs(2, k);
  for (int j = 0; j < k; ++j) {
    const double a = 2.0 * M_PI * j / k;
    dirs(0, j) = std::cos(a);
    dirs(1, j) = std::sin(a);
  }
  return dirs;
}

Mat fibonacci_sphere_directions(int k) {
  if (k < 1) throw std::invalid_argument("fibonacci_sphere_directions: k must be >= 1");
  Mat dirs(3, k);
  const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
  for (int j = 0; j < k; ++j) {
    const double z = 1.0 - (2.0 * j + 1.0) / k;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * j;
    dirs(0, j) = r * std::cos(phi);
    dirs(1, j) = r * std::sin(phi);
    dirs(2, j) = z;
  }
  return dirs;
}

Mat gaussian_directions(int dim, int k) {
  if (dim < 1 || k < 1) throw std::invalid_argument("gaussian_directions: bad arguments");
  const std::uint64_t key = rng::fold(kDirectionSeed, static_cast<std::uint64_t>(dim));
  Mat dirs(dim, k);
  for (int j = 0; j < k; ++j) {
    Vec g(dim);
    for (int i = 0; i < dim; ++i)
      g[i] = rng::normal(key, static_cast<std::uint64_t>(j) * dim + i);
    const double nrm = g.norm();
    dirs.col(j) = (nrm > 0.0) ? Vec(g / nrm) : Vec::Unit(dim, 0);
  }
  return dirs;
}

Mat default_directions(int dim, int k) {
  if (dim == 1) {
    Mat dirs(1, 2);
    dirs << 1.0, -1.0;
    return dirs;
  }
  if (dim == 2) return equispaced_directions(k > 0 ? k : 720);
  if (dim == 3) return fibonacci_sphere_directions(k > 0 ? k : 2048);
  return gaussian_directions(dim, k > 0 ? k : 2048);
}

// --- operations -------------------------------------------------------------

ConvexBody convex_hull(const Mat& points) {
  if (points.cols() == 0) throw std::invalid_argument("convex_hull: empty point set");
  if (!points.allFinite()) throw std::invalid_argument("convex_hull: non-finite point");
  const int d = static_cast<int>(points.rows());
  if (d < 1) throw std::invalid_argument("convex_hull: dimension must be >= 1");

  if (d == 1) {
    const double lo = points.minCoeff(), hi = points.maxCoeff();
    Mat verts(1, lo == hi ? 1 : 2);
    verts(0, 0) = lo;
    if (lo != hi) verts(0, 1) = hi;
    return ConvexBody(1, verts);
  }
  if (d == 2) return ConvexBody(2, select_columns(points, hull2d_indices(points)));
  if (d == 3) {
    const auto hull = detail::hull3d(points);
    return ConvexBody(3, select_columns(points, hull.vertex_ids));
  }
  return ConvexBody(d, select_columns(points, lex_sorted_unique(points)));
}

ConvexBody convex_hull(const std::vector<Vec>& points) {
  if (points.empty()) throw std::invalid_argument("convex_hull: empty point set");
  const Eigen::Index d = points.front().size();
  for (const auto& p : points) {
    if (p.size() != d) throw std::invalid_argument("convex_hull: mixed point dimensions");
  }
  Mat m(d, static_cast<Eigen::Index>(points.size()));
  for (std::size_t j = 0; j < points.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = points[j];
  return convex_hull(m);
}

double support_function(const ConvexBody& body, const Vec& theta) { return body.support(theta); }

double support_function(const Ellipsoid& e, const Vec& theta) { return e.support(theta); }

double hausdorff_pointsets(const Mat& a, const Mat& b) {
  if (a.cols() == 0 || b.cols() == 0)
    throw std::invalid_argument("hausdorff_pointsets: empty point set");
  if (a.rows() != b.rows())
    throw std::invalid_argument("hausdorff_pointsets: dimension mismatch");
  auto directed = [](const Mat& from, const Mat& to) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < from.cols(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < to.cols(); ++j)
        best = std::min(best, (from.col(i) - to.col(j)).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

double hausdorff_pointsets_sup(const Mat& a, const Mat& b) {
  if (a.cols() == 0 || b.cols() == 0)
    throw std::invalid_argument("hausdorff_pointsets_sup: empty point set");
  if (a.rows() != b.rows())
    throw std::invalid_argument("hausdorff_pointsets_sup: dimension mismatch");
  auto directed = [](const Mat& from, const Mat& to) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < from.cols(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < to.cols(); ++j)
        best = std::min(best, (from.col(i) - to.col(j)).cwiseAbs().maxCoeff());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

double diameter(const ConvexBody& body) {
  const Mat& v = body.vertices();
  const Eigen::Index k = v.cols();
  if (k <= 8192) {
    double best = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = i + 1; j < k; ++j)
        best = std::max(best, (v.col(i) - v.col(j)).norm());
    }
    return best;
  }
  // Support-based estimate for very large generator sets.
  const Mat dirs = default_directions(body.dim());
  double best = 0.0;
  for (Eigen::Index j = 0; j < dirs.cols(); ++j) {
    const Vec theta = dirs.col(j);
    best = std::max(best, body.support(theta) + body.support(Vec(-theta)));
  }
  return best;
}

double volume(const ConvexBody& body) {
  const Mat& v = body.vertices();
  const int d = body.dim();
  if (d == 1) return v.maxCoeff() - v.minCoeff();
  if (d == 2) return polygon_area(v);
  if (d == 3) {
    const auto hull = detail::hull3d(v);
    if (hull.rank < 3) return 0.0;
    const Eigen::Vector3d ref = v.rowwise().mean();
    double vol = 0.0;
    for (const auto& f : hull.facets) {
      const Eigen::Vector3d a = Eigen::Vector3d(v.col(f[0])) - ref;
      const Eigen::Vector3d b = Eigen::Vector3d(v.col(f[1])) - ref;
      const Eigen::Vector3d c = Eigen::Vector3d(v.col(f[2])) - ref;
      vol += a.dot(b.cross(c));
    }
    return std::abs(vol) / 6.0;
  }
  return monte_carlo_volume(body, 20000, kVolumeSeed).value;
}

McVolume monte_carlo_volume(const ConvexBody& body, int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("monte_carlo_volume: n_samples must be >= 1");
  const Mat& v = body.vertices();
  const int d = body.dim();
  const Vec lo = v.rowwise().minCoeff();
  const Vec hi = v.rowwise().maxCoeff();
  double box = 1.0;
  for (int i = 0; i < d; ++i) box *= hi[i] - lo[i];
  if (box <= 0.0) return {0.0, 0.0};

  const std::uint64_t key = rng::fold(seed, rng::stream::aux);
  long long hits = 0;
  Vec q(d);
  for (int s = 0; s < n_samples; ++s) {
    for (int i = 0; i < d; ++i)
      q[i] = lo[i] + (hi[i] - lo[i]) * rng::uniform(key, static_cast<std::uint64_t>(s) * d + i);
    if (contains_point(body, q)) ++hits;
  }
  const double p = static_cast<double>(hits) / n_samples;
  return {box * p, box * std::sqrt(p * (1.0 - p) / n_samples)};
}

bool contains_point(const ConvexBody& body, const Vec& q, double tol) {
  if (q.size() != body.dim()) throw std::invalid_argument("contains_point: dimension mismatch");
  const Mat& v = body.vertices();
  const int d = body.dim();
  if (d == 1) {
    const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
    return q[0] >= v.minCoeff() - tol * scale && q[0] <= v.maxCoeff() + tol * scale;
  }
  if (d == 2) return contains_2d(v, q, tol);
  if (d == 3) return contains_3d(v, q, tol);
  return contains_lp(v, q, tol);
}

ConvexBody scale(const ConvexBody& body, double c) {
  if (c < 0.0) throw std::invalid_argument("scale: factor must be nonnegative");
  if (c == 0.0) return ConvexBody(body.dim(), Mat::Zero(body.dim(), 1));
  return ConvexBody(body.dim(), Mat(body.vertices() * c));
}

ConvexBody ellipsoid_to_body(const Ellipsoid& e, int n_directions) {
  const int d = e.dim();
  if (n_directions < d + 1)
    throw std::invalid_argument("ellipsoid_to_body: need at least dim+1 directions");
  Mat dirs;
  if (d == 1) {
    dirs.resize(1, 2);
    dirs << 1.0, -1.0;
  } else if (d == 2) {
    dirs = equispaced_directions(n_directions);
  } else if (d == 3) {
    dirs = fibonacci_sphere_directions(n_directions);
  } else {
    dirs = gaussian_directions(d, n_directions);
  }
  return ConvexBody(d, Mat(e.sqrt_covariance() * dirs));
}

double ellipsoid_polytope_gap(const Ellipsoid& e, int n_directions) {
  Eigen::SelfAdjointEigenSolver<Mat> es(e.covariance());
  const double rmax = std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
  const int d = e.dim();
  double angle;  // covering angle of the direction set on the unit sphere
  if (d == 1) return 0.0;
  if (d == 2) {
    angle = M_PI / n_directions;
  } else if (d == 3) {
    angle = 2.4 / std::sqrt(static_cast<double>(n_directions));
  } else {
    angle = 3.0 * std::pow(static_cast<double>(n_directions), -1.0 / (d - 1));
  }
  angle = std::min(angle, M_PI / 2.0);
  return rmax * (1.0 - std::cos(angle));
}

}  // namespace gfhull::geo
