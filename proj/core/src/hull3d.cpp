#include "hull3d_impl.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace gfhull::geo::detail {
namespace {

using Eigen::MatrixXd;
using Eigen::Vector3d;

struct Facet {
  std::array<int, 3> v;
  Vector3d normal;  // unit outward
  double offset;    // <normal, x> = offset on the plane
  bool alive = true;
};

double signed_dist(const Facet& f, const Vector3d& p) {
  return f.normal.dot(p) - f.offset;
}

Facet make_facet(int a, int b, int c, const std::vector<Vector3d>& pts,
                 const Vector3d& interior) {
  Facet f;
  f.v = {a, b, c};
  Vector3d n = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
  const double len = n.norm();
  if (len > 0.0) n /= len;
  f.normal = n;
  f.offset = n.dot(pts[a]);
  if (signed_dist(f, interior) > 0.0) {
    std::swap(f.v[1], f.v[2]);
    f.normal = -f.normal;
    f.offset = -f.offset;
  }
  return f;
}

// 2D monotone chain on projected coordinates; returns indices of extreme
// points in CCW order.
std::vector<int> chain2d(const std::vector<std::pair<double, double>>& q) {
  const int n = static_cast<int>(q.size());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int i, int j) { return q[i] < q[j]; });
  auto cross = [&](int o, int a, int b) {
    return (q[a].first - q[o].first) * (q[b].second - q[o].second) -
           (q[a].second - q[o].second) * (q[b].first - q[o].first);
  };
  std::vector<int> h;
  for (int idx : order) {
    while (h.size() >= 2 && cross(h[h.size() - 2], h[h.size() - 1], idx) <= 0.0)
      h.pop_back();
    h.push_back(idx);
  }
  const std::size_t lower = h.size() + 1;
  for (int i = n - 2; i >= 0; --i) {
    const int idx = order[i];
    while (h.size() >= lower && cross(h[h.size() - 2], h[h.size() - 1], idx) <= 0.0)
      h.pop_back();
    h.push_back(idx);
  }
  h.pop_back();
  return h;
}

}  // namespace

Hull3D hull3d(const MatrixXd& input) {
  if (input.rows() != 3) throw std::invalid_argument("hull3d: points must be 3-dimensional");
  if (input.cols() == 0) throw std::invalid_argument("hull3d: empty point set");

  // Exact dedupe.
  std::vector<Vector3d> pts;
  std::vector<int> src;  // index into input
  {
    std::vector<int> order(input.cols());
    for (int i = 0; i < input.cols(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int i, int j) {
      const auto a = input.col(i), b = input.col(j);
      for (int k = 0; k < 3; ++k) {
        if (a[k] != b[k]) return a[k] < b[k];
      }
      return false;
    });
    for (int i : order) {
      if (!pts.empty() && pts.back() == Vector3d(input.col(i))) continue;
      pts.push_back(input.col(i));
      src.push_back(i);
    }
  }
  const int n = static_cast<int>(pts.size());

  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  const double eps = 1e-9 * std::max(1.0, scale);

  Hull3D out;
  if (n == 1) {
    out.rank = 0;
    out.vertex_ids = {src[0]};
    return out;
  }

  // Affine rank probes.
  const int i0 = 0;
  int i1 = -1;
  double best = 0.0;
  for (int i = 1; i < n; ++i) {
    const double d = (pts[i] - pts[i0]).norm();
    if (d > best) best = d, i1 = i;
  }
  if (best <= eps) {
    out.rank = 0;
    out.vertex_ids = {src[i0]};
    return out;
  }
  const Vector3d u = (pts[i1] - pts[i0]).normalized();

  int i2 = -1;
  best = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vector3d w = pts[i] - pts[i0];
    const double d = (w - u * u.dot(w)).norm();
    if (d > best) best = d, i2 = i;
  }
  if (best <= eps) {
    // Collinear: endpoints along u.
    int lo = i0, hi = i0;
    double tlo = 0.0, thi = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = u.dot(pts[i] - pts[i0]);
      if (t < tlo) tlo = t, lo = i;
      if (t > thi) thi = t, hi = i;
    }
    out.rank = 1;
    out.vertex_ids = {src[lo], src[hi]};
    return out;
  }
  Vector3d v = pts[i2] - pts[i0];
  v = (v - u * u.dot(v)).normalized();

  const Vector3d plane_n = u.cross(v);
  int i3 = -1;
  best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = std::abs(plane_n.dot(pts[i] - pts[i0]));
    if (d > best) best = d, i3 = i;
  }
  if (best <= eps) {
    // Planar: run the 2D chain in plane coordinates.
    std::vector<std::pair<double, double>> q(n);
    for (int i = 0; i < n; ++i) {
      const Vector3d w = pts[i] - pts[i0];
      q[i] = {u.dot(w), v.dot(w)};
    }
    out.rank = 2;
    for (int idx : chain2d(q)) out.vertex_ids.push_back(src[idx]);
    return out;
  }

  // Full-dimensional: incremental insertion starting from the probe tetra.
  out.rank = 3;
  const Vector3d interior =
      (pts[i0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;
  std::vector<Facet> facets = {
      make_facet(i0, i1, i2, pts, interior), make_facet(i0, i1, i3, pts, interior),
      make_facet(i0, i2, i3, pts, interior), make_facet(i1, i2, i3, pts, interior)};

  for (int p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    std::vector<int> visible;
    for (int f = 0; f < static_cast<int>(facets.size()); ++f) {
      if (facets[f].alive && signed_dist(facets[f], pts[p]) > eps) visible.push_back(f);
    }
    if (visible.empty()) continue;  // inside or on the surface

    // Horizon: directed edges of visible facets whose reverse is not visible.
    std::map<std::pair<int, int>, int> edge_count;
    for (int f : visible) {
      const auto& t = facets[f].v;
      for (int e = 0; e < 3; ++e) {
        const int a = t[e], b = t[(e + 1) % 3];
        edge_count[{std::min(a, b), std::max(a, b)}]++;
      }
    }
    std::vector<std::pair<int, int>> horizon;
    for (int f : visible) {
      const auto& t = facets[f].v;
      for (int e = 0; e < 3; ++e) {
        const int a = t[e], b = t[(e + 1) % 3];
        if (edge_count[{std::min(a, b), std::max(a, b)}] == 1) horizon.push_back({a, b});
      }
    }
    for (int f : visible) facets[f].alive = false;
    for (const auto& [a, b] : horizon) facets.push_back(make_facet(a, b, p, pts, interior));
  }

  // Collect planes per vertex; a corner of a 3-polytope meets at least three
  // distinct facet planes, face interiors meet one and edge interiors two.
  std::map<int, std::vector<std::pair<Vector3d, double>>> planes;
  for (const auto& f : facets) {
    if (!f.alive) continue;
    out.facets.push_back({src[f.v[0]], src[f.v[1]], src[f.v[2]]});
    for (int vid : f.v) {
      auto& lst = planes[vid];
      bool seen = false;
      for (const auto& [pn, po] : lst) {
        if ((pn - f.normal).norm() < 1e-7 && std::abs(po - f.offset) < eps * 10) {
          seen = true;
          break;
        }
      }
      if (!seen) lst.push_back({f.normal, f.offset});
    }
  }
  for (const auto& [vid, lst] : planes) {
    if (lst.size() >= 3) out.vertex_ids.push_back(src[vid]);
  }
  std::sort(out.vertex_ids.begin(), out.vertex_ids.end());
  return out;
}

}  // namespace gfhull::geo::detail
