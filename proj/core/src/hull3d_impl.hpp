#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace gfhull::geo::detail {

// Incremental 3D convex hull over point columns.
//
// rank is the affine rank of the input (0 point, 1 segment, 2 planar,
// 3 full-dimensional).  vertex_ids lists the extreme points of the input in
// every rank; facets carry outward-oriented triangles and are only populated
// at rank 3.  Triangulations of flat faces keep coplanar triangles; vertices
// lying in the relative interior of a face or edge are pruned from
// vertex_ids.
struct Hull3D {
  int rank = 0;
  std::vector<int> vertex_ids;
  std::vector<std::array<int, 3>> facets;
};

Hull3D hull3d(const Eigen::MatrixXd& pts);

}  // namespace gfhull::geo::detail
