#pragma once

#include <string>

#include "gfhull/geometry.hpp"

// Nonnegative, monotone, degree-p homogeneous set functionals and their
// analytic values on concentration ellipsoids.

namespace gfhull::geo {

enum class FunctionalKind { diameter, volume, width };

// Lebesgue measure of the unit ball in R^d.
double unit_ball_volume(int dim);

class HomogeneousFunctional {
 public:
  static HomogeneousFunctional make_diameter();
  static HomogeneousFunctional make_volume(int dim);
  // Width along a unit direction: M(theta) + M(-theta).
  static HomogeneousFunctional make_width(Vec theta);

  FunctionalKind kind() const { return kind_; }
  int degree() const { return degree_; }                  // p
  double growth_constant() const { return growth_; }      // f(A) <= C d(A)^p

  double operator()(const ConvexBody& body) const;
  // Analytic value on the ellipsoid: 2*sqrt(lambda_max) for the diameter,
  // unit_ball_volume(d)*sqrt(det sigma) for the volume, 2*sqrt(theta' sigma
  // theta) for the width.
  double value_on(const Ellipsoid& e) const;

  std::string name() const;

 private:
  FunctionalKind kind_ = FunctionalKind::diameter;
  int degree_ = 1;
  double growth_ = 1.0;
  Vec theta_;
};

}  // namespace gfhull::geo
