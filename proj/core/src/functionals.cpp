#include "gfhull/functionals.hpp"

#include <cmath>
#include <stdexcept>

namespace gfhull::geo {

double unit_ball_volume(int dim) {
  if (dim < 1) throw std::invalid_argument("unit_ball_volume: dim must be >= 1");
  return std::pow(M_PI, dim / 2.0) / std::tgamma(dim / 2.0 + 1.0);
}

HomogeneousFunctional HomogeneousFunctional::make_diameter() {
  HomogeneousFunctional f;
  f.kind_ = FunctionalKind::diameter;
  f.degree_ = 1;
  f.growth_ = 1.0;
  return f;
}

HomogeneousFunctional HomogeneousFunctional::make_volume(int dim) {
  HomogeneousFunctional f;
  f.kind_ = FunctionalKind::volume;
  f.degree_ = dim;
  // A body fits in a ball of radius d(A)/2.
  f.growth_ = unit_ball_volume(dim) / std::pow(2.0, dim);
  return f;
}

HomogeneousFunctional HomogeneousFunctional::make_width(Vec theta) {
  if (std::abs(theta.norm() - 1.0) > kUnitTol)
    throw std::invalid_argument("width functional: non-unit direction");
  HomogeneousFunctional f;
  f.kind_ = FunctionalKind::width;
  f.degree_ = 1;
  f.growth_ = 1.0;
  f.theta_ = std::move(theta);
  return f;
}

double HomogeneousFunctional::operator()(const ConvexBody& body) const {
  switch (kind_) {
    case FunctionalKind::diameter:
      return diameter(body);
    case FunctionalKind::volume:
      return volume(body);
    case FunctionalKind::width:
      return body.support(theta_) + body.support(Vec(-theta_));
  }
  throw std::logic_error("unknown functional kind");
}

double HomogeneousFunctional::value_on(const Ellipsoid& e) const {
  switch (kind_) {
    case FunctionalKind::diameter: {
      Eigen::SelfAdjointEigenSolver<Mat> es(e.covariance());
      return 2.0 * std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
    }
    case FunctionalKind::volume:
      return unit_ball_volume(e.dim()) *
             std::sqrt(std::max(0.0, e.covariance().determinant()));
    case FunctionalKind::width:
      return 2.0 * e.support(theta_);
  }
  throw std::logic_error("unknown functional kind");
}

std::string HomogeneousFunctional::name() const {
  switch (kind_) {
    case FunctionalKind::diameter:
      return "diameter";
    case FunctionalKind::volume:
      return "volume";
    case FunctionalKind::width:
      return "width";
  }
  return "?";
}

}  // namespace gfhull::geo
