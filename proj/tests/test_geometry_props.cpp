#include <doctest.h>

#include <cmath>

#include "gfhull/functionals.hpp"
#include "gfhull/geometry.hpp"
#include "oracles.hpp"

using namespace gfhull;
using geo::Mat;
using geo::Vec;

// Property-style suites over generated inputs; generators run on the counter
// RNG so every run sees the same cases.

TEST_CASE("hull operator is 1-Lipschitz for the Hausdorff metric (100 pairs)") {
  const Mat dirs = geo::equispaced_directions(720);
  for (int trial = 0; trial < 100; ++trial) {
    const int count = 5 + static_cast<int>(rng::draw_u64(rng::fold(500, trial), 0) % 40);
    const Mat a = oracles::random_points(2, count, rng::fold(501, trial));
    const Mat b = oracles::random_points(2, count, rng::fold(502, trial));
    const auto ha = geo::convex_hull(a);
    const auto hb = geo::convex_hull(b);
    const double rhs = geo::hausdorff_pointsets(a, b);
    // body distance via the exact convex oracle and via supports
    const double lhs_exact = oracles::hausdorff_convex_2d(ha.vertices(), hb.vertices());
    const double lhs_support = geo::hausdorff_support(ha, hb, dirs);
    CHECK(lhs_exact <= rhs + 1e-12);
    CHECK(lhs_support <= rhs + 1e-12);
  }
}

TEST_CASE("support hausdorff vs exact oracle within 2% (100 pairs)") {
  const Mat dirs = geo::equispaced_directions(720);
  for (int trial = 0; trial < 100; ++trial) {
    const int na = 4 + static_cast<int>(rng::draw_u64(rng::fold(600, trial), 0) % 30);
    const int nb = 4 + static_cast<int>(rng::draw_u64(rng::fold(600, trial), 1) % 30);
    const Mat a = oracles::random_points(2, na, rng::fold(601, trial), 2.0);
    const Mat b = oracles::random_points(2, nb, rng::fold(602, trial), 0.7);
    const auto ha = geo::convex_hull(a);
    const auto hb = geo::convex_hull(b);
    const double exact = oracles::hausdorff_convex_2d(ha.vertices(), hb.vertices());
    const double approx = geo::hausdorff_support(ha, hb, dirs);
    CHECK(approx <= exact * (1.0 + 1e-9) + 1e-12);
    CHECK(approx >= exact * 0.98 - 1e-12);
  }
}

TEST_CASE("functionals are monotone under subset sampling") {
  for (int trial = 0; trial < 40; ++trial) {
    const Mat all = oracles::random_points(2, 60, rng::fold(700, trial));
    const int keep = 5 + static_cast<int>(rng::draw_u64(rng::fold(701, trial), 0) % 40);
    const auto big = geo::convex_hull(all);
    const auto small = geo::convex_hull(Mat(all.leftCols(keep)));
    CHECK(geo::volume(small) <= geo::volume(big) + 1e-12);
    CHECK(geo::diameter(small) <= geo::diameter(big) + 1e-12);
  }
  // and in dimension 3
  for (int trial = 0; trial < 10; ++trial) {
    const Mat all = oracles::random_points(3, 50, rng::fold(702, trial));
    const auto big = geo::convex_hull(all);
    const auto small = geo::convex_hull(Mat(all.leftCols(12)));
    CHECK(geo::volume(small) <= geo::volume(big) + 1e-12);
    CHECK(geo::diameter(small) <= geo::diameter(big) + 1e-12);
  }
}

TEST_CASE("homogeneity f(cA) = c^p f(A) to 1e-9 relative") {
  const auto diam = geo::HomogeneousFunctional::make_diameter();
  const auto vol2 = geo::HomogeneousFunctional::make_volume(2);
  for (int trial = 0; trial < 25; ++trial) {
    const Mat pts = oracles::random_points(2, 30, rng::fold(800, trial));
    const auto body = geo::convex_hull(pts);
    for (double c : {0.0, 0.5, 1.0, 2.0, 10.0}) {
      const auto scaled = geo::scale(body, c);
      for (const auto* f : {&diam, &vol2}) {
        const double expect = std::pow(c, f->degree()) * (*f)(body);
        const double got = (*f)(scaled);
        CHECK(std::abs(got - expect) <= 1e-9 * (1.0 + expect));
      }
    }
  }
}

TEST_CASE("growth: volume(A) <= d(A)^d and f(A) <= C d(A)^p") {
  for (int trial = 0; trial < 25; ++trial) {
    const Mat pts2 = oracles::random_points(2, 40, rng::fold(900, trial));
    const auto b2 = geo::convex_hull(pts2);
    CHECK(geo::volume(b2) <= std::pow(geo::diameter(b2), 2) + 1e-12);
    const auto v2 = geo::HomogeneousFunctional::make_volume(2);
    CHECK(v2(b2) <= v2.growth_constant() * std::pow(geo::diameter(b2), 2) * (1.0 + 1e-9));

    const Mat pts3 = oracles::random_points(3, 40, rng::fold(901, trial));
    const auto b3 = geo::convex_hull(pts3);
    CHECK(geo::volume(b3) <= std::pow(geo::diameter(b3), 3) + 1e-12);
  }
}

TEST_CASE("functionals are nonnegative and vanish on points") {
  Mat single(2, 1);
  single << 0.3, -0.7;
  const auto pt = geo::convex_hull(single);
  CHECK(geo::volume(pt) == 0.0);
  CHECK(geo::diameter(pt) == 0.0);
  const auto w = geo::HomogeneousFunctional::make_width(Vec(Vec::Unit(2, 1)));
  CHECK(w(pt) == doctest::Approx(0.0));
}

TEST_CASE("2D hull output vertices are extreme: removing one shrinks the support") {
  for (int trial = 0; trial < 20; ++trial) {
    const Mat pts = oracles::random_points(2, 40, rng::fold(1000, trial));
    const auto body = geo::convex_hull(pts);
    const Eigen::Index k = body.vertex_count();
    REQUIRE(k >= 3);
    for (Eigen::Index drop = 0; drop < k; ++drop) {
      Mat rest(2, k - 1);
      Eigen::Index c = 0;
      for (Eigen::Index j = 0; j < k; ++j) {
        if (j != drop) rest.col(c++) = body.vertices().col(j);
      }
      CHECK(!geo::contains_point(geo::convex_hull(rest), body.vertices().col(drop), 1e-9));
    }
  }
}
