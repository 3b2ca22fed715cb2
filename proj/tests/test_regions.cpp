#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "gfhull/regions.hpp"
#include "gfhull/rng.hpp"

using namespace gfhull;
using regions::Mode;
using regions::RegionSequence;
using regions::Shape;
using regions::SiteSet;

namespace {

RegionSequence cube_seq(int m, Mode mode, std::vector<long long> idx) {
  RegionSequence seq;
  seq.shape = Shape::cube;
  seq.m = m;
  seq.mode = mode;
  seq.index_set = std::move(idx);
  return seq;
}

std::set<std::vector<std::int64_t>> site_key_set(const SiteSet& s) {
  std::set<std::vector<std::int64_t>> keys;
  for (std::size_t i = 0; i < s.count(); ++i)
    keys.insert(std::vector<std::int64_t>(s.site(i), s.site(i) + s.m));
  return keys;
}

}  // namespace

TEST_CASE("b normalizer") {
  CHECK(regions::b_normalizer(1.0) == doctest::Approx(std::sqrt(2.0 * std::log(2.0))));
  CHECK(regions::b_normalizer(2.0) == doctest::Approx(1.1774100226));
  CHECK(regions::b_normalizer(std::exp(2.0)) == doctest::Approx(2.0));
  CHECK_THROWS_AS(regions::b_normalizer(0.0), std::invalid_argument);
  CHECK_THROWS_AS(regions::b_normalizer(-3.0), std::invalid_argument);
  // nondecreasing, bounded below by b(2)
  double prev = 0.0;
  for (double t : {0.5, 1.0, 2.0, 5.0, 100.0, 1e6}) {
    const double b = regions::b_normalizer(t);
    CHECK(b >= std::sqrt(2.0 * std::log(2.0)) - 1e-15);
    CHECK(b >= prev);
    prev = b;
  }
}

TEST_CASE("lattice sites: discrete cube") {
  const auto res = regions::lattice_sites(cube_seq(2, Mode::discrete, {5}), 5);
  CHECK(res.sites.count() == 36);
  CHECK(res.nu == 36.0);
  CHECK(res.sites.grid_dims.has_value());
  CHECK((*res.sites.grid_dims)[0] == 6);
}

TEST_CASE("lattice sites: continuous cube measure is exact") {
  const auto res = regions::lattice_sites(cube_seq(2, Mode::continuous, {7}), 7, 0.5);
  CHECK(res.nu == doctest::Approx(49.0));
  CHECK(res.sites.count() == 15 * 15);  // 0..14 per axis at mesh 0.5
  CHECK(res.sites.mesh == 0.5);
  const auto p = res.sites.position(res.sites.count() - 1);
  CHECK(p[0] == doctest::Approx(7.0));
}

TEST_CASE("lattice sites: discrete ball matches a brute-force scan") {
  RegionSequence seq;
  seq.shape = Shape::ball;
  seq.m = 2;
  seq.mode = Mode::discrete;
  seq.index_set = {10};
  const auto res = regions::lattice_sites(seq, 10);
  std::size_t count = 0;
  for (int x = -10; x <= 10; ++x)
    for (int y = -10; y <= 10; ++y)
      if (x * x + y * y <= 100) ++count;
  CHECK(res.sites.count() == count);
  CHECK(res.nu == static_cast<double>(count));
  CHECK(!res.sites.grid_dims.has_value());
}

TEST_CASE("lattice sites: unrealizable index") {
  CHECK_THROWS_AS(regions::lattice_sites(cube_seq(1, Mode::discrete, {1}), 0),
                  std::invalid_argument);
}

TEST_CASE("region monotonicity: strict site-set inclusion along the index set") {
  for (Shape shape : {Shape::cube, Shape::ball}) {
    RegionSequence seq;
    seq.shape = shape;
    seq.m = 2;
    seq.mode = Mode::discrete;
    seq.index_set = {2, 5, 9};
    std::set<std::vector<std::int64_t>> prev;
    double prev_nu = 0.0;
    for (long long n : seq.index_set) {
      const auto res = regions::lattice_sites(seq, n);
      const auto keys = site_key_set(res.sites);
      CHECK(keys.size() > prev.size());
      for (const auto& k : prev) CHECK(keys.count(k) == 1);
      CHECK(res.nu > prev_nu);
      prev = keys;
      prev_nu = res.nu;
    }
  }
}

TEST_CASE("boundary ratio closed forms") {
  const auto cube = cube_seq(2, Mode::continuous, {100});
  CHECK(regions::boundary_ratio(cube, 100, 1.0) == doctest::Approx(0.08));

  RegionSequence ball;
  ball.shape = Shape::ball;
  ball.m = 2;
  ball.mode = Mode::continuous;
  ball.index_set = {100};
  CHECK(regions::boundary_ratio(ball, 100, 1.0) == doctest::Approx(0.04));

  // strictly decreasing in n, increasing in eps
  for (Shape shape : {Shape::cube, Shape::ball}) {
    RegionSequence seq;
    seq.shape = shape;
    seq.m = 2;
    seq.mode = Mode::continuous;
    seq.index_set = {10, 100, 1000};
    double prev = 1e300;
    for (long long n : seq.index_set) {
      const double r = regions::boundary_ratio(seq, n, 1.0);
      CHECK(r < prev);
      prev = r;
    }
    CHECK(regions::boundary_ratio(seq, 50, 0.5) < regions::boundary_ratio(seq, 50, 2.0));
  }

  // small n clamps the inner offset at zero
  CHECK(regions::boundary_ratio(cube_seq(2, Mode::continuous, {1}), 1, 1.0) ==
        doctest::Approx(9.0));

  CHECK_THROWS_AS(regions::boundary_ratio(cube_seq(2, Mode::discrete, {10}), 10, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(regions::boundary_ratio(cube, 100, 0.0), std::invalid_argument);
}

TEST_CASE("box shape: sites, measure and boundary ratio") {
  RegionSequence seq;
  seq.shape = Shape::box;
  seq.m = 2;
  seq.mode = Mode::continuous;
  seq.index_set = {10};
  seq.box_rates = {1.0, 2.0};
  const auto res = regions::lattice_sites(seq, 10, 1.0);
  CHECK(res.nu == doctest::Approx(200.0));
  CHECK(res.sites.count() == 11 * 21);
  const double ratio = regions::boundary_ratio(seq, 10, 1.0);
  CHECK(ratio == doctest::Approx((12.0 * 22.0 - 8.0 * 18.0) / 200.0));
}

TEST_CASE("separated subset: all sites kept when a <= lattice spacing") {
  const auto res = regions::lattice_sites(cube_seq(2, Mode::discrete, {4}), 4);
  const auto sep = regions::separated_subset(res.sites, 1.0);
  CHECK(sep.nu_tilde == res.sites.count());
  sep.verify();
}

TEST_CASE("separated subset: [0,20]^2 with a = 3, exhaustive invariants") {
  const auto res = regions::lattice_sites(cube_seq(2, Mode::discrete, {20}), 20);
  const auto sep = regions::separated_subset(res.sites, 3.0);
  sep.verify();
  // greedy lexicographic scan picks the sublattice {0,3,...,18}^2
  CHECK(sep.nu_tilde == 49);
  CHECK(static_cast<double>(res.sites.count()) <= 36.0 * sep.nu_tilde);

  // idempotence: re-running on the selection returns it unchanged
  const auto again = regions::separated_subset(sep.selected, 3.0);
  CHECK(again.nu_tilde == sep.nu_tilde);
  CHECK(again.selected.coords == sep.selected.coords);
}

TEST_CASE("separated subset: single site") {
  SiteSet one;
  one.m = 2;
  one.coords = {7, -3};
  const auto sep = regions::separated_subset(one, 100.0);
  CHECK(sep.nu_tilde == 1);
  CHECK(sep.selected.coords == one.coords);
  sep.verify();
}

TEST_CASE("separated subset: errors") {
  SiteSet s;
  s.m = 1;
  s.coords = {0, 1, 2};
  CHECK_THROWS_AS(regions::separated_subset(s, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(regions::separated_subset(s, -1.0), std::invalid_argument);
  SiteSet empty;
  empty.m = 1;
  CHECK_THROWS_AS(regions::separated_subset(empty, 1.0), std::invalid_argument);
}

TEST_CASE("separated subset: incremental extension never revises selections") {
  const auto inner = regions::lattice_sites(cube_seq(2, Mode::discrete, {10}), 10);
  const double a = 2.5;
  const auto sep = regions::separated_subset(inner.sites, a);

  // new ring: sites of T_{n+1} at sup-distance > a from T_n
  const auto outer = regions::lattice_sites(cube_seq(2, Mode::discrete, {16}), 16);
  SiteSet ring;
  ring.m = 2;
  for (std::size_t i = 0; i < outer.sites.count(); ++i) {
    const auto* p = outer.sites.site(i);
    std::int64_t dist = 1 << 30;
    for (std::size_t j = 0; j < inner.sites.count(); ++j) {
      const auto* q = inner.sites.site(j);
      dist = std::min<std::int64_t>(dist, std::max(std::abs(p[0] - q[0]), std::abs(p[1] - q[1])));
    }
    if (static_cast<double>(dist) > a) {
      ring.coords.push_back(p[0]);
      ring.coords.push_back(p[1]);
    }
  }
  const auto ext = regions::extend_separated(sep, ring);
  CHECK(ext.nu_tilde > sep.nu_tilde);
  // previous selections intact as a prefix
  for (std::size_t i = 0; i < sep.selected.coords.size(); ++i)
    CHECK(ext.selected.coords[i] == sep.selected.coords[i]);
  // pairwise separation still holds on the union
  for (std::size_t i = 0; i < ext.nu_tilde; ++i) {
    for (std::size_t j = i + 1; j < ext.nu_tilde; ++j) {
      const auto* p = ext.selected.site(i);
      const auto* q = ext.selected.site(j);
      CHECK(std::max(std::abs(p[0] - q[0]), std::abs(p[1] - q[1])) >= a);
    }
  }
}

TEST_CASE("cube cover: exact counts and invariants") {
  const auto seq = cube_seq(2, Mode::continuous, {10});
  const auto cover = regions::cube_cover(seq, 10, 1.0);
  CHECK(cover.nu_tilde == 100);  // boundary-touching cubes excluded at 10/1
  CHECK(cover.t_nh_measure == doctest::Approx(100.0));
  CHECK(cover.coverage_ratio == doctest::Approx(1.0));

  for (std::size_t c = 0; c < cover.count(); ++c) {
    const auto* k = cover.cube_indices.data() + c * 2;
    CHECK(k[0] >= 0);
    CHECK(k[0] <= 9);
    CHECK(k[1] >= 0);
    CHECK(k[1] <= 9);
  }

  CHECK_THROWS_AS(regions::cube_cover(cube_seq(2, Mode::discrete, {10}), 10, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(regions::cube_cover(seq, 10, 0.0), std::invalid_argument);
}

TEST_CASE("cube cover: coverage ratio decreases toward 1 with n") {
  const auto seq = cube_seq(2, Mode::continuous, {10, 100});
  const double r10 = regions::cube_cover(seq, 10, 0.3).coverage_ratio;
  const double r100 = regions::cube_cover(seq, 100, 0.3).coverage_ratio;
  const auto expect = [](double n) {
    const double covered = std::ceil(n / 0.3) * 0.3;
    return (covered / n) * (covered / n);
  };
  CHECK(r10 == doctest::Approx(expect(10)));
  CHECK(r100 == doctest::Approx(expect(100)));
  CHECK(r100 < r10);
  CHECK(r100 >= 1.0);
}

TEST_CASE("cube cover: ball covering measure bound") {
  RegionSequence seq;
  seq.shape = Shape::ball;
  seq.m = 2;
  seq.mode = Mode::continuous;
  seq.index_set = {4};
  const double h = 0.25;
  const auto cover = regions::cube_cover(seq, 4, h);
  const double nu = M_PI * 16.0;
  // T_n subset T_{n,h}
  CHECK(cover.t_nh_measure >= nu);
  // lambda(T_{n,h} \ T_n) <= lambda((dT_n)^{2 sqrt(m) h})
  const double eps = 2.0 * std::sqrt(2.0) * h;
  const double shell = M_PI * (std::pow(4.0 + eps, 2) - std::pow(4.0 - eps, 2));
  CHECK(cover.t_nh_measure - nu <= shell);
}

TEST_CASE("b(nu_tilde) ~ b(nu) under the covering-cardinality sandwich") {
  // Greedy selection on a full cube lattice with integer a is the sublattice
  // of spacing a (verified exhaustively at side 20 above), so for large sides
  // the realized cardinality is (floor(s/a)+1)^2 and the normalizer ratio can
  // be evaluated in closed form.
  auto ratio_for = [](double side, double a) {
    const double nu = (side + 1.0) * (side + 1.0);
    const double step = std::floor(side / a) + 1.0;
    return regions::b_normalizer(step * step) / regions::b_normalizer(nu);
  };
  // ratio <= 1 always, nondecreasing with nu, and tends to 1
  for (const double a : {1.0, 2.0, 3.0}) {
    double prev = 0.0;
    for (const double side : {100.0, 1000.0, 10000.0}) {
      const double r = ratio_for(side, a);
      CHECK(r <= 1.0);
      CHECK(r >= prev);
      prev = r;
    }
    CHECK(prev > 0.93);
  }
  // the [0.9, 1] band holds at nu ~ 1e4 for a <= 2 and from nu ~ 1e6 on for
  // a = 3 (at nu = 1e4 with a = 3 the exact ratio is 0.874, below the band)
  CHECK(ratio_for(100.0, 2.0) >= 0.9);
  CHECK(ratio_for(1000.0, 3.0) >= 0.9);
  CHECK(ratio_for(100.0, 3.0) == doctest::Approx(0.874).epsilon(0.01));
  // worst corner of the sandwich nu <= (2a)^m nu_tilde clears 0.9 only for
  // very large nu (ln nu >= ln 36 / 0.19 ~ 18.9)
  CHECK(regions::b_normalizer(1e9 / 36.0) / regions::b_normalizer(1e9) >= 0.9);
  CHECK(regions::b_normalizer(1e6 / 36.0) / regions::b_normalizer(1e6) ==
        doctest::Approx(0.8606).epsilon(0.001));
}

TEST_CASE("region sequence validation") {
  auto seq = cube_seq(2, Mode::discrete, {10, 10});
  CHECK_THROWS_AS(seq.validate(), std::invalid_argument);
  seq.index_set = {10, 5};
  CHECK_THROWS_AS(seq.validate(), std::invalid_argument);
  seq.index_set = {};
  CHECK_THROWS_AS(seq.validate(), std::invalid_argument);
  seq.index_set = {5, 10};
  CHECK_NOTHROW(seq.validate());
  seq.shape = Shape::box;
  CHECK_THROWS_AS(seq.validate(), std::invalid_argument);  // missing rates
  seq.box_rates = {1.0, -2.0};
  CHECK_THROWS_AS(seq.validate(), std::invalid_argument);
  seq.box_rates = {1.0, 2.0};
  CHECK_NOTHROW(seq.validate());
}
