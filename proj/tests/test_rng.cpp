#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "gfhull/rng.hpp"

using namespace gfhull;

namespace {
double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
}  // namespace

TEST_CASE("normal quantile matches erfc-based CDF round trip") {
  // Phi(Phi^-1(p)) = p to near machine precision across the support.
  for (double p : {1e-12, 1e-9, 1e-4, 0.01, 0.2, 0.5, 0.8, 0.975, 0.9999, 1.0 - 1e-10}) {
    const double x = rng::normal_quantile(p);
    CHECK(std_normal_cdf(x) == doctest::Approx(p).epsilon(1e-9));
  }
  CHECK(rng::normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(rng::normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(rng::normal_quantile(0.1) == -rng::normal_quantile(0.9));
}

TEST_CASE("counter draws are deterministic and key-separated") {
  const auto k1 = rng::replicate_key(42, 0);
  const auto k2 = rng::replicate_key(42, 1);
  CHECK(k1 != k2);
  CHECK(rng::draw_u64(k1, 7) == rng::draw_u64(k1, 7));
  CHECK(rng::draw_u64(k1, 7) != rng::draw_u64(k1, 8));
  CHECK(rng::draw_u64(k1, 7) != rng::draw_u64(k2, 7));

  const double u = rng::uniform(k1, 123);
  CHECK(u > 0.0);
  CHECK(u < 1.0);
}

TEST_CASE("hashed normals have the right first two moments") {
  const auto key = rng::replicate_key(2024, 5);
  const int n = 200000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng::normal(key, static_cast<std::uint64_t>(i));
    s1 += x;
    s2 += x * x;
  }
  const double mean = s1 / n;
  const double var = s2 / n - mean * mean;
  // 4-sigma bands: SE(mean) = 1/sqrt(n), SE(var) ~ sqrt(2/n)
  CHECK(std::abs(mean) < 4.0 / std::sqrt(double(n)));
  CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("adjacent counters are uncorrelated") {
  const auto key = rng::replicate_key(7, 3);
  const int n = 100000;
  double s = 0.0;
  double prev = rng::normal(key, 0);
  for (int i = 1; i < n; ++i) {
    const double x = rng::normal(key, static_cast<std::uint64_t>(i));
    s += prev * x;
    prev = x;
  }
  CHECK(std::abs(s / (n - 1)) < 4.0 / std::sqrt(double(n)));
}
