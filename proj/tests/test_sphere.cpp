#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "kscolour/parallel.hpp"
#include "kscolour/random.hpp"
#include "kscolour/sphere.hpp"

using namespace kscolour;

namespace {

double theta0() { return std::acos(3.0 / std::sqrt(10.0)); }

}  // namespace

TEST_CASE("random streams are keyed, not stateful across keys") {
  RandomStream a(7, 1), b(7, 1), c(7, 2), d(8, 1);
  for (int i = 0; i < 100; ++i) {
    const auto va = a.next_u64();
    CHECK(va == b.next_u64());
    CHECK(va != c.next_u64());
    CHECK(va != d.next_u64());
  }
  const RandomStream base(3, 9);
  RandomStream s0 = base.substream(0), s0b = base.substream(0), s1 = base.substream(1);
  CHECK(s0.next_u64() == s0b.next_u64());
  CHECK(s0.next_u64() != s1.next_u64());
}

TEST_CASE("uniform and uniform_int stay in range") {
  RandomStream rng(1, 0);
  std::array<int, 5> hist{};
  for (int i = 0; i < 50'000; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const auto k = rng.uniform_int(-2, 2);
    REQUIRE(k >= -2);
    REQUIRE(k <= 2);
    ++hist[static_cast<std::size_t>(k + 2)];
  }
  for (int h : hist) CHECK(std::abs(h - 10'000) < 500);
  CHECK(rng.uniform_int(4, 4) == 4);
  CHECK_THROWS_AS(rng.uniform_int(3, 2), std::invalid_argument);
}

TEST_CASE("normal has unit variance") {
  RandomStream rng(2, 0);
  double s = 0, s2 = 0;
  const int n = 200'000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    s += x;
    s2 += x * x;
  }
  CHECK(std::abs(s / n) < 0.01);
  CHECK(std::abs(s2 / n - 1.0) < 0.02);
}

TEST_CASE("UnitVec normalizes and rejects degenerate input") {
  const UnitVec u(3, 0, 4);
  CHECK(u.x() == doctest::Approx(0.6));
  CHECK(u.z() == doctest::Approx(0.8));
  CHECK_THROWS_AS(UnitVec(0, 0, 0), std::domain_error);
  CHECK_THROWS_AS(UnitVec(std::numeric_limits<double>::quiet_NaN(), 0, 1), std::domain_error);
  CHECK_THROWS_AS(UnitVec(std::numeric_limits<double>::infinity(), 0, 1), std::domain_error);
}

TEST_CASE("angles") {
  const UnitVec x(1, 0, 0), y(0, 1, 0), d(1, 1, 0);
  CHECK(angle_between(x, y) == doctest::Approx(kPi / 2));
  CHECK(angle_between(x, -x) == doctest::Approx(kPi));
  CHECK(line_angle(x, -x) == doctest::Approx(0.0));
  CHECK(line_angle(x, d) == doctest::Approx(kPi / 4));
  CHECK(line_angle(x, -d) == doctest::Approx(kPi / 4));
  // tiny angles keep full relative precision
  const UnitVec e(1, 1e-9, 0);
  CHECK(angle_between(x, e) == doctest::Approx(1e-9).epsilon(1e-6));
}

TEST_CASE("cap measure") {
  CHECK(cap_measure(kPi) == 1.0);
  CHECK(cap_measure(kPi / 2) == doctest::Approx(0.5));
  CHECK(cap_measure(theta0() / 2) == doctest::Approx(0.006456271181251635).epsilon(1e-12));
  CHECK_THROWS_AS(Cap(UnitVec(), 0.0), std::domain_error);
  CHECK_THROWS_AS(Cap(UnitVec(), -0.1), std::domain_error);
  CHECK_THROWS_AS(Cap(UnitVec(), 4.0), std::domain_error);
  CHECK_THROWS_AS(Cap(UnitVec(), std::numeric_limits<double>::quiet_NaN()), std::domain_error);
}

TEST_CASE("cap sampling stays inside and matches the polar-angle law") {
  RandomStream rng(5, 0);
  const UnitVec center(1, 2, -2);
  const Cap cap(center, 0.3);
  double sum = 0, sum2 = 0;
  const int n = 100'000;
  for (const auto& p : sample_uniform_cap(rng, cap, n)) {
    REQUIRE(cap.contains(p));
    const double t = angle_between(center, p);
    sum += t;
    sum2 += t * t;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum2 / n - mean * mean) / n);
  // E[theta] = (sin r - r cos r) / (1 - cos r) for r = 0.3
  CHECK(std::abs(mean - 0.19969903281318770) < 4 * se);
}

TEST_CASE("whole-sphere cap and uniform sphere moments") {
  RandomStream rng(6, 0);
  double z = 0, z2 = 0;
  const int n = 200'000;
  for (const auto& p : sample_uniform_sphere(rng, n)) {
    z += p.z();
    z2 += p.z() * p.z();
  }
  CHECK(std::abs(z / n) < 0.01);
  CHECK(std::abs(z2 / n - 1.0 / 3.0) < 0.005);
  const Cap all(UnitVec(0, 1, 0), kPi);
  for (const auto& p : sample_uniform_cap(rng, all, 1000)) CHECK(all.contains(p));
}

TEST_CASE("property: random triads are orthonormal") {
  RandomStream rng(7, 0);
  for (int i = 0; i < 10'000; ++i) {
    const auto t = sample_uniform_triad(rng);
    for (int a = 0; a < 3; ++a) {
      REQUIRE(norm(t[a]) == doctest::Approx(1.0).epsilon(1e-12));
      for (int b = a + 1; b < 3; ++b) REQUIRE(std::abs(dot(t[a], t[b])) < 1e-12);
    }
  }
}

TEST_CASE("property: rotations preserve angles") {
  RandomStream rng(8, 0);
  for (int i = 0; i < 10'000; ++i) {
    const Rotation r{sample_uniform_sphere(rng), 2 * kPi * rng.uniform()};
    const UnitVec a = sample_uniform_sphere(rng), b = sample_uniform_sphere(rng);
    REQUIRE(dot(rotate(r, a), rotate(r, b)) == doctest::Approx(dot(a, b)).epsilon(1e-12));
    REQUIRE(dot(rotate(r, r.axis.vec()), r.axis) == doctest::Approx(1.0));
  }
  const Vec3 y = rotate(Rotation{UnitVec(0, 0, 1), kPi / 2}, Vec3{1, 0, 0});
  CHECK(y.x == doctest::Approx(0.0));
  CHECK(y.y == doctest::Approx(1.0));
}

TEST_CASE("tangent frames are orthonormal") {
  RandomStream rng(9, 0);
  for (int i = 0; i < 1000; ++i) {
    const UnitVec n = sample_uniform_sphere(rng);
    const auto [e1, e2] = tangent_frame(n);
    REQUIRE(std::abs(dot(e1, n.vec())) < 1e-12);
    REQUIRE(std::abs(dot(e2, n.vec())) < 1e-12);
    REQUIRE(std::abs(dot(e1, e2)) < 1e-12);
    REQUIRE(norm(e1) == doctest::Approx(1.0));
    REQUIRE(norm(cross(e1, e2) - n.vec()) < 1e-12);
  }
}

TEST_CASE("fibonacci grid covering radius is below the published spacing") {
  for (std::size_t n : {100u, 1000u, 10000u}) {
    const auto grid = fibonacci_grid(n);
    REQUIRE(grid.size() == n);
    RandomStream rng(10, n);
    double worst = 0;
    for (int t = 0; t < 5000; ++t) {
      const UnitVec p = sample_uniform_sphere(rng);
      double best = kPi;
      for (const auto& g : grid) best = std::min(best, angle_between(p, g));
      worst = std::max(worst, best);
    }
    CHECK(worst < fibonacci_spacing(n));
    CHECK(worst < 3.0 * std::sqrt(4 * kPi / static_cast<double>(n)));
  }
}

TEST_CASE("equal-area strata partition the sphere") {
  const auto strata = equal_area_strata(16, 32);
  REQUIRE(strata.size() == 512);
  double total = 0;
  for (const auto& s : strata) {
    const double m = (s.z_hi - s.z_lo) * (s.phi_hi - s.phi_lo) / (4 * kPi);
    CHECK(m == doctest::Approx(1.0 / 512));
    total += m;
  }
  CHECK(total == doctest::Approx(1.0));
  RandomStream rng(11, 0);
  for (const auto& s : strata) {
    const UnitVec p = sample_in_stratum(rng, s);
    CHECK(p.z() >= s.z_lo - 1e-12);
    CHECK(p.z() <= s.z_hi + 1e-12);
  }
}

TEST_CASE("parallel_for visits each index once and propagates errors") {
  for (std::size_t threads : {1u, 2u, 7u, 0u}) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), threads, [&](std::size_t i) { ++hits[i]; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  }
  CHECK_THROWS_AS(parallel_for(100, 4,
                               [](std::size_t i) {
                                 if (i == 42) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("pairwise_sum is exact on integers") {
  std::vector<std::uint64_t> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  CHECK(pairwise_sum(v) == 999u * 1000u / 2u);
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}
