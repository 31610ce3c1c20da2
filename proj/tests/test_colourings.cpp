#include <doctest.h>

#include <cmath>
#include <set>

#include "kscolour/colourings.hpp"

using namespace kscolour;

namespace {

const double kPolarMeasure = 0.87024348800307824;  // 1 - 1/sqrt2 + 1/sqrt3

RationalRay rr(long long x, long long y, long long z) { return make_rational_ray(x, y, z); }

}  // namespace

TEST_CASE("polar-cap rule") {
  const auto c = polar_cap_colouring();
  CHECK(c->kind() == ColouringKind::Regular);
  CHECK(c->query(UnitVec(0, 0, 1)) == Colour::Zero);
  CHECK(c->query(UnitVec(1, 0, 0)) == Colour::One);
  const double t = 50.0 * kPi / 180.0;
  CHECK(c->query(UnitVec(std::sin(t), 0, std::cos(t))) == Colour::Undefined);
  CHECK(c->query(rr(0, 3, 4)) == Colour::Zero);     // z^2 = 16/25
  CHECK(c->query(rr(2, 2, -1)) == Colour::One);     // z^2 = 1/9
  CHECK(c->query(rr(1, 2, 2)) == Colour::Undefined);  // z^2 = 4/9
  // boundary circles are excluded
  CHECK(c->query(UnitVec(1, 0, 1)) == Colour::Undefined);
  CHECK(c->query(UnitVec(std::sqrt(2.0), 0, 1)) == Colour::Undefined);
}

TEST_CASE("property: every built-in colouring is antipodally symmetric") {
  RandomStream rng(51, 0);
  for (const auto& name : colouring_names()) {
    const auto c = make_colouring(name);
    for (int i = 0; i < 100'000; ++i) {
      const UnitVec n = sample_uniform_sphere(rng);
      REQUIRE(c->query(n) == c->query(-n));
    }
    for (int i = 0; i < 2000; ++i) {
      const auto t = rational_triad_from_quaternion(rng.uniform_int(-40, 40), rng.uniform_int(-40, 40),
                                                    rng.uniform_int(-40, 40), rng.uniform_int(1, 40));
      const RationalRay& r = t[1];
      const RationalRay neg = make_rational_ray(-r.x(), -r.y(), -r.z());
      REQUIRE(c->query(r) == c->query(neg));
    }
  }
}

TEST_CASE("domain measures") {
  const auto polar = domain_measure(*polar_cap_colouring(), RandomStream(1, 2), 400'000);
  REQUIRE(polar.closed_form);
  CHECK(*polar.closed_form == doctest::Approx(kPolarMeasure).epsilon(1e-15));
  CHECK(std::abs(polar.mc_estimate - kPolarMeasure) < 3 * polar.mc_std_error);
  CHECK(1.0 - polar.value() == doctest::Approx(0.12975651199692176).epsilon(1e-12));

  const auto one = domain_measure(*constant_colouring(1, ConstantDomain::Sphere), RandomStream(1, 2), 10'000);
  CHECK(one.value() == 1.0);
  CHECK(one.mc_estimate == 1.0);

  const auto meyer = domain_measure(*meyer_colouring(), RandomStream(1, 2), 10'000);
  CHECK(meyer.mc_estimate == 0.0);
  CHECK(meyer.value() == 0.0);

  const auto split = domain_measure(*latitude_split_colouring(), RandomStream(1, 2), 10'000);
  CHECK(split.mc_estimate == 1.0);
}

TEST_CASE("KS validation of regular and constant colourings") {
  const auto polar = validate_ks_conditions(*polar_cap_colouring(), RandomStream(5, 1), 100'000);
  CHECK(polar.triad_violations == 0);
  CHECK(polar.pair_violations == 0);
  CHECK(polar.triads_fully_defined > 0);
  CHECK(polar.pairs_checked > polar.triads_fully_defined);

  const auto ones = validate_ks_conditions(*constant_colouring(1, ConstantDomain::Sphere), RandomStream(5, 1), 1000);
  CHECK(ones.triad_violation_rate() == 1.0);
  CHECK(ones.pair_violations == 0);
  CHECK(ones.exemplars.size() == 5);

  const auto zeros = validate_ks_conditions(*constant_colouring(0, ConstantDomain::Sphere), RandomStream(5, 1), 1000);
  CHECK(zeros.pair_violation_rate() == 1.0);

  const auto split = validate_ks_conditions(*latitude_split_colouring(), RandomStream(5, 1), 10'000);
  CHECK(split.triad_violations > 0);
}

TEST_CASE("validation is independent of the thread count") {
  const auto a = validate_ks_conditions(*latitude_split_colouring(), RandomStream(9, 1), 20'000, 1);
  const auto b = validate_ks_conditions(*latitude_split_colouring(), RandomStream(9, 1), 20'000, 6);
  CHECK(a.triad_violations == b.triad_violations);
  CHECK(a.pairs_checked == b.pairs_checked);
  const auto m1 = domain_measure(*polar_cap_colouring(), RandomStream(9, 2), 50'000, 1);
  const auto m2 = domain_measure(*polar_cap_colouring(), RandomStream(9, 2), 50'000, 4);
  CHECK(m1.mc_estimate == m2.mc_estimate);
}

TEST_CASE("samplers return defined points inside the cap") {
  RandomStream rng(52, 0);
  for (const auto& name : colouring_names()) {
    const auto c = make_colouring(name);
    const Cap cap(UnitVec(0.4, -0.3, 0.7), 0.2);
    for (const auto& cp : c->sample_in_domain(cap, rng, 500)) {
      REQUIRE(is_defined(cp.colour));
      REQUIRE(line_angle(cp.point, cap.center()) <= cap.radius() + 1e-12);
      if (c->kind() == ColouringKind::Regular) REQUIRE(c->query(cp.point) == cp.colour);
    }
  }
}

TEST_CASE("Meyer sampler sees both colours in small caps") {
  const auto m = meyer_colouring();
  RandomStream rng(53, 0);
  for (int t = 0; t < 50; ++t) {
    const UnitVec k = sample_uniform_sphere(rng);
    std::set<Colour> seen;
    for (const auto& cp : m->sample_in_domain(Cap(k, 1e-3), rng, 200)) seen.insert(cp.colour);
    CHECK(seen.size() == 2);
  }
  CHECK(m->query(rr(2, -2, 1)) == Colour::Zero);
  CHECK(meyer_colouring(ParityClass::X)->query(rr(1, 2, 2)) == Colour::Zero);
}

TEST_CASE("hybrid composition") {
  const auto h = polar_meyer_hybrid();
  CHECK(h->kind() == ColouringKind::Pseudo);
  CHECK(h->query(rr(0, 3, 4)) == Colour::Zero);
  CHECK(h->query(rr(1, 2, 2)) == Colour::One);  // band: Meyer, X class
  CHECK(h->query(UnitVec(1, 2, 2)) == Colour::Undefined);

  // Straddling the polar-cap boundary: polar points above, Meyer points in the band.
  RandomStream rng(54, 0);
  const double t = kPi / 4;
  const Cap cap(UnitVec(std::sin(t), 0, std::cos(t)), 0.02);
  const auto a = h->sample_in_domain(cap, rng, 400);
  const auto b = h->sample_in_domain(cap, rng, 400);
  REQUIRE(a.size() == 400);
  std::size_t polar_pts = 0, band_pts = 0;
  for (const auto& cp : a) {
    (polar_cap_colouring()->query(cp.point) == Colour::Undefined ? band_pts : polar_pts)++;
  }
  CHECK(polar_pts > 0);
  CHECK(band_pts > 0);
  CHECK_FALSE(a.front().point == b.front().point);
}

TEST_CASE("factory") {
  for (const auto& name : colouring_names()) CHECK(make_colouring(name)->name() == name);
  CHECK_THROWS_AS(make_colouring("nope"), std::invalid_argument);
  CHECK_THROWS_AS(constant_colouring(2, ConstantDomain::Sphere), std::domain_error);
  CHECK(to_string(Colour::Undefined) == "UNDEFINED");
}
