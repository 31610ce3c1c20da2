#include "kscolour/sphere.hpp"

#include <algorithm>
#include <stdexcept>

namespace kscolour {

UnitVec::UnitVec(double x, double y, double z) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (!(n > 0.0) || !std::isfinite(n)) throw std::domain_error("UnitVec: zero or non-finite vector");
  v_ = {x / n, y / n, z / n};
}

double angle_between(const UnitVec& a, const UnitVec& b) {
  // atan2 form stays accurate for nearly parallel and nearly antipodal pairs.
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

double line_angle(const UnitVec& a, const UnitVec& b) {
  return std::atan2(norm(cross(a, b)), std::abs(dot(a, b)));
}

std::array<Vec3, 2> tangent_frame(const UnitVec& n) {
  const double ax = std::abs(n.x()), ay = std::abs(n.y()), az = std::abs(n.z());
  Vec3 axis{};
  if (ax <= ay && ax <= az) {
    axis = {1.0, 0.0, 0.0};
  } else if (ay <= az) {
    axis = {0.0, 1.0, 0.0};
  } else {
    axis = {0.0, 0.0, 1.0};
  }
  Vec3 e1 = axis - dot(axis, n) * n.vec();
  e1 = e1 * (1.0 / norm(e1));
  const Vec3 e2 = cross(n, e1);
  return {e1, e2};
}

Cap::Cap(const UnitVec& center, double radius) : center_(center), radius_(radius) {
  if (!(radius > 0.0) || radius > kPi) throw std::domain_error("Cap: radius must lie in (0, pi]");
}

bool Cap::contains(const UnitVec& p) const { return angle_between(center_, p) <= radius_; }

double cap_measure(double radius) {
  if (!(radius > 0.0) || radius > kPi) throw std::domain_error("cap_measure: radius must lie in (0, pi]");
  if (radius == kPi) return 1.0;
  // sin^2(r/2) == (1 - cos r) / 2 without the cancellation for small r.
  const double s = std::sin(radius / 2.0);
  return s * s;
}

double cap_measure(const Cap& cap) { return cap_measure(cap.radius()); }

Vec3 rotate(const Rotation& r, const Vec3& v) {
  const Vec3& k = r.axis.vec();
  const double c = std::cos(r.angle), s = std::sin(r.angle);
  return v * c + cross(k, v) * s + k * (dot(k, v) * (1.0 - c));
}

UnitVec rotate(const Rotation& r, const UnitVec& v) { return UnitVec(rotate(r, v.vec())); }

UnitVec sample_uniform_sphere(RandomStream& rng) {
  const double z = 2.0 * rng.uniform() - 1.0;
  const double phi = 2.0 * kPi * rng.uniform();
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return UnitVec::from_normalized({s * std::cos(phi), s * std::sin(phi), z});
}

std::vector<UnitVec> sample_uniform_sphere(RandomStream& rng, std::size_t count) {
  std::vector<UnitVec> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample_uniform_sphere(rng));
  return out;
}

UnitVec sample_uniform_cap(RandomStream& rng, const Cap& cap) {
  // 1 - cos(theta) is uniform on [0, 1 - cos r]; written via sin^2 for small caps.
  const double h = 2.0 * cap_measure(cap);
  const double one_minus_cos = h * rng.uniform();
  const double cos_t = 1.0 - one_minus_cos;
  const double sin_t = std::sqrt(std::max(0.0, one_minus_cos * (2.0 - one_minus_cos)));
  const double phi = 2.0 * kPi * rng.uniform();
  const auto [e1, e2] = tangent_frame(cap.center());
  const Vec3 p = e1 * (sin_t * std::cos(phi)) + e2 * (sin_t * std::sin(phi)) + cap.center().vec() * cos_t;
  return UnitVec(p);
}

std::vector<UnitVec> sample_uniform_cap(RandomStream& rng, const Cap& cap, std::size_t count) {
  std::vector<UnitVec> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample_uniform_cap(rng, cap));
  return out;
}

std::array<UnitVec, 3> sample_uniform_triad(RandomStream& rng) {
  const UnitVec a = sample_uniform_sphere(rng);
  const auto [e1, e2] = tangent_frame(a);
  const double phi = 2.0 * kPi * rng.uniform();
  const UnitVec b(e1 * std::cos(phi) + e2 * std::sin(phi));
  const UnitVec c(cross(a, b));
  return {a, b, c};
}

std::vector<UnitVec> fibonacci_grid(std::size_t count) {
  if (count == 0) throw std::domain_error("fibonacci_grid: count must be >= 1");
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  std::vector<UnitVec> out;
  out.reserve(count);
  const auto n = static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * static_cast<double>(i);
    out.push_back(UnitVec::from_normalized({r * std::cos(phi), r * std::sin(phi), z}));
  }
  return out;
}

double fibonacci_spacing(std::size_t count) {
  // Empirically the covering radius is ~0.9 * sqrt(4 pi / N) for N >= 100;
  // tests/test_sphere.cpp checks this bound by brute force.
  return 1.5 * std::sqrt(4.0 * kPi / static_cast<double>(std::max<std::size_t>(count, 1)));
}

std::vector<Stratum> equal_area_strata(std::size_t z_bands, std::size_t phi_sectors) {
  if (z_bands == 0 || phi_sectors == 0) throw std::domain_error("equal_area_strata: empty partition");
  std::vector<Stratum> out;
  out.reserve(z_bands * phi_sectors);
  for (std::size_t i = 0; i < z_bands; ++i) {
    const double z_lo = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(z_bands);
    const double z_hi = -1.0 + 2.0 * static_cast<double>(i + 1) / static_cast<double>(z_bands);
    for (std::size_t j = 0; j < phi_sectors; ++j) {
      const double p_lo = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(phi_sectors);
      const double p_hi = 2.0 * kPi * static_cast<double>(j + 1) / static_cast<double>(phi_sectors);
      out.push_back({z_lo, z_hi, p_lo, p_hi});
    }
  }
  return out;
}

UnitVec sample_in_stratum(RandomStream& rng, const Stratum& s) {
  const double z = s.z_lo + (s.z_hi - s.z_lo) * rng.uniform();
  const double phi = s.phi_lo + (s.phi_hi - s.phi_lo) * rng.uniform();
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return UnitVec::from_normalized({r * std::cos(phi), r * std::sin(phi), z});
}

}  // namespace kscolour
