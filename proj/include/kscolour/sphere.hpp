#pragma once

// Geometric primitives on the unit 2-sphere.
//
// The invariant measure is normalized so that the whole sphere has measure 1;
// every "measure" returned by this library is in those units.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "kscolour/random.hpp"

namespace kscolour {

inline constexpr double kPi = std::numbers::pi;

/// Plain 3-vector used for intermediate arithmetic (differences, cross products).
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  friend constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }
  constexpr bool operator==(const Vec3&) const = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

/// A point of the sphere. The constructor normalizes; zero or non-finite input throws
/// std::domain_error.
class UnitVec {
 public:
  UnitVec() = default;  // (0, 0, 1)
  UnitVec(double x, double y, double z);
  explicit UnitVec(const Vec3& v) : UnitVec(v.x, v.y, v.z) {}

  double x() const { return v_.x; }
  double y() const { return v_.y; }
  double z() const { return v_.z; }
  const Vec3& vec() const { return v_; }
  operator const Vec3&() const { return v_; }  // NOLINT(google-explicit-constructor)

  UnitVec operator-() const { return from_normalized(-v_); }
  bool operator==(const UnitVec&) const = default;

  /// Wraps an already-normalized vector without renormalizing.
  static UnitVec from_normalized(const Vec3& v) {
    UnitVec u;
    u.v_ = v;
    return u;
  }

 private:
  Vec3 v_{0.0, 0.0, 1.0};
};

/// Angle between two points, in [0, pi].
double angle_between(const UnitVec& a, const UnitVec& b);

/// Angle between the lines through a and b (antipodes identified), in [0, pi/2].
double line_angle(const UnitVec& a, const UnitVec& b);

/// Orthonormal pair spanning the tangent plane at n. Deterministic: the first
/// vector is Gram-Schmidt of the coordinate axis along n's smallest component.
std::array<Vec3, 2> tangent_frame(const UnitVec& n);

/// Closed spherical cap: points within `radius` of `center`.
class Cap {
 public:
  /// Throws std::domain_error unless radius is in (0, pi].
  Cap(const UnitVec& center, double radius);

  const UnitVec& center() const { return center_; }
  double radius() const { return radius_; }
  bool contains(const UnitVec& p) const;

 private:
  UnitVec center_;
  double radius_;
};

/// Normalized measure (1 - cos radius) / 2 of a cap.
double cap_measure(const Cap& cap);
double cap_measure(double radius);

/// Rotation about `axis` through `angle` (right-handed).
struct Rotation {
  UnitVec axis;
  double angle = 0.0;
};

Vec3 rotate(const Rotation& r, const Vec3& v);
UnitVec rotate(const Rotation& r, const UnitVec& v);

/// i.i.d. points uniform under the normalized measure.
std::vector<UnitVec> sample_uniform_sphere(RandomStream& rng, std::size_t count);
UnitVec sample_uniform_sphere(RandomStream& rng);

/// Uniform on the cap: inverse CDF on cos(angle), uniform azimuth, then the
/// pole is carried onto the cap center.
std::vector<UnitVec> sample_uniform_cap(RandomStream& rng, const Cap& cap, std::size_t count);
UnitVec sample_uniform_cap(RandomStream& rng, const Cap& cap);

/// Uniformly distributed orthonormal triad (a Haar-random frame).
std::array<UnitVec, 3> sample_uniform_triad(RandomStream& rng);

/// Spherical Fibonacci lattice with `count` points, equal-area in z.
std::vector<UnitVec> fibonacci_grid(std::size_t count);

/// Upper bound on the covering radius of fibonacci_grid(count), used when a
/// grid cell has to stand in for a neighbourhood.
double fibonacci_spacing(std::size_t count);

/// Equal-area stratum (z band x azimuth sector) of the sphere.
struct Stratum {
  double z_lo, z_hi;
  double phi_lo, phi_hi;
};

/// Partition of the sphere into z_bands * phi_sectors equal-area strata, in a
/// fixed order.
std::vector<Stratum> equal_area_strata(std::size_t z_bands, std::size_t phi_sectors);

UnitVec sample_in_stratum(RandomStream& rng, const Stratum& s);

}  // namespace kscolour
