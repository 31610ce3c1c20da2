#pragma once

// Exact arithmetic on the rational unit sphere: primitive quadruples
// x^2 + y^2 + z^2 = n^2 and the parity-class colouring they carry.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kscolour/random.hpp"
#include "kscolour/sphere.hpp"

namespace kscolour {

using BigInt = boost::multiprecision::cpp_int;

class NotOnRationalSphere : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Which coordinate of a primitive quadruple is odd.
enum class ParityClass { X, Y, Z };

std::string_view to_string(ParityClass c);
ParityClass parse_parity_class(std::string_view s);

/// A point of the rational sphere, up to sign: the primitive quadruple
/// (x, y, z, n) with x^2 + y^2 + z^2 = n^2, n > 0, gcd(x, y, z) = 1 and the
/// first nonzero coordinate positive.
class RationalRay {
 public:
  const BigInt& x() const { return c_[0]; }
  const BigInt& y() const { return c_[1]; }
  const BigInt& z() const { return c_[2]; }
  const BigInt& n() const { return n_; }
  const BigInt& coord(std::size_t i) const { return c_[i]; }

  UnitVec to_unit() const;

  /// "x,y,z,n".
  std::string to_string() const;
  /// Parses "x,y,z,n" (whitespace allowed); the quadruple must already be
  /// exact, though not necessarily primitive or sign-canonical.
  static RationalRay parse(std::string_view text);

  friend bool operator==(const RationalRay&, const RationalRay&) = default;
  friend bool operator<(const RationalRay& a, const RationalRay& b) {
    for (std::size_t i = 0; i < 3; ++i) {
      if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    }
    return false;
  }

 private:
  friend RationalRay make_rational_ray(const BigInt&, const BigInt&, const BigInt&);
  std::array<BigInt, 3> c_;
  BigInt n_;
};

/// Reduces (x, y, z) by its gcd and checks that the norm is an integer.
/// Throws NotOnRationalSphere for a non-square norm and std::domain_error
/// for the zero vector.
RationalRay make_rational_ray(const BigInt& x, const BigInt& y, const BigInt& z);

ParityClass parity_class(const RationalRay& r);

/// Meyer's colouring of the rational sphere: 0 on the `zero_class` parity
/// class, 1 on the other two.
int meyer_colour(const RationalRay& r, ParityClass zero_class = ParityClass::Z);

BigInt exact_dot(const RationalRay& a, const RationalRay& b);
inline bool exactly_orthogonal(const RationalRay& a, const RationalRay& b) { return exact_dot(a, b) == 0; }

/// Rows of the rotation matrix of the integer quaternion a + bi + cj + dk.
/// Throws std::domain_error for the zero quaternion.
std::array<RationalRay, 3> rational_triad_from_quaternion(const BigInt& a, const BigInt& b, const BigInt& c,
                                                          const BigInt& d);

/// Inverse stereographic image of the plane point (a/c, b/c), projecting from
/// (0, 0, 1): the quadruple (2ac, 2bc, a^2 + b^2 - c^2, a^2 + b^2 + c^2) reduced.
RationalRay ray_from_plane(const BigInt& a, const BigInt& b, const BigInt& c);

/// All rays within `cap` (antipodes identified) that are images of plane points
/// (a/c, b/c) with 1 <= c <= bound and |a|, |b| <= bound. Sorted, distinct.
std::vector<RationalRay> rational_rays_in_cap(const Cap& cap, std::int64_t bound);

/// Random rational rays within angle epsilon of target (antipodes identified).
/// A cap point is rounded on the stereographic chart to denominators in
/// [ceil(4/eps), 2 ceil(4/eps)] and kept if still inside the cap.
std::vector<RationalRay> sample_rational_near(const UnitVec& target, double epsilon, RandomStream& rng,
                                              std::size_t count);

namespace detail {

/// Fixed-width quadruple used on the sampling hot paths.
struct Quad128 {
  __int128 x, y, z, n;
};

Quad128 sample_quad_near(const UnitVec& target, double epsilon, RandomStream& rng);
ParityClass parity_class(const Quad128& q);
UnitVec to_unit(const Quad128& q);
RationalRay to_rational_ray(const Quad128& q);

}  // namespace detail

}  // namespace kscolour
