#include "kscolour/rational.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kscolour {

namespace mp = boost::multiprecision;

namespace {

__int128 abs128(__int128 v) { return v < 0 ? -v : v; }

__int128 gcd128(__int128 a, __int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

BigInt to_big(__int128 v) {
  const bool neg = v < 0;
  const auto mag = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  BigInt out = static_cast<std::uint64_t>(mag >> 64);
  out <<= 64;
  out |= static_cast<std::uint64_t>(mag);
  return neg ? BigInt(-out) : out;
}

void reduce_and_canonicalize(detail::Quad128& q) {
  const __int128 g = gcd128(gcd128(q.x, q.y), q.z);
  q.x /= g;
  q.y /= g;
  q.z /= g;
  q.n /= g;
  const __int128 lead = q.x != 0 ? q.x : (q.y != 0 ? q.y : q.z);
  if (lead < 0) {
    q.x = -q.x;
    q.y = -q.y;
    q.z = -q.z;
  }
}

detail::Quad128 quad_from_plane(__int128 a, __int128 b, __int128 c) {
  detail::Quad128 q{2 * a * c, 2 * b * c, a * a + b * b - c * c, a * a + b * b + c * c};
  reduce_and_canonicalize(q);
  return q;
}

// Image under stereographic projection from (0,0,1) of a cap that avoids the
// projection pole: a disk (center_u, center_v, radius). nullopt when the cap
// contains the pole, so the image is unbounded.
struct PlaneDisk {
  double u, v, radius;
};

std::optional<PlaneDisk> plane_disk(const UnitVec& center, double r) {
  const double polar = std::acos(std::clamp(center.z(), -1.0, 1.0));
  if (polar <= r || r >= kPi) return std::nullopt;
  const double azimuth = std::atan2(center.y(), center.x());
  // Signed distance along the meridian direction of the images of the two
  // meridian points of the boundary circle.
  const double t1 = 1.0 / std::tan((polar - r) / 2.0);
  const double t2 = 1.0 / std::tan((polar + r) / 2.0);
  const double mid = (t1 + t2) / 2.0;
  return PlaneDisk{mid * std::cos(azimuth), mid * std::sin(azimuth), std::abs(t1 - t2) / 2.0};
}

}  // namespace

std::string_view to_string(ParityClass c) {
  switch (c) {
    case ParityClass::X:
      return "X";
    case ParityClass::Y:
      return "Y";
    case ParityClass::Z:
      return "Z";
  }
  return "?";
}

ParityClass parse_parity_class(std::string_view s) {
  if (s == "X" || s == "x") return ParityClass::X;
  if (s == "Y" || s == "y") return ParityClass::Y;
  if (s == "Z" || s == "z") return ParityClass::Z;
  throw std::invalid_argument("parity class must be X, Y or Z");
}

RationalRay make_rational_ray(const BigInt& x, const BigInt& y, const BigInt& z) {
  if (x == 0 && y == 0 && z == 0) throw std::domain_error("make_rational_ray: zero vector");
  BigInt g = mp::gcd(mp::gcd(mp::abs(x), mp::abs(y)), mp::abs(z));
  RationalRay r;
  r.c_ = {x / g, y / g, z / g};
  const BigInt s = r.c_[0] * r.c_[0] + r.c_[1] * r.c_[1] + r.c_[2] * r.c_[2];
  r.n_ = mp::sqrt(s);
  if (r.n_ * r.n_ != s) {
    throw NotOnRationalSphere("(" + x.str() + ", " + y.str() + ", " + z.str() + ") has non-square norm " + s.str());
  }
  const BigInt& lead = r.c_[0] != 0 ? r.c_[0] : (r.c_[1] != 0 ? r.c_[1] : r.c_[2]);
  if (lead < 0) {
    for (auto& v : r.c_) v = -v;
  }
  return r;
}

UnitVec RationalRay::to_unit() const {
  const auto n = n_.convert_to<long double>();
  return UnitVec(static_cast<double>(c_[0].convert_to<long double>() / n),
                 static_cast<double>(c_[1].convert_to<long double>() / n),
                 static_cast<double>(c_[2].convert_to<long double>() / n));
}

std::string RationalRay::to_string() const {
  return c_[0].str() + "," + c_[1].str() + "," + c_[2].str() + "," + n_.str();
}

RationalRay RationalRay::parse(std::string_view text) {
  std::vector<BigInt> parts;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char ch) { return std::isspace(ch); }),
               item.end());
    if (item.empty()) throw std::invalid_argument("RationalRay::parse: empty component in '" + std::string(text) + "'");
    try {
      parts.emplace_back(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("RationalRay::parse: '" + item + "' is not an integer");
    }
  }
  if (parts.size() != 4) throw std::invalid_argument("RationalRay::parse: expected x,y,z,n");
  if (parts[3] <= 0) throw std::invalid_argument("RationalRay::parse: n must be positive");
  if (parts[0] * parts[0] + parts[1] * parts[1] + parts[2] * parts[2] != parts[3] * parts[3]) {
    throw NotOnRationalSphere("'" + std::string(text) + "' violates x^2 + y^2 + z^2 = n^2");
  }
  return make_rational_ray(parts[0], parts[1], parts[2]);
}

ParityClass parity_class(const RationalRay& r) {
  if (mp::bit_test(r.x(), 0)) return ParityClass::X;
  if (mp::bit_test(r.y(), 0)) return ParityClass::Y;
  return ParityClass::Z;
}

int meyer_colour(const RationalRay& r, ParityClass zero_class) { return parity_class(r) == zero_class ? 0 : 1; }

BigInt exact_dot(const RationalRay& a, const RationalRay& b) {
  return a.x() * b.x() + a.y() * b.y() + a.z() * b.z();
}

std::array<RationalRay, 3> rational_triad_from_quaternion(const BigInt& a, const BigInt& b, const BigInt& c,
                                                          const BigInt& d) {
  if (a == 0 && b == 0 && c == 0 && d == 0) throw std::domain_error("rational_triad_from_quaternion: zero quaternion");
  const BigInt aa = a * a, bb = b * b, cc = c * c, dd = d * d;
  return {make_rational_ray(aa + bb - cc - dd, 2 * (b * c - a * d), 2 * (b * d + a * c)),
          make_rational_ray(2 * (b * c + a * d), aa - bb + cc - dd, 2 * (c * d - a * b)),
          make_rational_ray(2 * (b * d - a * c), 2 * (c * d + a * b), aa - bb - cc + dd)};
}

RationalRay ray_from_plane(const BigInt& a, const BigInt& b, const BigInt& c) {
  if (c == 0) throw std::domain_error("ray_from_plane: zero denominator");
  return make_rational_ray(2 * a * c, 2 * b * c, a * a + b * b - c * c);
}

std::vector<RationalRay> rational_rays_in_cap(const Cap& cap, std::int64_t bound) {
  if (bound < 1) throw std::domain_error("rational_rays_in_cap: bound must be >= 1");
  if (bound > 1'000'000'000) throw std::domain_error("rational_rays_in_cap: bound too large to enumerate");

  struct Box {
    double u_lo, u_hi, v_lo, v_hi;
  };
  std::vector<Box> boxes;
  bool unbounded = cap.radius() >= kPi / 2;
  for (const UnitVec& center : {cap.center(), -cap.center()}) {
    if (unbounded) break;
    const auto disk = plane_disk(center, cap.radius());
    if (!disk) {
      unbounded = true;
      break;
    }
    const double pad = disk->radius * 1e-9 + 1e-15;
    boxes.push_back({disk->u - disk->radius - pad, disk->u + disk->radius + pad, disk->v - disk->radius - pad,
                     disk->v + disk->radius + pad});
  }

  const long double cos_r = std::cos(static_cast<long double>(cap.radius()));
  const long double cx = cap.center().x(), cy = cap.center().y(), cz = cap.center().z();
  std::vector<std::array<std::int64_t, 4>> found;

  auto visit = [&](std::int64_t a, std::int64_t b, std::int64_t c) {
    const detail::Quad128 q = quad_from_plane(a, b, c);
    const long double d = static_cast<long double>(q.x) * cx + static_cast<long double>(q.y) * cy +
                          static_cast<long double>(q.z) * cz;
    if (std::abs(d) >= static_cast<long double>(q.n) * cos_r) {
      found.push_back({static_cast<std::int64_t>(q.x), static_cast<std::int64_t>(q.y), static_cast<std::int64_t>(q.z),
                       static_cast<std::int64_t>(q.n)});
    }
  };

  for (std::int64_t c = 1; c <= bound; ++c) {
    if (unbounded) {
      for (std::int64_t a = -bound; a <= bound; ++a) {
        for (std::int64_t b = -bound; b <= bound; ++b) visit(a, b, c);
      }
      continue;
    }
    const auto cd = static_cast<double>(c);
    for (const Box& box : boxes) {
      const auto a_lo = std::max<std::int64_t>(-bound, static_cast<std::int64_t>(std::ceil(box.u_lo * cd)));
      const auto a_hi = std::min<std::int64_t>(bound, static_cast<std::int64_t>(std::floor(box.u_hi * cd)));
      const auto b_lo = std::max<std::int64_t>(-bound, static_cast<std::int64_t>(std::ceil(box.v_lo * cd)));
      const auto b_hi = std::min<std::int64_t>(bound, static_cast<std::int64_t>(std::floor(box.v_hi * cd)));
      for (std::int64_t a = a_lo; a <= a_hi; ++a) {
        for (std::int64_t b = b_lo; b <= b_hi; ++b) visit(a, b, c);
      }
    }
  }

  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  std::vector<RationalRay> out;
  out.reserve(found.size());
  for (const auto& q : found) out.push_back(make_rational_ray(q[0], q[1], q[2]));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RationalRay> sample_rational_near(const UnitVec& target, double epsilon, RandomStream& rng,
                                              std::size_t count) {
  std::vector<RationalRay> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(detail::to_rational_ray(detail::sample_quad_near(target, epsilon, rng)));
  return out;
}

namespace detail {

Quad128 sample_quad_near(const UnitVec& target, double epsilon, RandomStream& rng) {
  if (!(epsilon > 0.0)) throw std::domain_error("sample_rational_near: epsilon must be positive");
  if (epsilon < 1e-15) throw std::domain_error("sample_rational_near: epsilon below double resolution");
  const Cap cap(target, std::min(epsilon, kPi));
  const auto base = static_cast<std::int64_t>(std::ceil(4.0 / std::min(epsilon, kPi)));
  for (;;) {
    UnitVec p = sample_uniform_cap(rng, cap);
    if (p.z() > 0.0) p = -p;
    const double wx = p.x() / (1.0 - p.z());
    const double wy = p.y() / (1.0 - p.z());
    const std::int64_t c = rng.uniform_int(base, 2 * base);
    const auto cd = static_cast<double>(c);
    const Quad128 q = quad_from_plane(std::llround(wx * cd), std::llround(wy * cd), c);
    if (line_angle(to_unit(q), target) <= epsilon) return q;
  }
}

ParityClass parity_class(const Quad128& q) {
  if ((q.x & 1) != 0) return ParityClass::X;
  if ((q.y & 1) != 0) return ParityClass::Y;
  return ParityClass::Z;
}

UnitVec to_unit(const Quad128& q) {
  const auto n = static_cast<long double>(q.n);
  return UnitVec(static_cast<double>(static_cast<long double>(q.x) / n),
                 static_cast<double>(static_cast<long double>(q.y) / n),
                 static_cast<double>(static_cast<long double>(q.z) / n));
}

RationalRay to_rational_ray(const Quad128& q) { return make_rational_ray(to_big(q.x), to_big(q.y), to_big(q.z)); }

}  // namespace detail

}  // namespace kscolour
