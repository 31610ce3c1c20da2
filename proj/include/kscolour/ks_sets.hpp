#pragma once

// Finite ray sets, their exact orthogonality graphs, and a complete decision
// procedure for KS-colourability:
//   every orthogonal pair has colour sum >= 1,
//   every orthogonal triad has colour sum exactly 2.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kscolour/sphere.hpp"

namespace kscolour {

/// Exact element a + b*sqrt(2) of Z[sqrt 2]. Integer coordinates have b == 0;
/// the sqrt(2) part is needed for sets such as Peres' 33 rays.
struct Surd {
  std::int64_t a = 0;
  std::int64_t b = 0;

  constexpr Surd() = default;
  constexpr Surd(std::int64_t rational) : a(rational) {}  // NOLINT(google-explicit-constructor)
  constexpr Surd(std::int64_t rational, std::int64_t root2) : a(rational), b(root2) {}

  constexpr bool is_zero() const { return a == 0 && b == 0; }
  constexpr bool is_integer() const { return b == 0; }
  /// -1, 0 or +1, decided exactly.
  int sign() const;
  double to_double() const;

  friend constexpr Surd operator+(Surd x, Surd y) { return {x.a + y.a, x.b + y.b}; }
  friend constexpr Surd operator-(Surd x, Surd y) { return {x.a - y.a, x.b - y.b}; }
  friend constexpr Surd operator*(Surd x, Surd y) { return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a}; }
  constexpr Surd operator-() const { return {-a, -b}; }
  friend constexpr bool operator==(Surd, Surd) = default;
  friend constexpr auto operator<=>(Surd, Surd) = default;  // lexicographic, for ordering only
};

/// A direction given by exact coordinates, sign-canonicalized so that its
/// first nonzero coordinate is positive.
class Ray {
 public:
  Ray(Surd x, Surd y, Surd z);

  const std::array<Surd, 3>& coords() const { return c_; }
  bool is_integer() const;
  UnitVec to_unit() const;
  std::string to_string() const;

  friend bool operator==(const Ray&, const Ray&) = default;
  friend auto operator<=>(const Ray&, const Ray&) = default;

 private:
  std::array<Surd, 3> c_;
};

Surd exact_dot(const Ray& a, const Ray& b);
/// True when a and b span the same line (exact cross product is zero).
bool parallel(const Ray& a, const Ray& b);

class RaySetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Named finite collection of pairwise non-parallel rays.
class RaySet {
 public:
  /// Throws RaySetError on zero rays or on two rays spanning the same line.
  RaySet(std::string name, std::string source, std::vector<Ray> rays);

  const std::string& name() const { return name_; }
  const std::string& source() const { return source_; }
  const std::vector<Ray>& rays() const { return rays_; }
  std::size_t size() const { return rays_.size(); }
  std::vector<UnitVec> unit_vectors() const;

  friend bool operator==(const RaySet&, const RaySet&) = default;

 private:
  std::string name_;
  std::string source_;
  std::vector<Ray> rays_;
};

/// JSON schema: {"name": str, "source": str, "rays": [[c, c, c], ...]} where
/// each coordinate c is an integer or a pair [a, b] meaning a + b*sqrt(2).
RaySet load_ray_set(const std::filesystem::path& path);
RaySet parse_ray_set(const std::string& json_text);
void save_ray_set(const RaySet& set, const std::filesystem::path& path);
std::string dump_ray_set(const RaySet& set);

/// Applies the integer-quaternion rotation (a, b, c, d) to every ray, exactly
/// (coordinates are scaled by a^2 + b^2 + c^2 + d^2).
RaySet rotate_exact(const RaySet& set, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

struct OrthogonalityGraph {
  std::size_t vertex_count = 0;
  std::vector<std::array<std::size_t, 2>> pairs;   // i < j
  std::vector<std::array<std::size_t, 3>> triads;  // i < j < k, pairwise orthogonal
};

OrthogonalityGraph build_graph(const RaySet& set);

enum class Verdict { Colourable, Uncolourable };
std::string to_string(Verdict v);

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t propagations = 0;
  double wall_seconds = 0.0;
};

struct ColourabilityResult {
  Verdict status = Verdict::Uncolourable;
  std::optional<std::vector<int>> witness;  // one colour per vertex
  std::optional<std::uint64_t> solution_count;  // enumeration mode only, capped at 2^32
  SearchStats stats;
};

struct SolverOptions {
  bool enumerate = false;
};

inline constexpr std::uint64_t kSolutionCountCap = std::uint64_t{1} << 32;

/// Complete backtracking search with unit propagation. Uncolourable is returned
/// only after the search space is exhausted.
ColourabilityResult decide_colourability(const OrthogonalityGraph& graph, SolverOptions options = {});

/// Independent re-check of a full assignment against all pair and triad constraints.
bool satisfies_ks_conditions(const OrthogonalityGraph& graph, const std::vector<int>& colours);

/// Naive 2^k enumeration; the oracle against which the solver is checked.
/// Throws std::domain_error for more than 24 vertices.
bool exhaustive_colourable(const OrthogonalityGraph& graph);

/// Minimum angle between the lines of any two rays. Throws std::domain_error for
/// fewer than two rays. If `argmin` is given it receives the attaining pair.
double min_angle(const RaySet& set, std::array<std::size_t, 2>* argmin = nullptr);

}  // namespace kscolour
