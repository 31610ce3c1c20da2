#pragma once

// Finite-resolution phenomenological colouring.
//
// A point is classified by sampling the colouring's domain inside the cap of
// radius delta around it: only colour 0 seen -> U0, only colour 1 -> U1,
// both -> D, no domain point found -> Undefined. As delta -> 0 and the sample
// count grows this approaches the partition S^2 = U0 + U1 + D built from the
// closures of the two colour classes.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "kscolour/colourings.hpp"

namespace kscolour {

enum class PhenoClass : std::int8_t { U0, U1, D, Undefined };
std::string to_string(PhenoClass c);

PhenoClass classify_point(const Colouring& c, const UnitVec& p, double delta, std::size_t samples, RandomStream& rng);

struct PhenoMap {
  std::string colouring;
  double delta = 0.0;
  std::size_t samples_per_cap = 0;
  std::uint64_t seed = 0;
  std::vector<UnitVec> grid;
  std::vector<PhenoClass> classes;
  double mu_u0 = 0.0;
  double mu_u1 = 0.0;
  double mu_d = 0.0;
  double mu_undefined = 0.0;
  /// Pseudo colourings must reach every cap; a cap with no samples is counted here.
  std::size_t inconsistencies = 0;

  /// Probability of labelling a cell U when the minority colour occupies a
  /// fraction p of it: (1 - p)^samples_per_cap.
  double false_u_risk(double minority_fraction) const;
  /// Standard error of a class measure estimated from this grid.
  double std_error(double mu) const;
};

struct ClassifyOptions {
  double delta = 1e-2;
  std::size_t grid_size = 10000;
  std::size_t samples_per_cap = 200;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
};

/// Classifies every point of fibonacci_grid(grid_size). Grid point i draws
/// from substream i of (seed, stream 0x5048454e), so the map does not depend
/// on the thread count.
PhenoMap classify_phenomenological(const Colouring& c, const ClassifyOptions& options);

/// Spatial hash over a fixed point set for "all points within angle r" queries.
class GridIndex {
 public:
  GridIndex(const std::vector<UnitVec>& points, double max_radius);
  /// Indices of points within angle `radius` (<= max_radius) of p.
  std::vector<std::size_t> within(const UnitVec& p, double radius) const;
  std::size_t nearest(const UnitVec& p) const;

 private:
  std::int64_t key(std::int64_t i, std::int64_t j, std::int64_t k) const;
  const std::vector<UnitVec>* points_;
  double cell_;
  double max_radius_;
  std::int64_t dim_;
  std::unordered_map<std::int64_t, std::vector<std::size_t>> buckets_;
};

struct Theorem1Report {
  std::uint64_t triads_sampled = 0;
  std::uint64_t qualifying_triads = 0;
  std::uint64_t triad_violations = 0;
  std::uint64_t pairs_checked = 0;
  std::uint64_t pair_violations = 0;
};

/// Samples real triads whose members all sit in the continuity region of the
/// map, assigns each member its phenomenological colour, and counts KS
/// violations. A member qualifies when every grid cell within delta plus the
/// grid spacing carries the same U class and a direct probe at the member
/// agrees. Stops after `target_qualifying` qualifying triads or
/// `max_attempts` sampled triads (default 20 * target).
Theorem1Report theorem1_check(const PhenoMap& map, const Colouring& c, const RandomStream& rng,
                              std::uint64_t target_qualifying, std::uint64_t max_attempts = 0,
                              std::size_t threads = 0);

enum class DensityVerdict { CoreLike, CrustLike, OutsideD };
std::string to_string(DensityVerdict v);

struct DensityProfile {
  UnitVec center;
  std::vector<double> radii;
  std::vector<double> probe_resolution;
  std::vector<double> fractions;
  std::vector<double> std_errors;
  std::size_t samples = 0;
  DensityVerdict verdict = DensityVerdict::OutsideD;
};

/// Estimates mu(S(center, eps) & D) / mu(S(center, eps)) for each radius. A
/// sample point counts as D when a probe at resolution min(map.delta, eps^2)
/// sees both colours. Verdict: CoreLike when every fraction >= 0.99,
/// OutsideD when every fraction is 0, CrustLike otherwise.
DensityProfile density_profile(const Colouring& c, const PhenoMap& map, const UnitVec& center,
                               const std::vector<double>& radii, std::size_t samples, const RandomStream& rng,
                               std::size_t threads = 0);

}  // namespace kscolour
