#pragma once

// Lower bound on the Borel deficit from a finite KS-uncolourable set.
//
// Given rays n_1..n_M (closed under negation internally, n_{M+i} = -n_i) with
// minimum line separation theta0, g_i(m) rotates n_i through theta0/2 about
// the axis m. Each g_i covers the patch E_i of radius theta0/2 twice, so
// int J_i dmu = 2 mu(E_i) = 2 sin^2(theta0/4), and the integral of
// J(m) = min_i J_i(m) bounds the deficit from below.

#include <cstdint>
#include <string>
#include <vector>

#include "kscolour/ks_sets.hpp"
#include "kscolour/sphere.hpp"

namespace kscolour {

class DeficitProblem {
 public:
  /// theta0 is the minimum line angle of the set (pi for a single ray).
  /// Throws std::domain_error for an empty set.
  static DeficitProblem from_set(const RaySet& set);
  DeficitProblem(std::string name, std::vector<UnitVec> rays);
  /// Explicit theta0; must not exceed the set's own minimum line angle.
  DeficitProblem(std::string name, std::vector<UnitVec> rays, double theta0);

  const std::string& name() const { return name_; }
  double theta0() const { return theta0_; }
  double patch_radius() const { return theta0_ / 2.0; }
  /// M, the number of rays before antipodal closure.
  std::size_t ray_count() const { return rays_.size(); }
  /// n_i for i in [0, 2M): indices >= M are the negated rays.
  UnitVec ray(std::size_t i) const;
  /// 2 sin^2(theta0/4) = int J_i dmu for every i.
  double ceiling() const;

 private:
  std::string name_;
  std::vector<UnitVec> rays_;
  double theta0_;
};

/// Minimum line angle over the vectors (pi when there is only one).
double min_line_angle(const std::vector<UnitVec>& rays);

inline constexpr double kJacobianStep = 1e-5;

UnitVec g_map(const DeficitProblem& problem, std::size_t i, const UnitVec& m);

/// |det dg_i| between orthonormal tangent frames at m and g_i(m), by central
/// differences with step h along the two tangent directions at m.
double jacobian(const DeficitProblem& problem, std::size_t i, const UnitVec& m, double h = kJacobianStep);

/// min over i < M of jacobian(i, m); the partners i + M have equal Jacobians.
double j_min(const DeficitProblem& problem, const UnitVec& m);

struct PatchCheck {
  double integral = 0.0;   // Monte Carlo int J_i dmu
  double std_error = 0.0;
  double relative_error = 0.0;  // against the ceiling
};

struct DeficitReport {
  std::string set_name;
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t strata = 0;
  double theta0 = 0.0;
  double ceiling = 0.0;
  std::vector<PatchCheck> patches;  // one per ray i < M
  double max_antipodal_discrepancy = 0.0;
  bool used_antipodal_halving = true;
  double j_min_max_observed = 0.0;
};

struct DeficitOptions {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  std::size_t z_bands = 16;
  std::size_t phi_sectors = 32;
  std::size_t threads = 0;
};

/// Stratified Monte Carlo estimate of int J dmu over equal-area strata, one
/// substream per stratum, reduced in stratum order. Throws std::domain_error
/// for fewer than 10^4 samples.
DeficitReport estimate_deficit_bound(const DeficitProblem& problem, const DeficitOptions& options);

struct BoundsTable {
  double lower = 0.0;           // int J dmu estimate
  double lower_std_error = 0.0;
  double regular_domain_measure = 0.0;
  double upper = 0.0;           // 1 - measure covered by a regular KS-colouring
  bool consistent = false;      // lower - 3 SE < upper and lower <= ceiling + 3 SE
};

/// Bounds on the deficits: lower from the integral, upper from the regular
/// polar-cap colouring. Throws std::domain_error for an empty report.
BoundsTable deficit_summary(const DeficitReport& report, double regular_domain_measure);

}  // namespace kscolour
