#pragma once

// Finite-precision measurement against a colouring: an instrument aimed at k
// with alignment uncertainty eps reports the colour of some domain point n'
// within eps of k. p(k, eps) is the probability that it reports the colour
// of k itself.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "kscolour/colourings.hpp"
#include "kscolour/rational.hpp"

namespace kscolour {

enum class MisalignmentLaw {
  UniformCap,  // n' uniform over the sampler's domain points in Cap(k, eps)
  Gaussian,    // angular offset ~ 2-d Gaussian with 3 sigma = eps, truncated at eps
};
std::string to_string(MisalignmentLaw law);
MisalignmentLaw parse_misalignment_law(const std::string& s);

struct MeasurementModel {
  ColouringPtr colouring;
  MisalignmentLaw law = MisalignmentLaw::UniformCap;
};

/// Target outside the colouring's domain: its true colour is undefined.
class NotInDomain : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The sampler found no domain point near the target (a density violation
/// for a pseudo colouring).
class EmptyDomainSample : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int true_colour(const MeasurementModel& model, const RationalRay& k);

/// One simulated measurement outcome (0 or 1).
int simulate_measurement(const MeasurementModel& model, const RationalRay& k, double epsilon, RandomStream& rng);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Wilson score interval; z = 1.959964 gives 95% coverage.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

struct PEstimate {
  double epsilon = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t agreements = 0;
  double p_hat = 0.0;
  Interval interval;
  double minority_fraction = 0.0;  // share of the rarer outcome colour
};

/// Fraction of `trials` outcomes equal to the true colour of k. Trials run in
/// 16 chunks on substreams of `rng`. Throws std::domain_error for < 100 trials.
PEstimate estimate_p(const MeasurementModel& model, const RationalRay& k, double epsilon, std::uint64_t trials,
                     const RandomStream& rng, std::size_t threads = 0);

enum class KnowabilityVerdict { ConvergesTo1, BoundedAway, Inconclusive };
std::string to_string(KnowabilityVerdict v);

struct KnowabilityReport {
  RationalRay target;
  int true_colour = 0;
  std::string law;
  std::vector<PEstimate> profile;  // in the order of the epsilons given
  KnowabilityVerdict verdict = KnowabilityVerdict::Inconclusive;
};

/// CONVERGES_TO_1 iff the smallest-eps interval contains 1 and p_hat is
/// nondecreasing as eps shrinks; BOUNDED_AWAY iff every interval excludes 1.
KnowabilityVerdict knowability_verdict(const std::vector<PEstimate>& profile);

/// Profiles p(k, eps) for each target. Epsilons must be strictly decreasing.
std::vector<KnowabilityReport> cabello_probe(const MeasurementModel& model, const std::vector<RationalRay>& targets,
                                             const std::vector<double>& epsilons, std::uint64_t trials,
                                             std::uint64_t seed, std::size_t threads = 0);

}  // namespace kscolour
