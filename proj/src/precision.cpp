#include "kscolour/precision.hpp"

#include <algorithm>
#include <cmath>

#include "kscolour/parallel.hpp"

namespace kscolour {

namespace {
constexpr std::uint64_t kProbeStream = 0x4341424c;  // "CABL"
constexpr std::size_t kTrialChunks = 16;
constexpr int kMaxRedraws = 1000;
}  // namespace

std::string to_string(MisalignmentLaw law) { return law == MisalignmentLaw::UniformCap ? "uniform-cap" : "gaussian"; }

MisalignmentLaw parse_misalignment_law(const std::string& s) {
  if (s == "uniform-cap") return MisalignmentLaw::UniformCap;
  if (s == "gaussian") return MisalignmentLaw::Gaussian;
  throw std::invalid_argument("unknown misalignment law '" + s + "' (expected uniform-cap or gaussian)");
}

std::string to_string(KnowabilityVerdict v) {
  switch (v) {
    case KnowabilityVerdict::ConvergesTo1:
      return "CONVERGES_TO_1";
    case KnowabilityVerdict::BoundedAway:
      return "BOUNDED_AWAY";
    case KnowabilityVerdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

int true_colour(const MeasurementModel& model, const RationalRay& k) {
  const Colour c = model.colouring->query(k);
  if (!is_defined(c)) {
    throw NotInDomain("target " + k.to_string() + " is outside the domain of " + model.colouring->name());
  }
  return value(c);
}

int simulate_measurement(const MeasurementModel& model, const RationalRay& k, double epsilon, RandomStream& rng) {
  if (!(epsilon > 0.0)) throw std::domain_error("simulate_measurement: epsilon must be positive");
  const UnitVec target = k.to_unit();
  const Colouring& c = *model.colouring;
  if (model.law == MisalignmentLaw::UniformCap) {
    const auto pts = c.sample_in_domain(Cap(target, std::min(epsilon, kPi)), rng, 1);
    if (pts.empty()) throw EmptyDomainSample("no domain point of " + c.name() + " found near " + k.to_string());
    return value(pts.front().colour);
  }
  const double sigma = epsilon / 3.0;
  const auto [e1, e2] = tangent_frame(target);
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    const double u = sigma * rng.normal(), v = sigma * rng.normal();
    const double offset = std::hypot(u, v);
    if (offset > epsilon) continue;
    Vec3 dir = target.vec();
    if (offset > 0.0) {
      const Vec3 t = (e1 * u + e2 * v) * (1.0 / offset);
      dir = target.vec() * std::cos(offset) + t * std::sin(offset);
    }
    const UnitVec aim = UnitVec::from_normalized(dir);
    const auto pts = c.sample_in_domain(Cap(aim, epsilon * 1e-2), rng, 1);
    if (pts.empty() || line_angle(pts.front().point, target) > epsilon) continue;
    return value(pts.front().colour);
  }
  throw EmptyDomainSample("no domain point of " + c.name() + " found near " + k.to_string());
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const auto n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  Interval iv{std::max(0.0, center - half), std::min(1.0, center + half)};
  // Exact endpoints at the extremes (the formula can be off by rounding).
  if (successes == trials) iv.hi = 1.0;
  if (successes == 0) iv.lo = 0.0;
  return iv;
}

PEstimate estimate_p(const MeasurementModel& model, const RationalRay& k, double epsilon, std::uint64_t trials,
                     const RandomStream& rng, std::size_t threads) {
  if (trials < 100) throw std::domain_error("estimate_p: need at least 100 trials");
  const int truth = true_colour(model, k);
  std::vector<std::uint64_t> agree(kTrialChunks, 0);
  parallel_for(kTrialChunks, threads, [&](std::size_t chunk) {
    RandomStream sub = rng.substream(chunk);
    const std::uint64_t n = trials / kTrialChunks + (chunk < trials % kTrialChunks ? 1 : 0);
    for (std::uint64_t t = 0; t < n; ++t) agree[chunk] += simulate_measurement(model, k, epsilon, sub) == truth;
  });
  PEstimate e;
  e.epsilon = epsilon;
  e.trials = trials;
  e.agreements = pairwise_sum(agree);
  e.p_hat = static_cast<double>(e.agreements) / static_cast<double>(trials);
  e.interval = wilson_interval(e.agreements, trials);
  e.minority_fraction = std::min(e.p_hat, 1.0 - e.p_hat);
  return e;
}

KnowabilityVerdict knowability_verdict(const std::vector<PEstimate>& profile) {
  if (profile.empty()) return KnowabilityVerdict::Inconclusive;
  bool nondecreasing = true;
  for (std::size_t i = 1; i < profile.size(); ++i) nondecreasing &= profile[i].p_hat >= profile[i - 1].p_hat;
  if (profile.back().interval.contains(1.0) && nondecreasing) return KnowabilityVerdict::ConvergesTo1;
  const bool all_exclude = std::none_of(profile.begin(), profile.end(),
                                        [](const PEstimate& e) { return e.interval.contains(1.0); });
  return all_exclude ? KnowabilityVerdict::BoundedAway : KnowabilityVerdict::Inconclusive;
}

std::vector<KnowabilityReport> cabello_probe(const MeasurementModel& model, const std::vector<RationalRay>& targets,
                                             const std::vector<double>& epsilons, std::uint64_t trials,
                                             std::uint64_t seed, std::size_t threads) {
  if (epsilons.empty()) throw std::domain_error("cabello_probe: no epsilons");
  for (std::size_t i = 1; i < epsilons.size(); ++i) {
    if (!(epsilons[i] < epsilons[i - 1])) throw std::domain_error("cabello_probe: epsilons must be strictly decreasing");
  }
  const RandomStream base(seed, kProbeStream);
  std::vector<KnowabilityReport> out;
  out.reserve(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    KnowabilityReport r{targets[t], true_colour(model, targets[t]), to_string(model.law), {}, {}};
    const RandomStream target_stream = base.substream(t);
    for (std::size_t e = 0; e < epsilons.size(); ++e) {
      r.profile.push_back(estimate_p(model, targets[t], epsilons[e], trials, target_stream.substream(e), threads));
    }
    r.verdict = knowability_verdict(r.profile);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace kscolour
