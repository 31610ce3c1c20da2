#include "kscolour/deficit.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <stdexcept>

#include "kscolour/parallel.hpp"

namespace kscolour {

namespace {
constexpr std::uint64_t kDeficitStream = 0x44454649;  // "DEFI"
constexpr std::uint64_t kAntipodalStream = 0x414e5449;
constexpr std::size_t kAntipodalProbes = 64;
constexpr double kAntipodalTolerance = 1e-6;
}  // namespace

double min_line_angle(const std::vector<UnitVec>& rays) {
  double best = kPi;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    for (std::size_t j = i + 1; j < rays.size(); ++j) best = std::min(best, line_angle(rays[i], rays[j]));
  }
  return best;
}

DeficitProblem DeficitProblem::from_set(const RaySet& set) { return {set.name(), set.unit_vectors()}; }

DeficitProblem::DeficitProblem(std::string name, std::vector<UnitVec> rays)
    : name_(std::move(name)), rays_(std::move(rays)) {
  if (rays_.empty()) throw std::domain_error("DeficitProblem: empty ray set");
  theta0_ = min_line_angle(rays_);
  if (!(theta0_ > 0.0)) throw std::domain_error("DeficitProblem: repeated ray");
}

DeficitProblem::DeficitProblem(std::string name, std::vector<UnitVec> rays, double theta0)
    : name_(std::move(name)), rays_(std::move(rays)), theta0_(theta0) {
  if (rays_.empty()) throw std::domain_error("DeficitProblem: empty ray set");
  if (!(theta0 > 0.0) || theta0 > min_line_angle(rays_) + 1e-12) {
    throw std::domain_error("DeficitProblem: theta0 must lie in (0, min line angle]");
  }
}

UnitVec DeficitProblem::ray(std::size_t i) const {
  if (i >= 2 * rays_.size()) throw std::out_of_range("DeficitProblem::ray: index out of range");
  return i < rays_.size() ? rays_[i] : -rays_[i - rays_.size()];
}

double DeficitProblem::ceiling() const {
  const double s = std::sin(theta0_ / 4.0);
  return 2.0 * s * s;
}

UnitVec g_map(const DeficitProblem& problem, std::size_t i, const UnitVec& m) {
  return rotate(Rotation{m, problem.patch_radius()}, problem.ray(i));
}

double jacobian(const DeficitProblem& problem, std::size_t i, const UnitVec& m, double h) {
  const UnitVec n = problem.ray(i);
  const Rotation base{m, problem.patch_radius()};
  const UnitVec image = rotate(base, n);
  const auto [e1, e2] = tangent_frame(m);
  const auto [f1, f2] = tangent_frame(image);
  std::array<Vec3, 2> d{};
  const double c = std::cos(h), s = std::sin(h);
  for (std::size_t k = 0; k < 2; ++k) {
    const Vec3& e = k == 0 ? e1 : e2;
    const UnitVec plus = UnitVec::from_normalized(m.vec() * c + e * s);
    const UnitVec minus = UnitVec::from_normalized(m.vec() * c - e * s);
    const Vec3 gp = rotate(Rotation{plus, problem.patch_radius()}, n.vec());
    const Vec3 gm = rotate(Rotation{minus, problem.patch_radius()}, n.vec());
    d[k] = (gp - gm) * (1.0 / (2.0 * h));
  }
  const double a11 = dot(f1, d[0]), a12 = dot(f1, d[1]);
  const double a21 = dot(f2, d[0]), a22 = dot(f2, d[1]);
  return std::abs(a11 * a22 - a12 * a21);
}

double j_min(const DeficitProblem& problem, const UnitVec& m) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < problem.ray_count(); ++i) best = std::min(best, jacobian(problem, i, m));
  return best;
}

namespace {

struct StratumSums {
  std::uint64_t n = 0;
  double sum = 0.0, sum_sq = 0.0, max = 0.0;
  std::vector<double> patch_sum, patch_sum_sq;
};

double variance_of_mean(double sum, double sum_sq, std::uint64_t n) {
  if (n < 2) return 0.0;
  const auto nd = static_cast<double>(n);
  const double mean = sum / nd;
  const double var = std::max(0.0, (sum_sq - nd * mean * mean) / (nd - 1.0));
  return var / nd;
}

}  // namespace

DeficitReport estimate_deficit_bound(const DeficitProblem& problem, const DeficitOptions& options) {
  if (options.samples < 10'000) throw std::domain_error("estimate_deficit_bound: need at least 10^4 samples");
  const std::size_t m_count = problem.ray_count();

  DeficitReport report;
  report.set_name = problem.name();
  report.samples = options.samples;
  report.seed = options.seed;
  report.theta0 = problem.theta0();
  report.ceiling = problem.ceiling();

  // Guard for evaluating the minimum over M instead of 2M indices.
  RandomStream probe(options.seed, kAntipodalStream);
  for (std::size_t t = 0; t < kAntipodalProbes; ++t) {
    const UnitVec m = sample_uniform_sphere(probe);
    for (std::size_t i = 0; i < m_count; ++i) {
      report.max_antipodal_discrepancy = std::max(
          report.max_antipodal_discrepancy, std::abs(jacobian(problem, i, m) - jacobian(problem, i + m_count, m)));
    }
  }
  report.used_antipodal_halving = report.max_antipodal_discrepancy <= kAntipodalTolerance;
  const std::size_t min_range = report.used_antipodal_halving ? m_count : 2 * m_count;

  const auto strata = equal_area_strata(options.z_bands, options.phi_sectors);
  report.strata = strata.size();
  std::vector<StratumSums> sums(strata.size());
  const RandomStream base(options.seed, kDeficitStream);
  parallel_for(strata.size(), options.threads, [&](std::size_t k) {
    RandomStream sub = base.substream(k);
    StratumSums& s = sums[k];
    s.n = options.samples / strata.size() + (k < options.samples % strata.size() ? 1 : 0);
    s.patch_sum.assign(m_count, 0.0);
    s.patch_sum_sq.assign(m_count, 0.0);
    std::vector<double> jac(min_range);
    for (std::uint64_t t = 0; t < s.n; ++t) {
      const UnitVec m = sample_in_stratum(sub, strata[k]);
      for (std::size_t i = 0; i < min_range; ++i) jac[i] = jacobian(problem, i, m);
      const double jm = *std::min_element(jac.begin(), jac.end());
      s.sum += jm;
      s.sum_sq += jm * jm;
      s.max = std::max(s.max, jm);
      for (std::size_t i = 0; i < m_count; ++i) {
        s.patch_sum[i] += jac[i];
        s.patch_sum_sq[i] += jac[i] * jac[i];
      }
    }
  });

  // Equal-area strata: the estimate is the plain average of stratum means.
  const auto k_count = static_cast<double>(strata.size());
  std::vector<double> means(strata.size()), vars(strata.size());
  for (std::size_t k = 0; k < strata.size(); ++k) {
    means[k] = sums[k].sum / static_cast<double>(sums[k].n);
    vars[k] = variance_of_mean(sums[k].sum, sums[k].sum_sq, sums[k].n);
    report.j_min_max_observed = std::max(report.j_min_max_observed, sums[k].max);
  }
  report.estimate = pairwise_sum(means) / k_count;
  report.std_error = std::sqrt(pairwise_sum(vars)) / k_count;

  report.patches.resize(m_count);
  for (std::size_t i = 0; i < m_count; ++i) {
    for (std::size_t k = 0; k < strata.size(); ++k) {
      means[k] = sums[k].patch_sum[i] / static_cast<double>(sums[k].n);
      vars[k] = variance_of_mean(sums[k].patch_sum[i], sums[k].patch_sum_sq[i], sums[k].n);
    }
    PatchCheck& p = report.patches[i];
    p.integral = pairwise_sum(means) / k_count;
    p.std_error = std::sqrt(pairwise_sum(vars)) / k_count;
    p.relative_error = std::abs(p.integral - report.ceiling) / report.ceiling;
  }
  return report;
}

BoundsTable deficit_summary(const DeficitReport& report, double regular_domain_measure) {
  if (report.samples == 0 || report.patches.empty()) throw std::domain_error("deficit_summary: empty report");
  BoundsTable t;
  t.lower = report.estimate;
  t.lower_std_error = report.std_error;
  t.regular_domain_measure = regular_domain_measure;
  t.upper = 1.0 - regular_domain_measure;
  t.consistent = t.lower - 3.0 * t.lower_std_error < t.upper && t.lower <= report.ceiling + 3.0 * t.lower_std_error;
  return t;
}

}  // namespace kscolour
