#include "kscolour/phenomenology.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kscolour/parallel.hpp"

namespace kscolour {

namespace {
constexpr std::uint64_t kPhenoStream = 0x5048454e;    // "PHEN"
constexpr std::uint64_t kTheoremStream = 0x54484d31;  // "THM1"
constexpr std::uint64_t kChunks = 64;
}  // namespace

std::string to_string(PhenoClass c) {
  switch (c) {
    case PhenoClass::U0:
      return "U0";
    case PhenoClass::U1:
      return "U1";
    case PhenoClass::D:
      return "D";
    case PhenoClass::Undefined:
      return "UNDEFINED";
  }
  return "?";
}

std::string to_string(DensityVerdict v) {
  switch (v) {
    case DensityVerdict::CoreLike:
      return "CORE_LIKE";
    case DensityVerdict::CrustLike:
      return "CRUST_LIKE";
    case DensityVerdict::OutsideD:
      return "OUTSIDE_D";
  }
  return "?";
}

PhenoClass classify_point(const Colouring& c, const UnitVec& p, double delta, std::size_t samples, RandomStream& rng) {
  const auto pts = c.sample_in_domain(Cap(p, std::min(delta, kPi)), rng, samples);
  bool zero = false, one = false;
  for (const auto& cp : pts) {
    zero |= cp.colour == Colour::Zero;
    one |= cp.colour == Colour::One;
  }
  if (zero && one) return PhenoClass::D;
  if (zero) return PhenoClass::U0;
  if (one) return PhenoClass::U1;
  return PhenoClass::Undefined;
}

double PhenoMap::false_u_risk(double minority_fraction) const {
  return std::pow(1.0 - minority_fraction, static_cast<double>(samples_per_cap));
}

double PhenoMap::std_error(double mu) const {
  return grid.empty() ? 0.0 : std::sqrt(mu * (1.0 - mu) / static_cast<double>(grid.size()));
}

PhenoMap classify_phenomenological(const Colouring& c, const ClassifyOptions& options) {
  if (!(options.delta > 0.0)) throw std::domain_error("classify: delta must be positive");
  if (options.samples_per_cap == 0) throw std::domain_error("classify: samples_per_cap must be >= 1");
  PhenoMap map;
  map.colouring = c.name();
  map.delta = options.delta;
  map.samples_per_cap = options.samples_per_cap;
  map.seed = options.seed;
  map.grid = fibonacci_grid(options.grid_size);
  map.classes.assign(map.grid.size(), PhenoClass::Undefined);
  const RandomStream base(options.seed, kPhenoStream);
  parallel_for(map.grid.size(), options.threads, [&](std::size_t i) {
    RandomStream sub = base.substream(i);
    map.classes[i] = classify_point(c, map.grid[i], options.delta, options.samples_per_cap, sub);
  });
  std::array<std::size_t, 4> counts{};
  for (PhenoClass k : map.classes) ++counts[static_cast<std::size_t>(k)];
  const auto n = static_cast<double>(map.grid.size());
  map.mu_u0 = static_cast<double>(counts[0]) / n;
  map.mu_u1 = static_cast<double>(counts[1]) / n;
  map.mu_d = static_cast<double>(counts[2]) / n;
  map.mu_undefined = static_cast<double>(counts[3]) / n;
  if (c.kind() == ColouringKind::Pseudo) map.inconsistencies = counts[3];
  return map;
}

GridIndex::GridIndex(const std::vector<UnitVec>& points, double max_radius)
    : points_(&points), max_radius_(max_radius) {
  if (!(max_radius > 0.0)) throw std::domain_error("GridIndex: radius must be positive");
  cell_ = std::max(2.0 * std::sin(std::min(max_radius, kPi) / 2.0), 1e-6);
  dim_ = static_cast<std::int64_t>(std::ceil(2.0 / cell_)) + 1;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    buckets_[key(static_cast<std::int64_t>((p.x() + 1.0) / cell_), static_cast<std::int64_t>((p.y() + 1.0) / cell_),
                 static_cast<std::int64_t>((p.z() + 1.0) / cell_))]
        .push_back(i);
  }
}

std::int64_t GridIndex::key(std::int64_t i, std::int64_t j, std::int64_t k) const { return (i * dim_ + j) * dim_ + k; }

std::vector<std::size_t> GridIndex::within(const UnitVec& p, double radius) const {
  if (radius > max_radius_) throw std::domain_error("GridIndex::within: radius exceeds index radius");
  const auto bi = static_cast<std::int64_t>((p.x() + 1.0) / cell_);
  const auto bj = static_cast<std::int64_t>((p.y() + 1.0) / cell_);
  const auto bk = static_cast<std::int64_t>((p.z() + 1.0) / cell_);
  std::vector<std::size_t> out;
  for (std::int64_t i = bi - 1; i <= bi + 1; ++i) {
    for (std::int64_t j = bj - 1; j <= bj + 1; ++j) {
      for (std::int64_t k = bk - 1; k <= bk + 1; ++k) {
        if (i < 0 || j < 0 || k < 0 || i >= dim_ || j >= dim_ || k >= dim_) continue;
        const auto it = buckets_.find(key(i, j, k));
        if (it == buckets_.end()) continue;
        for (std::size_t idx : it->second) {
          if (angle_between(p, (*points_)[idx]) <= radius) out.push_back(idx);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t GridIndex::nearest(const UnitVec& p) const {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  double best_angle = kPi + 1.0;
  auto consider = [&](std::size_t idx) {
    const double a = angle_between(p, (*points_)[idx]);
    if (a < best_angle) {
      best_angle = a;
      best = idx;
    }
  };
  for (std::size_t idx : within(p, max_radius_)) consider(idx);
  if (best == std::numeric_limits<std::size_t>::max()) {
    for (std::size_t idx = 0; idx < points_->size(); ++idx) consider(idx);
  }
  return best;
}

Theorem1Report theorem1_check(const PhenoMap& map, const Colouring& c, const RandomStream& rng,
                              std::uint64_t target_qualifying, std::uint64_t max_attempts, std::size_t threads) {
  if (map.grid.empty()) throw std::domain_error("theorem1_check: empty map");
  if (max_attempts == 0) max_attempts = 20 * target_qualifying;
  const double radius = map.delta + fibonacci_spacing(map.grid.size());
  const GridIndex index(map.grid, radius);

  // Phenomenological colour of p, or -1 when p does not qualify.
  auto member_colour = [&](const UnitVec& p, RandomStream& sub) -> int {
    const auto cells = index.within(p, radius);
    if (cells.empty()) return -1;
    const PhenoClass cls = map.classes[cells.front()];
    if (cls != PhenoClass::U0 && cls != PhenoClass::U1) return -1;
    for (std::size_t i : cells) {
      if (map.classes[i] != cls) return -1;
    }
    if (classify_point(c, p, map.delta, map.samples_per_cap, sub) != cls) return -1;
    return cls == PhenoClass::U0 ? 0 : 1;
  };

  const RandomStream base = RandomStream(rng.seed(), rng.stream_id() ^ kTheoremStream);
  std::vector<Theorem1Report> parts(kChunks);
  parallel_for(kChunks, threads, [&](std::size_t k) {
    RandomStream sub = base.substream(k);
    const std::uint64_t target = target_qualifying / kChunks + (k < target_qualifying % kChunks ? 1 : 0);
    const std::uint64_t attempts = max_attempts / kChunks + (k < max_attempts % kChunks ? 1 : 0);
    Theorem1Report& r = parts[k];
    while (r.qualifying_triads < target && r.triads_sampled < attempts) {
      const auto triad = sample_uniform_triad(sub);
      ++r.triads_sampled;
      std::array<int, 3> col{};
      bool ok = true;
      for (std::size_t m = 0; m < 3 && ok; ++m) {
        col[m] = member_colour(triad[m], sub);
        ok = col[m] >= 0;
      }
      if (!ok) continue;
      ++r.qualifying_triads;
      if (col[0] + col[1] + col[2] != 2) ++r.triad_violations;
      for (auto [a, b] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
        ++r.pairs_checked;
        if (col[a] + col[b] < 1) ++r.pair_violations;
      }
    }
  });
  Theorem1Report total;
  for (const auto& r : parts) {
    total.triads_sampled += r.triads_sampled;
    total.qualifying_triads += r.qualifying_triads;
    total.triad_violations += r.triad_violations;
    total.pairs_checked += r.pairs_checked;
    total.pair_violations += r.pair_violations;
  }
  return total;
}

DensityProfile density_profile(const Colouring& c, const PhenoMap& map, const UnitVec& center,
                               const std::vector<double>& radii, std::size_t samples, const RandomStream& rng,
                               std::size_t threads) {
  if (radii.empty()) throw std::domain_error("density_profile: no radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] < radii[i - 1]))) {
      throw std::domain_error("density_profile: radii must be positive and strictly decreasing");
    }
  }
  if (samples == 0) throw std::domain_error("density_profile: samples must be >= 1");
  DensityProfile out;
  out.center = center;
  out.radii = radii;
  out.samples = samples;
  for (std::size_t r = 0; r < radii.size(); ++r) {
    const double probe = std::min(map.delta, radii[r] * radii[r]);
    const Cap cap(center, std::min(radii[r], kPi));
    std::vector<std::uint64_t> hits(kChunks, 0);
    const RandomStream base = rng.substream(r);
    parallel_for(kChunks, threads, [&](std::size_t k) {
      RandomStream sub = base.substream(k);
      const std::size_t n = samples / kChunks + (k < samples % kChunks ? 1 : 0);
      for (std::size_t i = 0; i < n; ++i) {
        const UnitVec p = sample_uniform_cap(sub, cap);
        hits[k] += classify_point(c, p, probe, map.samples_per_cap, sub) == PhenoClass::D;
      }
    });
    const double f = static_cast<double>(pairwise_sum(hits)) / static_cast<double>(samples);
    out.probe_resolution.push_back(probe);
    out.fractions.push_back(f);
    out.std_errors.push_back(std::sqrt(f * (1.0 - f) / static_cast<double>(samples)));
  }
  const bool core = std::all_of(out.fractions.begin(), out.fractions.end(), [](double f) { return f >= 0.99; });
  const bool outside = std::all_of(out.fractions.begin(), out.fractions.end(), [](double f) { return f == 0.0; });
  out.verdict = core ? DensityVerdict::CoreLike : (outside ? DensityVerdict::OutsideD : DensityVerdict::CrustLike);
  return out;
}

}  // namespace kscolour
