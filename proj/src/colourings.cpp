#include "kscolour/colourings.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kscolour/parallel.hpp"

namespace kscolour {

std::string to_string(Colour c) {
  switch (c) {
    case Colour::Zero:
      return "0";
    case Colour::One:
      return "1";
    case Colour::Undefined:
      return "UNDEFINED";
  }
  return "?";
}

std::string to_string(ColouringKind k) {
  switch (k) {
    case ColouringKind::Regular:
      return "REGULAR";
    case ColouringKind::Pseudo:
      return "PSEUDO";
    case ColouringKind::User:
      return "USER";
  }
  return "?";
}

namespace {

Colour colour_of(int v) { return v == 0 ? Colour::Zero : Colour::One; }

// Shared sampler for colourings whose domain has positive measure: uniform cap
// points, keeping the defined ones.
std::vector<ColouredPoint> sample_regular(const Colouring& c, const Cap& cap, RandomStream& rng, std::size_t count) {
  std::vector<ColouredPoint> out;
  out.reserve(count);
  const std::size_t attempts = 4 * count + 16;
  for (std::size_t i = 0; i < attempts && out.size() < count; ++i) {
    const UnitVec p = sample_uniform_cap(rng, cap);
    const Colour col = c.query(p);
    if (is_defined(col)) out.push_back({p, col});
  }
  return out;
}

class PolarCap final : public Colouring {
 public:
  std::string name() const override { return "polar-cap"; }
  ColouringKind kind() const override { return ColouringKind::Regular; }
  Colour query(const UnitVec& p) const override {
    const double z2 = p.z() * p.z();
    if (z2 > 0.5) return Colour::Zero;
    if (z2 < 1.0 / 3.0) return Colour::One;
    return Colour::Undefined;
  }
  Colour query(const RationalRay& r) const override {
    // Exact comparisons of z^2 / n^2 with 1/2 and 1/3.
    const BigInt z2 = r.z() * r.z();
    const BigInt n2 = r.n() * r.n();
    if (2 * z2 > n2) return Colour::Zero;
    if (3 * z2 < n2) return Colour::One;
    return Colour::Undefined;
  }
  std::vector<ColouredPoint> sample_in_domain(const Cap& cap, RandomStream& rng, std::size_t count) const override {
    return sample_regular(*this, cap, rng, count);
  }
  std::optional<double> analytic_domain_measure() const override {
    return 1.0 - 1.0 / std::sqrt(2.0) + 1.0 / std::sqrt(3.0);
  }
};

class Meyer final : public Colouring {
 public:
  explicit Meyer(ParityClass zero_class) : zero_class_(zero_class) {}
  std::string name() const override {
    return zero_class_ == ParityClass::Z ? "meyer" : "meyer-" + std::string(to_string(zero_class_));
  }
  ColouringKind kind() const override { return ColouringKind::Pseudo; }
  Colour query(const UnitVec&) const override { return Colour::Undefined; }
  Colour query(const RationalRay& r) const override { return colour_of(meyer_colour(r, zero_class_)); }
  std::vector<ColouredPoint> sample_in_domain(const Cap& cap, RandomStream& rng, std::size_t count) const override {
    std::vector<ColouredPoint> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      const auto q = detail::sample_quad_near(cap.center(), cap.radius(), rng);
      UnitVec p = detail::to_unit(q);
      // Rays are sampled up to sign; report the representative inside the cap.
      if (dot(p, cap.center()) < 0.0) p = -p;
      out.push_back({p, detail::parity_class(q) == zero_class_ ? Colour::Zero : Colour::One});
    }
    return out;
  }
  std::optional<double> analytic_domain_measure() const override { return 0.0; }

 private:
  ParityClass zero_class_;
};

class Constant final : public Colouring {
 public:
  Constant(int colour, ConstantDomain domain) : colour_(colour_of(colour)), domain_(domain) {}
  std::string name() const override {
    return "constant-" + to_string(colour_) + (domain_ == ConstantDomain::Rational ? "-rational" : "");
  }
  ColouringKind kind() const override {
    return domain_ == ConstantDomain::Rational ? ColouringKind::Pseudo : ColouringKind::User;
  }
  Colour query(const UnitVec&) const override {
    return domain_ == ConstantDomain::Sphere ? colour_ : Colour::Undefined;
  }
  Colour query(const RationalRay&) const override { return colour_; }
  std::vector<ColouredPoint> sample_in_domain(const Cap& cap, RandomStream& rng, std::size_t count) const override {
    std::vector<ColouredPoint> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      if (domain_ == ConstantDomain::Sphere) {
        out.push_back({sample_uniform_cap(rng, cap), colour_});
      } else {
        UnitVec p = detail::to_unit(detail::sample_quad_near(cap.center(), cap.radius(), rng));
        if (dot(p, cap.center()) < 0.0) p = -p;
        out.push_back({p, colour_});
      }
    }
    return out;
  }
  std::optional<double> analytic_domain_measure() const override {
    return domain_ == ConstantDomain::Sphere ? 1.0 : 0.0;
  }

 private:
  Colour colour_;
  ConstantDomain domain_;
};

class LatitudeSplit final : public Colouring {
 public:
  explicit LatitudeSplit(double z0) : z0_(z0) {
    if (!(z0 > 0.0 && z0 < 1.0)) throw std::domain_error("latitude_split_colouring: z0 must lie in (0, 1)");
  }
  std::string name() const override { return "latitude-split"; }
  ColouringKind kind() const override { return ColouringKind::User; }
  Colour query(const UnitVec& p) const override {
    const double az = std::abs(p.z());
    if (az > z0_) return Colour::Zero;
    if (az < z0_) return Colour::One;
    return Colour::Undefined;
  }
  std::vector<ColouredPoint> sample_in_domain(const Cap& cap, RandomStream& rng, std::size_t count) const override {
    return sample_regular(*this, cap, rng, count);
  }
  std::optional<double> analytic_domain_measure() const override { return 1.0; }

 private:
  double z0_;
};

class Hybrid final : public Colouring {
  static constexpr std::size_t kMaxRounds = 64;

 public:
  Hybrid(std::string name, std::vector<ColouringPtr> parts) : name_(std::move(name)), parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("hybrid_colouring: no parts");
  }
  std::string name() const override { return name_; }
  ColouringKind kind() const override {
    const bool any_pseudo = std::any_of(parts_.begin(), parts_.end(),
                                        [](const ColouringPtr& p) { return p->kind() == ColouringKind::Pseudo; });
    return any_pseudo ? ColouringKind::Pseudo : ColouringKind::Regular;
  }
  Colour query(const UnitVec& p) const override {
    for (const auto& part : parts_) {
      const Colour c = part->query(p);
      if (is_defined(c)) return c;
    }
    return Colour::Undefined;
  }
  Colour query(const RationalRay& r) const override {
    for (const auto& part : parts_) {
      const Colour c = part->query(r);
      if (is_defined(c)) return c;
    }
    return Colour::Undefined;
  }
  std::vector<ColouredPoint> sample_in_domain(const Cap& cap, RandomStream& rng, std::size_t count) const override {
    // Each part samples on its own stream drawn from the caller's; a part keeps
    // only points where no earlier part is defined. The survivors are
    // interleaved round-robin from a random starting part.
    const std::uint64_t call_seed = rng.next_u64();
    const std::size_t start = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(parts_.size()) - 1));
    std::vector<std::vector<ColouredPoint>> kept(parts_.size());
    std::size_t total = 0;
    for (std::size_t round = 0; round < kMaxRounds && total < count; ++round) {
      for (std::size_t k = 0; k < parts_.size(); ++k) {
        RandomStream sub(call_seed, round * parts_.size() + k);
        for (const auto& cp : parts_[k]->sample_in_domain(cap, sub, count)) {
          bool shadowed = false;
          for (std::size_t j = 0; j < k && !shadowed; ++j) shadowed = is_defined(parts_[j]->query(cp.point));
          if (!shadowed) {
            kept[k].push_back(cp);
            ++total;
          }
        }
      }
    }
    std::vector<ColouredPoint> out;
    out.reserve(count);
    for (std::size_t i = 0; out.size() < count; ++i) {
      bool any = false;
      for (std::size_t j = 0; j < kept.size() && out.size() < count; ++j) {
        const std::size_t k = (start + j) % kept.size();
        if (i < kept[k].size()) {
          out.push_back(kept[k][i]);
          any = true;
        }
      }
      if (!any) break;
    }
    return out;
  }

 private:
  std::string name_;
  std::vector<ColouringPtr> parts_;
};

}  // namespace

ColouringPtr polar_cap_colouring() { return std::make_shared<PolarCap>(); }
ColouringPtr meyer_colouring(ParityClass zero_class) { return std::make_shared<Meyer>(zero_class); }
ColouringPtr constant_colouring(int colour, ConstantDomain domain) {
  if (colour != 0 && colour != 1) throw std::domain_error("constant_colouring: colour must be 0 or 1");
  return std::make_shared<Constant>(colour, domain);
}
ColouringPtr latitude_split_colouring(double z0) { return std::make_shared<LatitudeSplit>(z0); }
ColouringPtr hybrid_colouring(std::string name, std::vector<ColouringPtr> parts) {
  return std::make_shared<Hybrid>(std::move(name), std::move(parts));
}
ColouringPtr polar_meyer_hybrid(ParityClass zero_class) {
  return hybrid_colouring("hybrid", {polar_cap_colouring(), meyer_colouring(zero_class)});
}

std::vector<std::string> colouring_names() {
  return {"polar-cap",           "meyer",         "hybrid", "constant-0", "constant-1", "constant-0-rational",
          "constant-1-rational", "latitude-split"};
}

ColouringPtr make_colouring(const std::string& name, ParityClass zero_class) {
  if (name == "polar-cap") return polar_cap_colouring();
  if (name == "meyer") return meyer_colouring(zero_class);
  if (name == "hybrid") return polar_meyer_hybrid(zero_class);
  if (name == "constant-0") return constant_colouring(0, ConstantDomain::Sphere);
  if (name == "constant-1") return constant_colouring(1, ConstantDomain::Sphere);
  if (name == "constant-0-rational") return constant_colouring(0, ConstantDomain::Rational);
  if (name == "constant-1-rational") return constant_colouring(1, ConstantDomain::Rational);
  if (name == "latitude-split") return latitude_split_colouring();
  throw std::invalid_argument("unknown colouring '" + name + "'");
}

namespace {

// Splits `total` work items into a fixed number of chunks independent of the
// worker count.
std::vector<std::uint64_t> chunk_sizes(std::uint64_t total, std::uint64_t max_chunks = 256) {
  const std::uint64_t chunks = std::max<std::uint64_t>(1, std::min(total, max_chunks));
  std::vector<std::uint64_t> sizes(chunks, total / chunks);
  for (std::uint64_t i = 0; i < total % chunks; ++i) ++sizes[i];
  return sizes;
}

}  // namespace

DomainMeasure domain_measure(const Colouring& c, const RandomStream& rng, std::size_t samples, std::size_t threads) {
  DomainMeasure m;
  m.closed_form = c.analytic_domain_measure();
  m.samples = samples;
  if (samples == 0) return m;
  const auto sizes = chunk_sizes(samples);
  std::vector<std::uint64_t> hits(sizes.size(), 0);
  parallel_for(sizes.size(), threads, [&](std::size_t k) {
    RandomStream sub = rng.substream(k);
    for (std::uint64_t i = 0; i < sizes[k]; ++i) hits[k] += is_defined(c.query(sample_uniform_sphere(sub)));
  });
  const std::uint64_t total = pairwise_sum(hits);
  const double p = static_cast<double>(total) / static_cast<double>(samples);
  m.mc_estimate = p;
  m.mc_std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return m;
}

ViolationReport validate_ks_conditions(const Colouring& c, const RandomStream& rng, std::uint64_t triad_count,
                                       std::size_t threads) {
  if (triad_count == 0) throw std::domain_error("validate_ks_conditions: triad_count must be >= 1");
  const auto sizes = chunk_sizes(triad_count);
  std::vector<ViolationReport> parts(sizes.size());
  parallel_for(sizes.size(), threads, [&](std::size_t k) {
    RandomStream sub = rng.substream(k);
    ViolationReport& r = parts[k];
    for (std::uint64_t i = 0; i < sizes[k]; ++i) {
      const auto triad = sample_uniform_triad(sub);
      const std::array<Colour, 3> col{c.query(triad[0]), c.query(triad[1]), c.query(triad[2])};
      ++r.triads_sampled;
      bool violated = false;
      if (is_defined(col[0]) && is_defined(col[1]) && is_defined(col[2])) {
        ++r.triads_fully_defined;
        if (value(col[0]) + value(col[1]) + value(col[2]) != 2) {
          ++r.triad_violations;
          violated = true;
        }
      }
      for (auto [a, b] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
        if (is_defined(col[a]) && is_defined(col[b])) {
          ++r.pairs_checked;
          if (value(col[a]) + value(col[b]) < 1) {
            ++r.pair_violations;
            violated = true;
          }
        }
      }
      if (violated && r.exemplars.size() < 5) r.exemplars.push_back({triad, col});
    }
  });
  ViolationReport total;
  for (const auto& r : parts) {
    total.triads_sampled += r.triads_sampled;
    total.triads_fully_defined += r.triads_fully_defined;
    total.triad_violations += r.triad_violations;
    total.pairs_checked += r.pairs_checked;
    total.pair_violations += r.pair_violations;
    for (const auto& e : r.exemplars) {
      if (total.exemplars.size() < 5) total.exemplars.push_back(e);
    }
  }
  return total;
}

}  // namespace kscolour
