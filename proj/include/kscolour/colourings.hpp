#pragma once

// Partial two-valued colourings of the sphere.
//
// A colouring answers point queries (0, 1 or undefined) and can draw points
// of its own domain inside a cap. Regular colourings are defined on open
// regions of positive measure; pseudo colourings live on a dense null set
// (the rational sphere) and can only be reached through their sampler.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kscolour/random.hpp"
#include "kscolour/rational.hpp"
#include "kscolour/sphere.hpp"

namespace kscolour {

enum class Colour : std::int8_t { Zero = 0, One = 1, Undefined = -1 };

inline bool is_defined(Colour c) { return c != Colour::Undefined; }
inline int value(Colour c) { return static_cast<int>(c); }
std::string to_string(Colour c);

enum class ColouringKind { Regular, Pseudo, User };
std::string to_string(ColouringKind k);

struct ColouredPoint {
  UnitVec point;
  Colour colour;
};

class Colouring {
 public:
  virtual ~Colouring() = default;

  virtual std::string name() const = 0;
  virtual ColouringKind kind() const = 0;

  /// Colour at a floating-point direction. Pseudo colourings return Undefined:
  /// a double is never certified to lie on their domain.
  virtual Colour query(const UnitVec& p) const = 0;
  /// Colour at an exact rational direction.
  virtual Colour query(const RationalRay& r) const { return query(r.to_unit()); }

  /// Up to `count` points of the domain inside `cap`, with their colours.
  /// May return fewer (or none) when the cap barely meets the domain.
  virtual std::vector<ColouredPoint> sample_in_domain(const Cap& cap, RandomStream& rng, std::size_t count) const = 0;

  /// Closed-form measure of the domain, when known.
  virtual std::optional<double> analytic_domain_measure() const { return std::nullopt; }
};

using ColouringPtr = std::shared_ptr<const Colouring>;

/// 0 on the polar caps z^2 > 1/2, 1 on the equatorial zone z^2 < 1/3,
/// undefined on the band between (including both boundary circles).
ColouringPtr polar_cap_colouring();

/// Parity-class colouring of the rational sphere.
ColouringPtr meyer_colouring(ParityClass zero_class = ParityClass::Z);

enum class ConstantDomain { Sphere, Rational };
/// Constant colouring on the whole sphere or on the rational sphere.
ColouringPtr constant_colouring(int colour, ConstantDomain domain);

/// 0 where |z| > z0, 1 where |z| < z0, undefined on the two circles |z| = z0.
/// Not a KS-colouring; it has a line discontinuity and no uncoloured gap.
ColouringPtr latitude_split_colouring(double z0 = 0.5);

/// Ordered composition: a point takes the colour of the first part defined there.
ColouringPtr hybrid_colouring(std::string name, std::vector<ColouringPtr> parts);

/// Polar-cap colouring with Meyer's colouring filling the uncoloured band.
ColouringPtr polar_meyer_hybrid(ParityClass zero_class = ParityClass::Z);

/// Built-in colourings by name: polar-cap, meyer, hybrid, constant-0,
/// constant-1, constant-0-rational, constant-1-rational, latitude-split.
/// Throws std::invalid_argument for unknown names.
ColouringPtr make_colouring(const std::string& name, ParityClass zero_class = ParityClass::Z);
std::vector<std::string> colouring_names();

struct DomainMeasure {
  std::optional<double> closed_form;
  double mc_estimate = 0.0;
  double mc_std_error = 0.0;
  std::size_t samples = 0;

  double value() const { return closed_form.value_or(mc_estimate); }
};

/// Closed form where available, together with a Monte Carlo estimate of
/// mu{query defined} from uniform float samples.
DomainMeasure domain_measure(const Colouring& c, const RandomStream& rng, std::size_t samples, std::size_t threads = 0);

struct TriadExemplar {
  std::array<UnitVec, 3> triad;
  std::array<Colour, 3> colours;
};

struct ViolationReport {
  std::uint64_t triads_sampled = 0;
  std::uint64_t triads_fully_defined = 0;
  std::uint64_t triad_violations = 0;
  std::uint64_t pairs_checked = 0;
  std::uint64_t pair_violations = 0;
  std::vector<TriadExemplar> exemplars;  // at most 5

  double triad_violation_rate() const {
    return triads_fully_defined ? static_cast<double>(triad_violations) / static_cast<double>(triads_fully_defined) : 0.0;
  }
  double pair_violation_rate() const {
    return pairs_checked ? static_cast<double>(pair_violations) / static_cast<double>(pairs_checked) : 0.0;
  }
};

/// Samples Haar-random real triads and checks triad sum == 2 on fully defined
/// triads and pair sum >= 1 on every orthogonal pair with both colours defined.
ViolationReport validate_ks_conditions(const Colouring& c, const RandomStream& rng, std::uint64_t triad_count,
                                       std::size_t threads = 0);

}  // namespace kscolour
