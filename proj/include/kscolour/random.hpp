#pragma once

#include <cstdint>
#include <random>

namespace kscolour {

/// Deterministic random source keyed on (seed, stream id).
///
/// Every Monte Carlo operation in the library draws from a stream whose id is
/// derived from the unit of work (stratum, grid point, trial cell), never from
/// the worker that happens to run it, so results do not depend on thread count.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Standard normal (Box-Muller; one value per call).
  double normal();

  /// Child stream for sub-unit `index`; depends only on (seed, stream id, index).
  RandomStream substream(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer, used for key derivation.
std::uint64_t mix64(std::uint64_t x);

}  // namespace kscolour
