#pragma once

#include <cstdint>
#include <string_view>

#include "semiradius/matrix_kernel.hpp"

namespace semiradius {

/// Name and version of the generator below. Bumping it invalidates every
/// stored (seed, profile) witness, so it is echoed in reports.
inline constexpr std::string_view kRngVersion = "splitmix64-ctr/1";

/// Counter-based generator: draw i of a stream keyed by K is the SplitMix64
/// finalizer applied to K + (i + 1) * 0x9E3779B97F4A7C15. Any draw can be
/// reproduced from (key, counter) alone. Normals use Box-Muller without
/// caching, so each normal consumes exactly two counters.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  /// Key for the named sub-stream `tag` of `seed`.
  static std::uint64_t derive(std::uint64_t seed, std::string_view tag);
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t tag);

  std::uint64_t next_u64();
  std::uint64_t counter() const { return counter_; }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  double normal();
  /// Circularly symmetric complex normal with E|z|^2 = 1.
  cplx complex_normal();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64_mix(std::uint64_t z);

}  // namespace semiradius
