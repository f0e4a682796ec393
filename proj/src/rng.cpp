#include "semiradius/rng.hpp"

#include <cmath>

namespace semiradius {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t CounterRng::derive(std::uint64_t seed, std::uint64_t tag) {
  return splitmix64_mix(splitmix64_mix(seed) ^ (tag * kGolden + 0x632BE59BD9B4E019ULL));
}

std::uint64_t CounterRng::derive(std::uint64_t seed, std::string_view tag) {
  // FNV-1a over the tag bytes.
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return derive(seed, h);
}

std::uint64_t CounterRng::next_u64() {
  ++counter_;
  return splitmix64_mix(key_ + counter_ * kGolden);
}

double CounterRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

int CounterRng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next_u64() % span);
}

double CounterRng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

cplx CounterRng::complex_normal() {
  constexpr double kHalfRoot = 0.70710678118654752440;
  const double re = normal();
  const double im = normal();
  return {kHalfRoot * re, kHalfRoot * im};
}

}  // namespace semiradius
