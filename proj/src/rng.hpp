#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace smc {

// SplitMix64 finalizer. All randomness in the library is derived from this
// mixer so that streams are pure functions of integer keys: no global state,
// no platform-dependent distributions, identical output for identical seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t key_combine(std::uint64_t h, std::uint64_t v) noexcept {
  return mix64(h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2)));
}

// Stream key for a (seed, trial, purpose, lane) tuple. Distinct purposes
// (payload draw, fading, noise, ...) never share a stream.
constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t a = 0,
                                   std::uint64_t b = 0, std::uint64_t c = 0) noexcept {
  return key_combine(key_combine(key_combine(mix64(seed), a), b), c);
}

namespace stream {
inline constexpr std::uint64_t dictionary = 0xd1c7u;
inline constexpr std::uint64_t payload = 0xbad9eu;
inline constexpr std::uint64_t fading = 0xfad1u;
inline constexpr std::uint64_t noise = 0x0153u;
}  // namespace stream

// Counter-based generator (SplitMix64 sequence). Box-Muller for gaussians to
// keep output independent of the C++ runtime's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t key) : state_(mix64(key ^ 0x853c49e6748fea9bull)) {}

  std::uint64_t next_u64() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform on (0, 1]; never zero, so log() is always finite.
  double next_unit() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal, Box-Muller.
  double next_gaussian() noexcept {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(next_unit()));
    const double a = 2.0 * std::numbers::pi * next_unit();
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Circularly-symmetric complex gaussian with E|z|^2 = variance.
  std::complex<double> next_cgaussian(double variance) noexcept {
    const double s = std::sqrt(variance * 0.5);
    const double re = s * next_gaussian();
    const double im = s * next_gaussian();
    return {re, im};
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace smc
