#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace wlpart {

// splitmix64 finalizer; derives independent sub-seeds from one user seed.
[[nodiscard]] constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream = 0) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// mt19937_64 with distribution helpers written out by hand, so sequences do
/// not depend on the standard library's distribution implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : _engine(mix_seed(seed)) {}

  // Uniform in [0, 1).
  double uniform() noexcept {
    return static_cast<double>(_engine() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, bound), bound > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = _engine();
    while (x >= limit) {
      x = _engine();
    }
    return x % bound;
  }

  template <typename T> void shuffle(std::span<T> values) noexcept {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

private:
  std::mt19937_64 _engine;
};

} // namespace wlpart
