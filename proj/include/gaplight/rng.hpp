#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace gaplight {

// Every stochastic choice draws from a named sub-stream of the global seed,
// so results do not depend on which worker or in which order they run.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream,
                          std::uint64_t index = 0) noexcept;

// Uniform double in [0, 1) built from the top 53 bits; unlike
// std::uniform_real_distribution this is identical on every standard library.
inline double uniform01(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace gaplight
