#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace lindsum {

inline constexpr std::uint64_t kDefaultSeed = 20211958;

/// Seeded 64-bit Mersenne Twister with portable uniform and exponential
/// variates (the standard distribution adaptors are implementation-defined,
/// so identical seeds would not give identical streams across libraries).
///
/// Single owner: do not share one stream between concurrent samplers.
class RandomStream
{
  public:
    explicit RandomStream(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

    /// Uniform on the open interval (0, 1).
    double uniform()
    {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

  private:
    std::mt19937_64 engine_;
};

} // namespace lindsum
