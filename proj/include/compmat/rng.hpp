#pragma once

#include <cstdint>

namespace compmat {

/// SplitMix64 (Steele, Lea, Flood 2014). Chosen over std::mt19937_64 because
/// the standard distributions are implementation-defined; this generator plus
/// the derivations below reproduce bit-for-bit on every platform.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [-1, 1).
    double next_symmetric() { return 2.0 * next_unit() - 1.0; }

    /// Uniform integer in [0, bound) via the multiply-high reduction
    /// (Lemire 2016, without the rejection step; the bias is below 2^-64
    /// times bound and irrelevant here). bound must be nonzero.
    std::uint64_t next_below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

  private:
    std::uint64_t state_;
};

}  // namespace compmat
