#pragma once

#include <cstdint>

#include "frankfit/types.hpp"

namespace frankfit {

// Counter-based generator: output i of stream s under base b is
// mix(mix(b + i*GAMMA) ^ tweak(s)), with mix the splitmix64 finalizer.
// State is just (base, tweak, position), so the (base_seed, stream_id)
// -> stream mapping is injective by construction and streams are
// independent of evaluation order.
class CounterRng {
  public:
    explicit CounterRng(SeedSpec seed)
        : base_(seed.base_seed),
          tweak_(mix64(seed.stream_id ^ 0xD6E8FEB86659FD93ull)) {}

    std::uint64_t next() {
        return mix64(mix64(base_ + kGamma * pos_++) ^ tweak_);
    }

    // Uniform on the open interval (0,1): 53-bit mantissa, zero redrawn.
    double uniform01_open() {
        for (;;) {
            double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
            if (u > 0.0) return u;
        }
    }

  private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

    static std::uint64_t mix64(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t base_;
    std::uint64_t tweak_;
    std::uint64_t pos_ = 0;
};

}  // namespace frankfit
