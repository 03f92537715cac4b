#pragma once

#include <cstdint>
#include <cmath>

namespace green {

// SplitMix64 finalizer. Used to derive independent sub-stream seeds from a
// root seed and a stream index, so that drawing column j never depends on
// how many columns were drawn before it.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// seed for sub-stream `index` of the stream rooted at `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed ^ mix64(index + 1));
}

/// Deterministic standard-normal stream (xoshiro-free: SplitMix64 counter
/// generator + Box-Muller). Bit-reproducible for a given seed.
class NormalStream {
  public:
    explicit NormalStream(std::uint64_t seed) : state_(mix64(seed)) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0,1], u2 in [0,1)
        const double u1 = to_open_unit(next_u64());
        const double u2 = to_half_open_unit(next_u64());
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static double to_open_unit(std::uint64_t x) {
        // (0,1]: never 0, so log() is safe
        return (static_cast<double>(x >> 11) + 1.0) * 0x1.0p-53;
    }
    static double to_half_open_unit(std::uint64_t x) {
        return static_cast<double>(x >> 11) * 0x1.0p-53;
    }

    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace green
