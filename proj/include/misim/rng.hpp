// Seeded random streams. One Rng per independent unit of work (block,
// trial, sweep point); sub-seeds are derived with a splitmix64 mix so the
// aggregate result does not depend on how work is partitioned.

#ifndef MISIM_RNG_HPP
#define MISIM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace misim {

/// 64-bit seed. Identical seed + identical call sequence gives an
/// identical sample stream.
struct RngSeed {
    std::uint64_t value = 0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Sub-seed for work unit `index` under a master seed.
inline RngSeed derive_seed(RngSeed master, std::uint64_t index) {
    return RngSeed{splitmix64(master.value + 0x9E3779B97F4A7C15ULL * (index + 1))};
}

/// mt19937_64 with the distributions this project needs. The Gaussian
/// uses the Marsaglia polar method (with cached spare) rather than
/// std::normal_distribution so streams do not depend on the standard
/// library implementation.
class Rng {
  public:
    explicit Rng(RngSeed seed) : engine_(splitmix64(seed.value)) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound], unbiased via rejection.
    std::uint64_t uniform_int(std::uint64_t bound) {
        const std::uint64_t range = bound + 1;
        if (range == 0) return next();  // bound == UINT64_MAX
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % range;
        std::uint64_t u;
        do {
            u = next();
        } while (u >= limit);
        return u % range;
    }

    /// BPSK symbol, +1 or -1 with probability 1/2.
    std::int8_t symbol() { return (next() >> 63) ? std::int8_t{1} : std::int8_t{-1}; }

    /// Standard normal deviate.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace misim

#endif  // MISIM_RNG_HPP
