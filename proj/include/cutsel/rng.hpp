#pragma once

#include <cmath>
#include <cstdint>

namespace cutsel {

// Deterministic 64-bit generator (splitmix64). Used for weight initialization
// and Gaussian sampling so that runs are reproducible from a single integer
// seed, independent of the standard library's distribution implementations.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform on [0, 1), 53 bits of precision
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform on [lo, hi)
    double next_uniform(double lo, double hi) {
        return lo + (hi - lo) * next_uniform();
    }

    // standard normal via Box-Muller; draws two uniforms and caches the spare
    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // 1 - u in (0, 1] keeps the log argument away from zero
        double u1 = 1.0 - next_uniform();
        double u2 = next_uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double t = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace cutsel
