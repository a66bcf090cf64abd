#pragma once

#include <cmath>
#include <cstdint>

namespace trendsym {

// splitmix64 finalizer; bijective 64-bit scramble.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

// splitmix64: fixed algorithm, identical sequences for identical seeds on
// every platform. Used for all Monte Carlo work so runs are reproducible.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    // Uniform on the open interval (0, 1).
    double next_unit_open() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

// Independent substream `index` of a master seed. Streams are decorrelated
// by double scrambling, so parallel consumers can draw from disjoint
// substreams in any scheduling order and still reproduce bit-identical
// results.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(mix64(seed ^ mix64(index + 0x9E3779B97F4A7C15ULL)));
}

// Standard normal sampler, Marsaglia polar method. Avoids libm trig so the
// only transcendental dependency is log().
class NormalSampler {
public:
    explicit NormalSampler(SplitMix64 rng) : rng_(rng) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * rng_.next_unit_open() - 1.0;
            v = 2.0 * rng_.next_unit_open() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

private:
    SplitMix64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace trendsym
