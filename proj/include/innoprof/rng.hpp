#pragma once

// Seeded randomness with named substreams. Sampling is implemented on top of
// the raw mt19937_64 output because the std distribution objects are
// implementation-defined; run manifests promise byte-identical reruns, so
// draws must not depend on the standard library vendor.

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace innoprof {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Independent deterministic substream, e.g. one per split/restart.
    static Rng substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0) {
        // splitmix64 of the tuple; decorrelates nearby seeds
        std::uint64_t z = seed;
        z = mix(z + 0x9E3779B97F4A7C15ULL * (stream + 1));
        z = mix(z + 0x9E3779B97F4A7C15ULL * (index + 1));
        return Rng(z);
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, n) by rejection; n must be > 0.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    /// Geometric number of trials >= 1 with success probability p.
    std::uint64_t geometric(double p) {
        if (p >= 1.0) return 1;
        std::uint64_t n = 1;
        while (!bernoulli(p) && n < 100000) ++n;
        return n;
    }

    /// Index draw from unnormalized nonnegative weights.
    std::size_t categorical(const std::vector<double>& weights) {
        double total = 0;
        for (double w : weights) total += w;
        double u = next_double() * total;
        double acc = 0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            acc += weights[i];
            if (u < acc) return i;
        }
        return weights.size() - 1;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    std::mt19937_64 engine_;
};

}  // namespace innoprof
