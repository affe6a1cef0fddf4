#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace rank1 {

// SplitMix64 finalizer (Steele et al.). Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Seed for stream `k` derived from `base`. Replication k of an experiment uses
// stream_seed(base_seed, k); within a replication, the environment uses
// sub-stream 0 and the policy sub-stream 1. The mixing is pure 64-bit integer
// arithmetic, so derived streams are identical on every platform.
constexpr std::uint64_t stream_seed(std::uint64_t base, std::uint64_t k) {
    return mix64(mix64(base) ^ (0x9E3779B97F4A7C15ull * (k + 1)));
}

// Seeded random stream. Wraps std::mt19937_64 (whose output sequence is fixed
// by the standard) and maps raw words to variates in-repo, because the
// std::*_distribution classes are implementation-defined and would break
// byte-for-byte reproducibility of published CSVs across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // Uniform over {0, ..., n-1} by rejection; no modulo bias.
    int uniform_index(int n) {
        if (n <= 0) throw std::invalid_argument("Rng::uniform_index: n must be positive");
        const std::uint64_t un = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / un * un;
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return static_cast<int>(x % un);
    }

    // Box-Muller. Pairs of draws share one transform; the spare is cached.
    double normal(double mean, double stddev) {
        if (has_spare_) {
            has_spare_ = false;
            return mean + stddev * spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return mean + stddev * r * std::cos(a);
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace rank1
