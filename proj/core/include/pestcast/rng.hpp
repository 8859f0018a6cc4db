#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace pestcast {

/// Deterministic random stream. The mt19937_64 engine is fully specified by
/// the standard; the samplers below are written out explicitly because the
/// std::*_distribution classes are implementation-defined and would break
/// the byte-identical-output contract.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). n must be > 0.
    uint64_t uniform_index(uint64_t n) {
        // Rejection sampling to avoid modulo bias.
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    /// Uniform integer in [lo, hi] inclusive.
    int64_t uniform_int(int64_t lo, int64_t hi) {
        return lo + static_cast<int64_t>(uniform_index(static_cast<uint64_t>(hi - lo + 1)));
    }

    /// Standard normal via Box-Muller (no cached spare; keeps streams simple).
    double normal() {
        double u1;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    double exponential(double mean) {
        double u;
        do {
            u = uniform();
        } while (u <= 0.0);
        return -mean * std::log(u);
    }

    /// Gamma(shape, scale) via Marsaglia-Tsang.
    double gamma(double shape, double scale) {
        if (shape < 1.0) {
            const double u = std::max(uniform(), 1e-300);
            return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        while (true) {
            double x;
            double v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
            if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
                return d * v * scale;
            }
        }
    }

    /// Poisson by inversion of the multiplication method; fine for the
    /// moderate means used by the synthetic generator.
    int64_t poisson(double mean) {
        if (mean <= 0.0) return 0;
        int64_t count = 0;
        double remaining = mean;
        // Chunk large means so exp() does not underflow.
        while (remaining > 500.0) {
            count += poisson(500.0);
            remaining -= 500.0;
        }
        const double threshold = std::exp(-remaining);
        double product = uniform();
        while (product > threshold) {
            ++count;
            product *= uniform();
        }
        return count;
    }

    /// Negative binomial with the given mean and dispersion (size) parameter,
    /// sampled as a gamma-mixed Poisson. Larger dispersion -> closer to Poisson.
    int64_t negative_binomial(double mean, double dispersion) {
        if (mean <= 0.0) return 0;
        const double lambda = gamma(dispersion, mean / dispersion);
        return poisson(lambda);
    }

private:
    std::mt19937_64 engine_;
};

/// Derives independent stream seeds from a master seed, a purpose tag, and an
/// index. SplitMix64-style mixing; used so that parallel workers get stable
/// per-item streams regardless of scheduling.
inline uint64_t derive_seed(uint64_t master, std::string_view tag, uint64_t index) {
    uint64_t h = master ^ 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xbf58476d1ce4e5b9ULL;
        h ^= h >> 27;
    };
    for (const char c : tag) mix(static_cast<uint64_t>(static_cast<unsigned char>(c)));
    mix(index);
    h *= 0x94d049bb133111ebULL;
    h ^= h >> 31;
    return h;
}

} // namespace pestcast
