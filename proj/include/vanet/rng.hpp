#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "vanet/errors.hpp"

namespace vanet {

/// Counter-style generator (SplitMix64). Small state, full 2^64 period,
/// cheap to construct per trial, and the basis of the documented seed
/// derivation scheme: every trial, adaptation round and sweep cell draws
/// from seed streams derived purely from (master seed, stream tag, index),
/// so results do not depend on worker count or scheduling.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Unit-mean exponential via inversion; argument of log is in (0, 1].
    double exponential() { return -std::log(1.0 - uniform01()); }

    /// Standard normal, Box-Muller. Uses two uniforms per draw (no caching,
    /// keeps the draw sequence position-independent).
    double normal() {
        const double u1 = 1.0 - uniform01(); // (0, 1]
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_;
};

/// Seed-stream derivation: hash the master seed with a stream tag, then
/// with the element index, through one SplitMix64 step each. Any (tag,
/// index) pair maps to a stable, independent-looking stream seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream_tag,
                                 std::uint64_t index) {
    SplitMix64 a(master ^ (0x6a09e667f3bcc909ULL + stream_tag));
    SplitMix64 b(a.next() ^ index);
    return b.next();
}

namespace seed_tags {
inline constexpr std::uint64_t kTrial = 1;      // Monte Carlo trials
inline constexpr std::uint64_t kAdaptRound = 2; // adaptation estimation rounds
inline constexpr std::uint64_t kCell = 3;       // unpaired sweep cells
inline constexpr std::uint64_t kOracle = 4;     // slot-level channel oracle
} // namespace seed_tags

/// Lognormal with parameters given as (median, sigma of log), rejection
/// sampled into [min, max].
struct TruncatedLogNormal {
    double median = 1.0;
    double sigma_log = 0.3;
    double min = 0.3;
    double max = 3.0;

    void validate() const {
        if (!(median > 0.0) || !(sigma_log >= 0.0))
            throw domain_error("TruncatedLogNormal: median must be > 0, sigma_log >= 0");
        if (!(min > 0.0) || !(max >= min))
            throw domain_error("TruncatedLogNormal: need 0 < min <= max");
    }

    double draw(SplitMix64& rng) const {
        const double mu = std::log(median);
        for (;;) {
            const double x = std::exp(mu + sigma_log * rng.normal());
            if (x >= min && x <= max) return x;
        }
    }
};

/// Uniform spacing distribution in meters.
struct UniformSpacing {
    double min = 15.0;
    double max = 40.0;

    void validate() const {
        if (!(min > 0.0) || !(max >= min))
            throw domain_error("UniformSpacing: need 0 < min <= max");
    }

    double mean() const { return 0.5 * (min + max); }
    double draw(SplitMix64& rng) const { return rng.uniform(min, max); }
};

} // namespace vanet
