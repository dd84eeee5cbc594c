// sampling.hpp
// Seeded, platform-independent sampling. The generator is SplitMix64
// (Steele, Lea, Flood 2014): a fixed 64-bit permutation of a Weyl sequence,
// identical on every platform. Uniform doubles take the top 53 bits, and
// multinomial draws use inverse-CDF over the cumulative distribution, so a
// (distribution, shots, seed) triple always yields the same counts.

#pragma once

#include <cstdint>
#include <vector>

#include "qpa/simulator.hpp"

namespace qpa {

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1), 53-bit resolution
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

// Split function for per-task streams: child seed = first SplitMix64 output
// of (seed XOR golden-ratio-scrambled index). Documented so external runners
// can reproduce per-sample streams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed ^ ((index + 1) * 0x9E3779B97F4A7C15ULL));
    return g.next();
}

struct ShotCounts {
    std::size_t dim = 0;
    std::vector<std::uint64_t> counts;
    std::uint64_t shots = 0;

    bool operator==(const ShotCounts& o) const {
        return dim == o.dim && counts == o.counts && shots == o.shots;
    }
};

namespace detail {

inline std::vector<double> cumulative(const std::vector<double>& probs) {
    std::vector<double> cum(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cum[i] = acc;
    }
    cum.back() = 1.0;  // swallow rounding slack in the last bin
    return cum;
}

inline std::size_t draw_index(const std::vector<double>& cum, double u) {
    std::size_t lo = 0, hi = cum.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (u < cum[mid])
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

}  // namespace detail

inline ShotCounts sample(const Distribution& dist, std::uint64_t shots, std::uint64_t seed) {
    ShotCounts out{dist.dim, std::vector<std::uint64_t>(dist.dim, 0), shots};
    const std::vector<double> cum = detail::cumulative(dist.probabilities);
    SplitMix64 rng(seed);
    for (std::uint64_t s = 0; s < shots; ++s) ++out.counts[detail::draw_index(cum, rng.uniform())];
    return out;
}

}  // namespace qpa
