// Deterministic counter-based random numbers: every draw is a pure function
// of (seed, counter), so parallel workers can sample disjoint coordinate
// ranges without shared state and any run is exactly reproducible.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace l1ldp {

/// Stateless splitmix64-based generator addressed by counter.
///
/// `bits(c)` returns the c-th output of the splitmix64 stream started at
/// `seed`, computed by random access (state = seed + (c+1) * golden gamma,
/// then the splitmix64 finalizer).  Streams for distinct seeds or distinct
/// counters are statistically independent for simulation purposes.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    /// Derives an independent per-stream generator (e.g. one per trial) by
    /// hashing the stream index into the seed.
    static CounterRng for_stream(std::uint64_t seed, std::uint64_t stream) {
        return CounterRng(finalize(seed ^ finalize(stream + 0x632be59bd9b4e019ULL)));
    }

    std::uint64_t bits(std::uint64_t counter) const {
        return finalize(seed_ + (counter + 1) * 0x9e3779b97f4a7c15ULL);
    }

    /// Uniform double in [0, 1), 53 random mantissa bits.
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; consumes uniform counters 2c and 2c+1.
    double gaussian(std::uint64_t counter) const {
        const double u1 = uniform(2 * counter);
        const double u2 = uniform(2 * counter + 1);
        const double radius = std::sqrt(-2.0 * std::log1p(-u1));
        return radius * std::cos(2.0 * std::numbers::pi * u2);
    }

  private:
    static std::uint64_t finalize(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t seed_;
};

}  // namespace l1ldp
