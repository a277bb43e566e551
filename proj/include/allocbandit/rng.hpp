#pragma once

#include <cstdint>
#include <random>

namespace allocbandit {

// splitmix64 finalizer. Stateless bijection on 64-bit words, used as the
// published seed-mixing function so that episode partitions are reproducible
// from (master seed, episode index, stream id) alone.
std::uint64_t splitmix64(std::uint64_t z);

// Derives the seed of one named stream of one episode.
// Stream ids: 0 = environment outcomes, 1 = policy coins, 2 = instance sampling.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t episode, std::uint64_t stream_id);

// Deterministic pseudo-random stream. mt19937_64 is specified exactly by the
// standard, and the uniform draw below avoids std::uniform_real_distribution
// (whose output is implementation-defined), so identical seeds give identical
// draw sequences on every platform.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform on [0, 1), 53-bit resolution, one engine draw.
    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // Uniform on [lo, hi), one engine draw.
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    // Fair coin, one engine draw.
    bool coin() { return (eng_() >> 63) != 0; }

private:
    std::mt19937_64 eng_;
};

} // namespace allocbandit
