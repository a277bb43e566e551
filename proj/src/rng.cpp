#include "allocbandit/rng.hpp"

namespace allocbandit {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t episode, std::uint64_t stream_id) {
    return splitmix64(splitmix64(splitmix64(master) ^ episode) ^ stream_id);
}

} // namespace allocbandit
