#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace distprof {

using Engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed of the substream addressed by (seed, keys...). Distinct key paths give
// statistically independent engines, so parallel work can be keyed by a
// counter instead of by scheduling order.
inline std::uint64_t substream_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
    std::uint64_t state = splitmix64(seed);
    for (auto key : keys) {
        state = splitmix64(state ^ splitmix64(key + 0x632be59bd9b4e019ULL));
    }
    return state;
}

inline Engine substream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
    return Engine(substream_seed(seed, keys));
}

} // namespace distprof
