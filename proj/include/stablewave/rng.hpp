#pragma once

#include <array>
#include <cstdint>

namespace stablewave {

namespace detail {

// splitmix64 finalizer, used both as the seeding avalanche hash and to
// expand (seed, stream) into generator state.
inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl64(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
}

} // namespace detail

// Seeded substream generator: xoshiro256++ whose state is derived from
// (seed, stream_index) by chaining splitmix64 over both words.  Identical
// pairs give bit-identical sequences; distinct stream indices give
// statistically independent streams, so replicates can run in parallel
// without coordination.
//
// Exact seeding recipe (for reproduction in other implementations):
//   z  = splitmix64_next(seed)            -- advances a counter starting at seed
//   z ^= splitmix64_next(stream ^ 0x6A09E667F3BCC909)
//   state[i] = splitmix64_next(z), i = 0..3  -- same chain, advanced in place
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_index = 0)
        : seed_(seed), stream_(stream_index) {
        std::uint64_t a = seed;
        std::uint64_t b = stream_index ^ 0x6A09E667F3BCC909ULL;
        std::uint64_t z = detail::splitmix64(a) ^ detail::splitmix64(b);
        for (auto& w : state_) w = detail::splitmix64(z);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = detail::rotl64(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = detail::rotl64(state_[3], 45);
        return result;
    }

    // Strictly inside (0,1): each 53-bit lattice point is offset by half a step.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_index() const { return stream_; }

private:
    std::array<std::uint64_t, 4> state_{};
    std::uint64_t seed_;
    std::uint64_t stream_;
};

} // namespace stablewave
