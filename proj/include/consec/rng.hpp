#pragma once

#include <array>
#include <cstdint>

#include "consec/errors.hpp"
#include "consec/permutation.hpp"

namespace consec {

/// SplitMix64 (Steele, Lea, Flood 2014): a 64-bit counter-based generator.
/// Chosen for bit-reproducible streams across platforms and for cheap
/// derivation of independent per-shard streams: stream i of master seed s is
/// SplitMix64 seeded with the i-th output of SplitMix64(s).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound) by rejection; no modulo bias.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    /// Seed for the shard-th derived stream of the given master seed; equals
    /// the (shard+1)-th output of SplitMix64(master), computed in O(1) by
    /// advancing the counter directly.
    static std::uint64_t stream_seed(std::uint64_t master, std::uint64_t shard) {
        SplitMix64 g(master + shard * 0x9e3779b97f4a7c15ull);
        return g.next();
    }

private:
    std::uint64_t state_;
};

/// Uniform random permutation of length n via an unbiased Fisher-Yates
/// shuffle of the identity.
inline Permutation random_permutation(int n, SplitMix64& rng) {
    if (n < 1 || n > Permutation::kMaxLen)
        throw CapacityError("random permutation length out of range");
    std::array<std::uint8_t, Permutation::kMaxLen> vals{};
    for (int i = 0; i < n; ++i) vals[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i + 1);
    for (int i = n - 1; i > 0; --i) {
        const auto j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(vals[static_cast<std::size_t>(i)], vals[static_cast<std::size_t>(j)]);
    }
    return unchecked_from_ranks(vals.data(), n);
}

}  // namespace consec
