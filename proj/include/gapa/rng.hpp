#pragma once

#include <cstdint>

namespace gapa {

// SplitMix64 finalizer. Good avalanche, cheap, and fully portable.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// A small counter-based random stream. Every draw advances an internal
// counter through mix64, so a stream is a pure function of its key.
class RngStream {
public:
    explicit RngStream(std::uint64_t key) : key_(key), counter_(0) {}

    std::uint64_t next_u64() { return mix64(key_ + 0x632BE59BD9B4E019ull * ++counter_); }

    // Uniform double in [0, 1), 53 bits of precision.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound). Lemire's multiply-shift; the bias of
    // at most bound/2^64 is far below anything our statistics can see.
    std::uint32_t next_index(std::uint32_t bound) {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
    }

    bool next_bernoulli(double p) { return next_unit() < p; }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

// Roles a stream can play inside one generation of the algorithm.
enum class StreamRole : std::uint64_t {
    Init = 1,
    Select = 2,
    CrossoverMask = 3,
    MutationMask = 4,
    MutationIndex = 5,
};

// Derives independent streams from (seed, generation, role, row).
// Because the key never involves a worker id, any partition of rows
// across workers reproduces exactly the same draws, which is what makes
// every execution mode output-identical under a fixed seed.
class RngPolicy {
public:
    explicit RngPolicy(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    RngStream stream(std::uint64_t generation, StreamRole role, std::uint64_t row) const {
        std::uint64_t key = mix64(seed_);
        key = mix64(key ^ generation);
        key = mix64(key ^ static_cast<std::uint64_t>(role));
        key = mix64(key ^ row);
        return RngStream(key);
    }

private:
    std::uint64_t seed_;
};

}  // namespace gapa
