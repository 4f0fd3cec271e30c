#pragma once

#include <array>
#include <cstdint>

namespace tvgc {

/// Philox-4x64 block function, 10 rounds.
///
/// Counter-based generator: the output is a pure function of (counter, key),
/// so independent streams are addressed rather than seeded-and-skipped, and
/// results do not depend on scheduling order. Constants:
///   multipliers 0xD2E7470EE14C6C93, 0xCA5A826395121157
///   Weyl key increments 0x9E3779B97F4A7C15, 0xBB67AE8584CAA73B
/// Output vectors are cross-checked against numpy.random.Philox in the test
/// suite.
std::array<std::uint64_t, 4> philox4x64(const std::array<std::uint64_t, 4>& counter,
                                        const std::array<std::uint64_t, 2>& key);

/// One independent random stream, addressed by (seed, stream id).
///
/// The pair forms the 128-bit Philox key; the block counter starts at zero.
/// Every consumer of randomness in the library derives its own stream id
/// (e.g. one per bootstrap replication, one per Monte Carlo trial), which
/// keeps parallel runs deterministic regardless of thread count.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform01();

    /// Standard normal via Box-Muller; generates pairs, caches the second.
    double normal();

    /// +1 or -1 with equal probability.
    int rademacher();

    /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
    std::uint64_t uniform_below(std::uint64_t n);

private:
    void refill();

    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, 4> counter_{};
    std::array<std::uint64_t, 4> block_{};
    int block_pos_ = 4; // empty
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

/// Deterministically derives a child seed from (seed, a, b); used to give
/// experiment cells and trials their own independent seed space.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

} // namespace tvgc
