#include "tvgc/rng.hpp"

#include <cmath>
#include <numbers>

#include "tvgc/errors.hpp"

namespace tvgc {
namespace {

constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ull;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ull;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

inline void mul_hilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    const unsigned __int128 product = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(product >> 64);
    lo = static_cast<std::uint64_t>(product);
}

} // namespace

std::array<std::uint64_t, 4> philox4x64(const std::array<std::uint64_t, 4>& counter,
                                        const std::array<std::uint64_t, 2>& key) {
    std::array<std::uint64_t, 4> x = counter;
    std::uint64_t k0 = key[0];
    std::uint64_t k1 = key[1];
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            k0 += kWeyl0;
            k1 += kWeyl1;
        }
        std::uint64_t hi0, lo0, hi1, lo1;
        mul_hilo(x[0], kMul0, hi0, lo0);
        mul_hilo(x[2], kMul1, hi1, lo1);
        x = {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
    }
    return x;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) : key_{seed, stream} {}

void RngStream::refill() {
    block_ = philox4x64(counter_, key_);
    block_pos_ = 0;
    if (++counter_[0] == 0) ++counter_[1]; // carry; 2^128 blocks per stream
}

std::uint64_t RngStream::next_u64() {
    if (block_pos_ == 4) refill();
    return block_[block_pos_++];
}

double RngStream::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    // u1 in (0, 1] so the log is finite.
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_normal_ = radius * std::sin(angle);
    has_cached_normal_ = true;
    return radius * std::cos(angle);
}

int RngStream::rademacher() {
    return (next_u64() & 1u) ? 1 : -1;
}

std::uint64_t RngStream::uniform_below(std::uint64_t n) {
    if (n == 0) throw ValidationError("uniform_below requires n > 0");
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
    std::uint64_t draw;
    do {
        draw = next_u64();
    } while (draw >= limit);
    return draw % n;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return philox4x64({a, b, 0, 0}, {seed, 0x746A72B33B3A0E6Bull})[0];
}

} // namespace tvgc
