#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace combopred {

// Philox4x32-10 counter-based generator (Salmon et al. 2011).
//
// Streams derived from (seed, stream) are statistically independent, which
// is what makes bootstrap replicates order-independent: replicate k always
// draws from stream k no matter which thread runs it.
class Philox {
public:
    Philox(std::uint64_t seed, std::uint64_t stream) {
        const std::uint64_t k = mix(mix(seed) + 0x9E3779B97F4A7C15ULL * (stream + 1));
        key_[0] = static_cast<std::uint32_t>(k);
        key_[1] = static_cast<std::uint32_t>(k >> 32);
    }

    // Uniform draw in the open interval (0,1).
    double uniform() {
        const std::uint64_t bits = next64();
        return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller (deterministic draw count, so the
    // counter advances identically on every platform).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * pi() * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    // Uniform index in [0, n).
    std::size_t index(std::size_t n) {
        const double u = uniform();
        auto i = static_cast<std::size_t>(u * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

    // One keyed block of the underlying bijection; matches the published
    // philox4x32-10 test vectors.
    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                              std::array<std::uint32_t, 2> key) {
        std::uint32_t c0 = counter[0], c1 = counter[1], c2 = counter[2], c3 = counter[3];
        std::uint32_t k0 = key[0], k1 = key[1];
        for (int round = 0; round < 10; ++round) {
            std::uint32_t hi0, lo0, hi1, lo1;
            mulhilo(0xD2511F53u, c0, hi0, lo0);
            mulhilo(0xCD9E8D57u, c2, hi1, lo1);
            const std::uint32_t n0 = hi1 ^ c1 ^ k0;
            const std::uint32_t n1 = lo1;
            const std::uint32_t n2 = hi0 ^ c3 ^ k1;
            const std::uint32_t n3 = lo0;
            c0 = n0; c1 = n1; c2 = n2; c3 = n3;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        return {c0, c1, c2, c3};
    }

private:
    static constexpr double pi() { return 3.141592653589793238462643383279502884; }

    static std::uint64_t mix(std::uint64_t x) { // splitmix64 finalizer
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    static void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
        const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
        hi = static_cast<std::uint32_t>(p >> 32);
        lo = static_cast<std::uint32_t>(p);
    }

    void fill_block() {
        block_ = block({static_cast<std::uint32_t>(counter_),
                        static_cast<std::uint32_t>(counter_ >> 32), 0, 0},
                       key_);
        ++counter_;
        block_pos_ = 0;
    }

    std::uint64_t next64() {
        if (block_pos_ >= 4) fill_block();
        const std::uint64_t hi = block_[block_pos_];
        const std::uint64_t lo = block_[block_pos_ + 1];
        block_pos_ += 2;
        return (hi << 32) | lo;
    }

    std::array<std::uint32_t, 2> key_{};
    std::array<std::uint32_t, 4> block_{};
    std::uint64_t counter_ = 0;
    unsigned block_pos_ = 4; // forces a fill on first use
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace combopred
