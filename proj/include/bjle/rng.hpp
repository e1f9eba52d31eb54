#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace bjle {

// Identifier recorded in every manifest. Changing any draw path below is a
// format break and must bump this string.
inline constexpr const char* rng_identifier = "xoshiro256pp-boxmuller-v1";

struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

// xoshiro256++ with splitmix64 state expansion and a cached Box-Muller pair.
// Bit-exact across platforms for the same seed.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm{seed};
        for (auto& w : state_) w = sm.next();
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform on [-half_width, half_width).
    double uniform_symmetric(double half_width) {
        return half_width * (2.0 * uniform01() - 1.0);
    }

    // Standard normal via Box-Muller; consumes two uniforms per pair.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01();  // (0, 1], log-safe
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Purpose tags for independent substreams of one master seed.
enum class Stream : std::uint64_t {
    rows = 1,      // Gaussian matrix rows
    dither = 2,    // first dither vector
    dither2 = 3,   // second dither vector
    xi = 4,        // circulant symbol
    theta = 5,     // sign flips
    row_set = 6,   // random row subset
    trial = 7,     // per-trial campaign streams
    gauss_mc = 8,  // Monte-Carlo gaussians in complexity estimates
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    SplitMix64 sm{seed ^ (salt + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2))};
    return sm.next();
}

// Independent generator for (master, purpose, index). Streams for different
// tags or indices never share draws, so e.g. appending matrix rows when m
// grows leaves earlier rows untouched.
inline Xoshiro256pp substream(std::uint64_t master, Stream tag, std::uint64_t index = 0) {
    return Xoshiro256pp(mix_seed(mix_seed(master, static_cast<std::uint64_t>(tag)), index));
}

// Per-trial seed derivation for multi-seed campaigns.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
    return mix_seed(mix_seed(master, static_cast<std::uint64_t>(Stream::trial)), counter);
}

}  // namespace bjle
