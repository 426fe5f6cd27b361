#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace prclab {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Root or child seed. Children are derived by hashing, so a tree of seeds
/// can be handed to independent trials without coordination.
class Seed {
public:
    constexpr Seed() noexcept = default;
    constexpr explicit Seed(std::uint64_t value) noexcept : value_(value) {}

    constexpr std::uint64_t value() const noexcept { return value_; }

    constexpr Seed child(std::uint64_t index) const noexcept {
        return Seed{mix64(value_ ^ mix64(index + 0x632be59bd9b4e019ULL))};
    }

    /// Labelled child, e.g. seed.child("noise"). FNV-1a over the label.
    constexpr Seed child(std::string_view label) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (char c : label) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ULL;
        }
        return Seed{mix64(value_ + 0x9e3779b97f4a7c15ULL) ^ mix64(h)};
    }

    friend constexpr bool operator==(Seed, Seed) noexcept = default;

private:
    std::uint64_t value_ = 0;
};

/// Counter-based generator: output i is mix64(key + i * golden). Satisfies
/// UniformRandomBitGenerator. Distributions are implemented here rather than
/// with <random> so results are identical across standard libraries.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(Seed seed) noexcept : key_(mix64(seed.value() ^ 0x5851f42d4c957f2dULL)) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        counter_ += 0x9e3779b97f4a7c15ULL;
        return mix64(key_ + counter_);
    }

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform on [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept {
        // Lemire's nearly-divisionless method.
        unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>((*this)()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool bit() noexcept { return ((*this)() >> 63) != 0; }

    bool bernoulli(double p) noexcept { return uniform() < p; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace prclab
