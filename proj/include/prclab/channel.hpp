#pragma once

#include "prclab/bitstring.hpp"
#include "prclab/errors.hpp"
#include "prclab/rng.hpp"

#include <cmath>
#include <cstdint>
#include <string>

namespace prclab {

/// Correlation parameter rho of the binary symmetric channel N_rho: each bit
/// is kept with probability (1 + rho) / 2.
class NoiseParameter {
public:
    constexpr NoiseParameter() noexcept = default;
    explicit NoiseParameter(double rho) : rho_(rho) {
        if (!(rho >= 0.0 && rho <= 1.0)) throw ParameterError("rho must lie in [0, 1], got " + std::to_string(rho));
    }

    constexpr double rho() const noexcept { return rho_; }

private:
    double rho_ = 1.0;
};

constexpr double flip_probability(NoiseParameter rho) noexcept { return (1.0 - rho.rho()) / 2.0; }

/// x XOR e with e ~ Ber((1 - rho)/2)^n, drawing from `rng`.
inline BitString apply_noise(const BitString& x, NoiseParameter rho, Rng& rng) {
    if (x.empty()) throw ParameterError("apply_noise on an empty bit string");
    BitString out = x;
    const double p = flip_probability(rho);
    if (p == 0.0) return out;
    // flip iff a uniform 64-bit draw falls below p * 2^64; p <= 1/2 so this fits.
    const auto threshold = static_cast<std::uint64_t>(std::ldexp(p, 64));
    const std::size_t n = x.size();
    for (std::size_t w = 0; w * 64 < n; ++w) {
        const std::size_t bits = (n - w * 64 < 64) ? n - w * 64 : 64;
        std::uint64_t mask = 0;
        for (std::size_t b = 0; b < bits; ++b)
            if (rng() < threshold) mask |= 1ULL << (63 - b);
        out.xor_word(w, mask);
    }
    return out;
}

inline BitString apply_noise(const BitString& x, NoiseParameter rho, Seed seed) {
    Rng rng(seed);
    return apply_noise(x, rho, rng);
}

} // namespace prclab
