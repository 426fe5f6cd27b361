#pragma once

// Block PRC from a PRF for sub-constant noise rates. A codeword is
// r_1 || F(r_1) || ... || r_B || F(r_B) with fresh uniform seeds r_i of ell
// bits; the decoder accepts iff some received block satisfies y = F(r). The
// PRF is the secret-prefix oracle: bit j of F(r) is R(sk || r || j).

#include "prclab/bitstring.hpp"
#include "prclab/channel.hpp"
#include "prclab/errors.hpp"
#include "prclab/oracle.hpp"
#include "prclab/prc.hpp"
#include "prclab/rng.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>

namespace prclab {

/// Width of the output-bit index appended to every PRF query.
inline constexpr std::size_t kPrfIndexWidth = 16;

struct PrfPrcParams {
    std::size_t lambda = 16;
    double design_rho = 0.0;
    std::size_t ell = 1;     ///< seed length per block
    std::size_t blocks = 1;  ///< block count B

    /// ell = ceil(log2(lambda) / (1 - rho)), B = lambda^2.
    static PrfPrcParams from_lambda(std::size_t lambda, double design_rho) {
        if (lambda < 2) throw ParameterError("lambda must be at least 2");
        if (!(design_rho >= 0.0 && design_rho < 1.0)) throw ParameterError("design rho must lie in [0, 1)");
        PrfPrcParams p;
        p.lambda = lambda;
        p.design_rho = design_rho;
        p.ell = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(lambda)) / (1.0 - design_rho)));
        p.blocks = lambda * lambda;
        p.validate();
        return p;
    }

    PrfPrcParams with_ell(std::size_t ell_override) const {
        PrfPrcParams p = *this;
        p.ell = ell_override;
        p.validate();
        return p;
    }

    PrfPrcParams with_blocks(std::size_t blocks_override) const {
        PrfPrcParams p = *this;
        p.blocks = blocks_override;
        p.validate();
        return p;
    }

    std::size_t codeword_length() const noexcept { return 2 * ell * blocks; }

    void validate() const {
        if (lambda == 0) throw ParameterError("lambda must be positive");
        if (ell == 0 || ell >= (std::size_t{1} << kPrfIndexWidth)) throw ParameterError("ell out of range");
        if (blocks == 0) throw ParameterError("block count must be positive");
    }
};

namespace detail {

// sk || r || 0^16, ready for the index field to be overwritten.
inline BitString prf_query_prefix(const SecretKey& sk, const BitString& r) {
    BitString q = sk.material + r;
    q.append_uint(0, kPrfIndexWidth);
    return q;
}

} // namespace detail

/// F_sk(r): bit j is R(sk || r || j) with j written in kPrfIndexWidth bits.
inline BitString prf_eval(const SecretKey& sk, const BitString& r, Oracle& oracle) {
    BitString q = detail::prf_query_prefix(sk, r);
    const std::size_t index_pos = q.size() - kPrfIndexWidth;
    BitString out(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) {
        q.set_uint(index_pos, j, kPrfIndexWidth);
        out.set(j, oracle.query(q));
    }
    return out;
}

inline BitString encode(const PrfPrcParams& params, const SecretKey& sk, Rng& coins, Oracle& oracle) {
    const std::size_t ell = params.ell;
    BitString c(params.codeword_length());
    for (std::size_t i = 0; i < params.blocks; ++i) {
        const BitString r = BitString::random(ell, coins);
        const BitString y = prf_eval(sk, r, oracle);
        const std::size_t base = 2 * ell * i;
        for (std::size_t j = 0; j < ell; ++j) {
            c.set(base + j, r[j]);
            c.set(base + ell + j, y[j]);
        }
    }
    return c;
}

/// Accepts iff some block (r~, y~) has y~ = F_sk(r~). Each block's check stops
/// at the first mismatching bit and the scan stops at the first valid block.
inline Verdict decode(const PrfPrcParams& params, const SecretKey& sk, const BitString& x, Oracle& oracle) {
    if (x.size() != params.codeword_length()) throw DimensionMismatch("received word has the wrong length");
    const std::size_t ell = params.ell;
    BitString q = detail::prf_query_prefix(sk, BitString(ell));
    const std::size_t seed_pos = sk.material.size();
    const std::size_t index_pos = seed_pos + ell;
    for (std::size_t i = 0; i < params.blocks; ++i) {
        const std::size_t base = 2 * ell * i;
        for (std::size_t j = 0; j < ell; ++j) q.set(seed_pos + j, x[base + j]);
        bool valid = true;
        for (std::size_t j = 0; j < ell && valid; ++j) {
            q.set_uint(index_pos, j, kPrfIndexWidth);
            valid = oracle.query(q) == x[base + ell + j];
        }
        if (valid) return Verdict::accept;
    }
    return Verdict::reject;
}

/// 1 - (1 - ((1 + rho)/2)^{2 ell})^B.
inline double closed_form_completeness(NoiseParameter rho, std::size_t ell, std::size_t blocks) {
    const double block_ok = std::pow((1.0 + rho.rho()) / 2.0, 2.0 * static_cast<double>(ell));
    if (block_ok >= 1.0) return 1.0;
    return -std::expm1(static_cast<double>(blocks) * std::log1p(-block_ok));
}

/// Union bound B * 2^{-ell} on the false-accept probability (the PRF's
/// negligible distinguishing term is dropped).
inline double closed_form_soundness_bound(std::size_t ell, std::size_t blocks) {
    return static_cast<double>(blocks) * std::ldexp(1.0, -static_cast<int>(ell));
}

/// The block PRC as a PrcScheme; keys are lambda uniform bits, KeyGen makes
/// no oracle queries, and Q = B * ell.
class PrfPrc {
public:
    explicit PrfPrc(PrfPrcParams params) : params_(params) { params_.validate(); }

    const PrfPrcParams& params() const noexcept { return params_; }

    std::size_t security_parameter() const noexcept { return params_.lambda; }
    std::size_t codeword_length() const noexcept { return params_.codeword_length(); }
    std::size_t key_length() const noexcept { return params_.lambda; }
    std::size_t query_bound() const noexcept { return params_.blocks * params_.ell; }

    SecretKey keygen(Rng& coins, Oracle&) const { return {BitString::random(params_.lambda, coins), {}}; }

    BitString encode(const SecretKey& sk, Rng& coins, Oracle& oracle) const {
        return prclab::encode(params_, sk, coins, oracle);
    }

    Verdict decode(const SecretKey& sk, const BitString& x, Rng&, Oracle& oracle) const {
        return prclab::decode(params_, sk, x, oracle);
    }

private:
    PrfPrcParams params_;
};

static_assert(PrcScheme<PrfPrc>);

} // namespace prclab
