#pragma once

// Small schemes for exercising the estimators and the compiler.

#include "prclab/bitstring.hpp"
#include "prclab/errors.hpp"
#include "prclab/oracle.hpp"
#include "prclab/prc.hpp"
#include "prclab/rng.hpp"

#include <cstddef>

namespace prclab {

/// No oracle at all: c = r || (r XOR k) for a key k of `half` bits. Accepts
/// iff the two halves differ from the key pad in at most half/4 positions.
class OracleFreeScheme {
public:
    OracleFreeScheme(std::size_t lambda, std::size_t half) : lambda_(lambda), half_(half) {
        if (half == 0 || lambda == 0) throw ParameterError("oracle-free scheme needs positive sizes");
    }

    std::size_t security_parameter() const noexcept { return lambda_; }
    std::size_t codeword_length() const noexcept { return 2 * half_; }
    std::size_t key_length() const noexcept { return half_; }
    std::size_t query_bound() const noexcept { return 0; }

    SecretKey keygen(Rng& coins, Oracle&) const { return {BitString::random(half_, coins), {}}; }

    BitString encode(const SecretKey& sk, Rng& coins, Oracle&) const {
        const BitString r = BitString::random(half_, coins);
        return r + (r ^ sk.material);
    }

    Verdict decode(const SecretKey& sk, const BitString& x, Rng&, Oracle&) const {
        const BitString pad = x.slice(0, half_) ^ x.slice(half_, half_);
        return hamming_distance(pad, sk.material) * 4 <= half_ ? Verdict::accept : Verdict::reject;
    }

private:
    std::size_t lambda_;
    std::size_t half_;
};

/// One oracle query per call, to sk || (first `prefix` bits of the word).
/// The encoder writes that response into the last bit; the decoder accepts
/// iff the last bit matches. Every query is 2^{-prefix}-heavy, so with
/// n <= 16 the heavy set is computable exactly.
class PrefixQueryScheme {
public:
    PrefixQueryScheme(std::size_t lambda, std::size_t n, std::size_t prefix) : lambda_(lambda), n_(n), prefix_(prefix) {
        if (prefix == 0 || prefix >= n) throw ParameterError("prefix must lie in [1, n)");
    }

    std::size_t security_parameter() const noexcept { return lambda_; }
    std::size_t codeword_length() const noexcept { return n_; }
    std::size_t key_length() const noexcept { return lambda_; }
    std::size_t query_bound() const noexcept { return 1; }

    SecretKey keygen(Rng& coins, Oracle&) const { return {BitString::random(lambda_, coins), {}}; }

    BitString encode(const SecretKey& sk, Rng& coins, Oracle& oracle) const {
        BitString c = BitString::random(n_, coins);
        c.set(n_ - 1, oracle.query(sk.material + c.slice(0, prefix_)));
        return c;
    }

    Verdict decode(const SecretKey& sk, const BitString& x, Rng&, Oracle& oracle) const {
        return oracle.query(sk.material + x.slice(0, prefix_)) == x[n_ - 1] ? Verdict::accept : Verdict::reject;
    }

private:
    std::size_t lambda_;
    std::size_t n_;
    std::size_t prefix_;
};

static_assert(PrcScheme<OracleFreeScheme>);
static_assert(PrcScheme<PrefixQueryScheme>);

} // namespace prclab
