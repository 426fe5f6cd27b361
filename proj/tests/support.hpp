#pragma once

// Reference computations and toy schemes shared by the unit tests and the
// acceptance binary. The reference computations deliberately take the slow,
// definitional route so they can cross-check the library's fast paths.

#include "prclab/boolean_analysis.hpp"
#include "prclab/compiler.hpp"
#include "prclab/oracle.hpp"
#include "prclab/prc.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

namespace prclab::testkit {

// ---- Boolean analysis by definition -------------------------------------

/// Pr[N_rho(x) = y] = p^d (1-p)^(n-d) with p = (1-rho)/2 and d = dist(x, y).
inline double channel_probability(std::size_t x, std::size_t y, unsigned n, double rho) {
    const double p = (1.0 - rho) / 2.0;
    const int d = std::popcount(x ^ y);
    return std::pow(p, d) * std::pow(1.0 - p, static_cast<int>(n) - d);
}

/// (T_rho f)(x) = E_{y ~ N_rho(x)} f(y) as a 2^n x 2^n double sum.
inline std::vector<double> definitional_noise(const FunctionTable& f, double rho) {
    const unsigned n = f.dimension();
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t x = 0; x < f.size(); ++x)
        for (std::size_t y = 0; y < f.size(); ++y) out[x] += channel_probability(x, y, n, rho) * f[y];
    return out;
}

/// f^(S) = E_x f(x) chi_S(x).
inline std::vector<double> definitional_fourier(const FunctionTable& f) {
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t s = 0; s < f.size(); ++s) {
        for (std::size_t x = 0; x < f.size(); ++x) out[s] += (std::popcount(s & x) & 1 ? -f[x] : f[x]);
        out[s] /= static_cast<double>(f.size());
    }
    return out;
}

/// Pr[f(x~) = g(x)] summed over every (x, x~, label) triple.
inline double definitional_collision(const RandomizedFunctionTable& f, const RandomizedFunctionTable& g, double rho) {
    const unsigned n = f.dimension();
    const std::size_t size = f.points();
    double total = 0.0;
    for (std::size_t x = 0; x < size; ++x)
        for (std::size_t xt = 0; xt < size; ++xt) {
            const double w = channel_probability(x, xt, n, rho);
            for (const auto& o : g.row(x)) total += w * o.mass * f.mass(xt, o.label);
        }
    return total / static_cast<double>(size);
}

// ---- Toy schemes without oracle traffic -----------------------------------

/// Fixed verdict, uniform codewords.
template <Verdict V>
struct ConstantVerdictScheme {
    std::size_t n = 16;
    std::size_t security_parameter() const { return 8; }
    std::size_t codeword_length() const { return n; }
    std::size_t key_length() const { return 8; }
    std::size_t query_bound() const { return 0; }
    SecretKey keygen(Rng& r, Oracle&) const { return {BitString::random(8, r), {}}; }
    BitString encode(const SecretKey&, Rng& r, Oracle&) const { return BitString::random(n, r); }
    Verdict decode(const SecretKey&, const BitString&, Rng&, Oracle&) const { return V; }
};

using AlwaysAccept = ConstantVerdictScheme<Verdict::accept>;
using AlwaysReject = ConstantVerdictScheme<Verdict::reject>;

/// Accepts iff the first bit is 0.
struct FirstBitZero : AlwaysAccept {
    Verdict decode(const SecretKey&, const BitString& x, Rng&, Oracle&) const {
        return x[0] ? Verdict::reject : Verdict::accept;
    }
};

/// Encodes every message as all zeros.
struct AllZeros : AlwaysAccept {
    BitString encode(const SecretKey&, Rng&, Oracle&) const { return BitString(n); }
};

/// Declares Q queries but makes Q + 1 in the decoder.
struct Overspender : AlwaysAccept {
    std::size_t query_bound() const { return 2; }
    Verdict decode(const SecretKey& sk, const BitString&, Rng&, Oracle& o) const {
        for (std::size_t i = 0; i < 3; ++i) o.query(sk.material + BitString::from_uint(i, 4));
        return Verdict::accept;
    }
};

// ---- Decoders with a known heavy set --------------------------------------

/// The decoder queries sk || (x AND mask_i) || i for each mask; a query under
/// mask_i is hit by a 2^-|mask_i| fraction of inputs. Accepts iff the XOR of
/// all responses equals x[0].
struct MaskQueryScheme {
    std::size_t n = 10;
    std::vector<std::uint64_t> masks;

    std::size_t security_parameter() const { return 8; }
    std::size_t codeword_length() const { return n; }
    std::size_t key_length() const { return 8; }
    std::size_t query_bound() const { return masks.size(); }
    SecretKey keygen(Rng& r, Oracle&) const { return {BitString::random(8, r), {}}; }
    BitString encode(const SecretKey&, Rng& r, Oracle&) const { return BitString::random(n, r); }
    Verdict decode(const SecretKey& sk, const BitString& x, Rng&, Oracle& o) const {
        bool acc = false;
        for (std::size_t i = 0; i < masks.size(); ++i) {
            const BitString q = sk.material + BitString::from_uint(x.to_uint() & masks[i], n) + BitString::from_uint(i, 4);
            acc ^= o.query(q);
        }
        return acc == x[0] ? Verdict::accept : Verdict::reject;
    }
};

/// A mask-query decoder at n = 10 whose masks have weight in {0..3} (every
/// query heavy at tau = 0.1) or {6..10} (every query far below tau / 2).
inline MaskQueryScheme random_mask_scheme(Rng& rng) {
    static constexpr unsigned kWeights[] = {0, 1, 2, 3, 6, 7, 8, 10};
    MaskQueryScheme s;
    const std::size_t count = 1 + rng.below(5);
    for (std::size_t i = 0; i < count; ++i) {
        const unsigned w = kWeights[rng.below(std::size(kWeights))];
        std::uint64_t mask = 0;
        while (static_cast<unsigned>(std::popcount(mask)) < w) mask |= std::uint64_t{1} << rng.below(s.n);
        s.masks.push_back(mask);
    }
    return s;
}

// ---- Schemes over a 4-bit oracle domain -----------------------------------
//
// Keys are one bit and codewords two bits, so every query is 4 bits long and
// an oracle is a 16-bit truth table. All of these are small enough that the
// compiled and uncompiled soundness distributions can be computed exactly.

struct TinyBase {
    std::size_t security_parameter() const { return 1; }
    std::size_t codeword_length() const { return 2; }
    std::size_t key_length() const { return 1; }
    std::size_t query_bound() const { return 2; }
    SecretKey keygen(Rng& r, Oracle&) const { return {BitString::from_uint(r.bit(), 1), {}}; }
    static BitString q(bool k, bool a, bool b, bool c) {
        return BitString::from_uint((std::uint64_t{k} << 3) | (std::uint64_t{a} << 2) | (std::uint64_t{b} << 1) | c, 4);
    }
};

/// c = (a, F(k a 0 0)); accepts iff x1 = F(k x0 0 0).
struct TinyTag : TinyBase {
    BitString encode(const SecretKey& sk, Rng& r, Oracle& o) const {
        const bool a = r.bit();
        return BitString::from_uint((std::uint64_t{a} << 1) | o.query(q(sk.material[0], a, 0, 0)), 2);
    }
    Verdict decode(const SecretKey& sk, const BitString& x, Rng&, Oracle& o) const {
        return o.query(q(sk.material[0], x[0], 0, 0)) == x[1] ? Verdict::accept : Verdict::reject;
    }
};

/// Adaptive: the second query depends on the first response.
struct TinyAdaptive : TinyBase {
    BitString encode(const SecretKey&, Rng& r, Oracle&) const { return BitString::random(2, r); }
    Verdict decode(const SecretKey& sk, const BitString& x, Rng&, Oracle& o) const {
        const bool k = sk.material[0];
        const bool first = o.query(q(k, x[0], x[1], 0));
        if (first) return Verdict::accept;
        return o.query(q(k, x[1], first, 1)) ? Verdict::accept : Verdict::reject;
    }
};

/// Key generation reads F(1 1 1 1) and the decoder compares against it.
struct TinyKeygenQuery : TinyBase {
    SecretKey keygen(Rng& r, Oracle& o) const {
        const bool k = r.bit();
        o.query(q(1, 1, 1, 1));
        return {BitString::from_uint(k, 1), {}};
    }
    BitString encode(const SecretKey&, Rng& r, Oracle&) const { return BitString::random(2, r); }
    Verdict decode(const SecretKey& sk, const BitString& x, Rng&, Oracle& o) const {
        const bool anchor = o.query(q(1, 1, 1, 1));
        return o.query(q(sk.material[0], x[0], x[1], 0)) == anchor ? Verdict::accept : Verdict::reject;
    }
};

/// Randomized decoder: one coin picks which query to make.
struct TinyRandomized : TinyBase {
    BitString encode(const SecretKey&, Rng& r, Oracle&) const { return BitString::random(2, r); }
    Verdict decode(const SecretKey& sk, const BitString& x, Rng& r, Oracle& o) const {
        const bool coin = r.bit();
        return o.query(q(sk.material[0], coin, x[0], x[1])) ? Verdict::accept : Verdict::reject;
    }
};

/// Exact accept probabilities of the uncompiled and compiled soundness
/// experiments on a tiny scheme, each as an integer fraction.
struct ExactSoundness {
    std::uint64_t uncompiled_accepts = 0;
    std::uint64_t uncompiled_total = 0;
    unsigned __int128 compiled_accepts = 0;
    unsigned __int128 compiled_total = 0;
    std::size_t distinct_keys = 0;  ///< distinct (sk, pinned set) pairs seen

    double uncompiled() const { return static_cast<double>(uncompiled_accepts) / static_cast<double>(uncompiled_total); }
    double compiled() const { return static_cast<double>(compiled_accepts) / static_cast<double>(compiled_total); }
    bool identical() const {
        return compiled_accepts * uncompiled_total == static_cast<unsigned __int128>(uncompiled_accepts) * compiled_total;
    }
};

/// Both experiments, enumerated over every 16-point oracle, every key-coin
/// seed below `coin_seeds`, every pair of learning inputs (lambda = 1,
/// tau = 1/2, hence two decoder runs) and every x in {0,1}^2.
///
/// Uncompiled: sk <- KeyGen^F, accept iff Dec^F(sk, x).
/// Compiled: sk <- KeyGen^F0, S <- learn(Dec^F0), accept iff Dec^F2(sk, x)
///   with F2 agreeing with the key transcript and S and uniform elsewhere.
///   F0 doubles as the key-generation oracle: the transcript fixes only the
///   part of F0 that KeyGen read, and the rest of a uniform F0 is uniform, so
///   this marginal is exact.
/// Decoder and learning coins also range over `coin_seeds` seeds, so both
/// sides average over the same finite coin distribution.
template <PrcScheme S>
ExactSoundness exact_tiny_soundness(const S& scheme, std::size_t coin_seeds) {
    constexpr std::size_t kTables = std::size_t{1} << 16;
    const CompilerParams params(0.5);
    if (compile_rounds(scheme.security_parameter(), params.tau) != 2) throw ParameterError("expected two learning runs");

    const auto input = [](std::size_t v) { return BitString::from_uint(v, 2); };
    ExactSoundness out;

    for (std::size_t table = 0; table < kTables; ++table)
        for (std::size_t c = 0; c < coin_seeds; ++c) {
            TableOracle f(4, table);
            Rng kc{Seed(c)};
            const SecretKey sk = run_keygen(scheme, kc, f);
            for (std::size_t x = 0; x < 4; ++x)
                for (std::size_t d = 0; d < coin_seeds; ++d) {
                    Rng dc(Seed(1000 + d));
                    out.uncompiled_accepts += run_decode(scheme, sk, input(x), dc, f) == Verdict::accept;
                    ++out.uncompiled_total;
                }
        }

    // Group (F0, coins, learning inputs) by the resulting compiled key, then
    // enumerate F2 once per distinct key. The id packs the key bit and, for
    // each of the 16 points, whether it is pinned and to which bit.
    std::map<std::uint64_t, std::pair<CompiledKey, std::uint64_t>> keys;
    for (std::size_t table = 0; table < kTables; ++table)
        for (std::size_t c = 0; c < coin_seeds; ++c)
            for (std::size_t learn = 0; learn < 16; ++learn)
                for (std::size_t lc = 0; lc < coin_seeds; ++lc) {
                    TableOracle f0(4, table);
                    Rng kc{Seed(c)};
                    SecretKey sk = run_keygen(scheme, kc, f0);
                    const std::vector<BitString> inputs{input(learn >> 2), input(learn & 3)};
                    Rng coins(Seed(2000 + lc));
                    CompiledKey ck = compile_key(scheme, std::move(sk), f0, inputs, coins);
                    std::uint64_t id = ck.sk.material.to_uint() << 32;
                    for (const auto& [q, bit] : *ck.pinned) id |= std::uint64_t{bit ? 3U : 1U} << (2 * q.to_uint());
                    auto [it, fresh] = keys.try_emplace(id, std::move(ck), 0);
                    ++it->second.second;
                }
    out.distinct_keys = keys.size();

    // With P pinned points, each assignment of the free points stands for
    // 2^P tables, so the compiled numerator over a 2^16 * 4 * coins
    // denominator is count * accepts * 2^P.
    std::uint64_t weight = 0;
    for (const auto& [id, entry] : keys) {
        const auto& [ck, count] = entry;
        std::vector<std::size_t> free_points;
        for (std::size_t p = 0; p < 16; ++p)
            if (!ck.pinned->contains(BitString::from_uint(p, 4))) free_points.push_back(p);
        std::uint64_t acc = 0;
        for (std::size_t assignment = 0; assignment < (std::size_t{1} << free_points.size()); ++assignment) {
            std::uint64_t table = 0;
            for (std::size_t i = 0; i < free_points.size(); ++i)
                if ((assignment >> i) & 1U) table |= std::uint64_t{1} << free_points[i];
            TableOracle base(4, table);
            for (std::size_t x = 0; x < 4; ++x)
                for (std::size_t d = 0; d < coin_seeds; ++d) {
                    Rng dc(Seed(1000 + d));
                    acc += compiled_decode_with(scheme, ck, input(x), base, dc) == Verdict::accept;
                }
        }
        out.compiled_accepts += static_cast<unsigned __int128>(count) * acc << (16 - free_points.size());
        weight += count;
    }
    out.compiled_total = static_cast<unsigned __int128>(weight) * kTables * 4 * coin_seeds;
    return out;
}

} // namespace prclab::testkit
