#pragma once

// Oracle-removal compiler for PRCs in the secret random oracle model.
//
// KeyGen' learns S, the decoder's oracle traffic on ceil(lambda/tau) uniform
// inputs under a fresh oracle F0, and appends it to the key. Enc' and Dec'
// each run the original procedure against their own independent oracle that
// is consistent with S (F1 and F2). The completeness experiment tracks two
// failure events:
//   Bad1  S misses a query that is tau-heavy for (sk, F2);
//   Bad2  not Bad1, yet Enc^F1 and Dec^F2 share a query outside S.

#include "prclab/bitstring.hpp"
#include "prclab/boolean_analysis.hpp"
#include "prclab/channel.hpp"
#include "prclab/errors.hpp"
#include "prclab/oracle.hpp"
#include "prclab/parallel.hpp"
#include "prclab/prc.hpp"
#include "prclab/rng.hpp"
#include "prclab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace prclab {

struct CompilerParams {
    double tau = 0.1;

    explicit CompilerParams(double threshold) : tau(threshold) {
        if (!(tau > 0.0 && tau < 1.0)) throw ParameterError("tau must lie in (0, 1)");
    }
};

/// ceil(lambda / tau).
inline std::size_t compile_rounds(std::size_t lambda, double tau) {
    return static_cast<std::size_t>(std::ceil(static_cast<double>(lambda) / tau - 1e-12));
}

/// sk' = (sk, S). `pinned` is S together with the key-generation transcript:
/// every oracle the compiled scheme uses must agree with it.
struct CompiledKey {
    SecretKey sk;
    QuerySet learned;
    std::shared_ptr<const QuerySet> pinned;

    CompiledKey(SecretKey key, QuerySet s) : sk(std::move(key)), learned(std::move(s)) {
        auto all = std::make_shared<QuerySet>(sk.keygen_transcript);
        all->merge(learned);
        pinned = std::move(all);
    }
};

/// Runs the decoder on each probe input against f0 and returns its traffic.
template <PrcScheme S>
CompiledKey compile_key(const S& scheme, SecretKey sk, Oracle& f0, std::span<const BitString> inputs, Rng& coins) {
    RecordingOracle recording(f0);
    for (const auto& x : inputs) run_decode(scheme, sk, x, coins, recording);
    return CompiledKey(std::move(sk), recording.take_log());
}

/// KeyGen' for an existing key: ceil(lambda/tau) uniform decoder runs under
/// F0 = a fresh oracle consistent with the key-generation transcript.
template <PrcScheme S>
CompiledKey compile_key(const S& scheme, const CompilerParams& params, SecretKey sk, Seed seed) {
    const std::size_t rounds = compile_rounds(scheme.security_parameter(), params.tau);
    Rng input_rng(seed.child("inputs"));
    std::vector<BitString> inputs;
    inputs.reserve(rounds);
    for (std::size_t k = 0; k < rounds; ++k) inputs.push_back(BitString::random(scheme.codeword_length(), input_rng));
    LazyOracle f0 = consistent_resample(sk.keygen_transcript, seed.child("F0"), LazyOracle::Logging::count_only);
    Rng coins(seed.child("coins"));
    return compile_key(scheme, std::move(sk), f0, inputs, coins);
}

/// KeyGen': sample sk (absorbing any oracle traffic of KeyGen) and learn S.
template <PrcScheme S>
CompiledKey compile_keygen(const S& scheme, const CompilerParams& params, Seed seed) {
    LazyOracle keygen_oracle(seed.child("keygen-oracle"), LazyOracle::Logging::count_only);
    Rng coins(seed.child("keygen"));
    SecretKey sk = run_keygen(scheme, coins, keygen_oracle);
    return compile_key(scheme, params, std::move(sk), seed.child("learn"));
}

/// Enc' against an explicit base oracle: S first, then `base`.
template <PrcScheme S>
BitString compiled_encode_with(const S& scheme, const CompiledKey& ck, Oracle& base, Rng& coins) {
    PinnedOracle f1(ck.pinned, base);
    return run_encode(scheme, ck.sk, coins, f1);
}

template <PrcScheme S>
Verdict compiled_decode_with(const S& scheme, const CompiledKey& ck, const BitString& x, Oracle& base, Rng& coins) {
    PinnedOracle f2(ck.pinned, base);
    return run_decode(scheme, ck.sk, x, coins, f2);
}

/// Enc': the original encoder against F1, a fresh resample consistent with S.
template <PrcScheme S>
BitString compiled_encode(const S& scheme, const CompiledKey& ck, Seed seed) {
    LazyOracle f1 = consistent_resample(ck.pinned, seed.child("F1"), LazyOracle::Logging::count_only);
    Rng coins(seed.child("coins"));
    return run_encode(scheme, ck.sk, coins, f1);
}

/// Dec': the original decoder against F2, a fresh resample consistent with S.
template <PrcScheme S>
Verdict compiled_decode(const S& scheme, const CompiledKey& ck, const BitString& x, Seed seed) {
    LazyOracle f2 = consistent_resample(ck.pinned, seed.child("F2"), LazyOracle::Logging::count_only);
    Rng coins(seed.child("coins"));
    return run_decode(scheme, ck.sk, x, coins, f2);
}

namespace detail {

/// Forwards queries and counts, for each distinct query, the runs that made
/// it. A query repeated within one run counts once.
class RunCountingOracle final : public Oracle {
public:
    explicit RunCountingOracle(Oracle& inner) : inner_(inner) {}

    void start_run() noexcept { ++run_; }

    bool query(const BitString& q) override {
        auto it = slots_.find(q);
        if (it == slots_.end()) {
            it = slots_.emplace(q, Slot{0, 0}).first;
            order_.push_back(&it->first);
        }
        if (it->second.last_run != run_) {
            it->second.last_run = run_;
            ++it->second.runs;
        }
        return inner_.query(q);
    }

    /// Distinct queries in first-seen order with their run counts.
    template <class Fn>
    void for_each(Fn&& fn) const {
        for (const BitString* q : order_) fn(*q, slots_.at(*q).runs);
    }

private:
    struct Slot {
        std::size_t runs;
        std::size_t last_run;
    };
    Oracle& inner_;
    std::unordered_map<BitString, Slot> slots_;
    std::vector<const BitString*> order_;
    std::size_t run_ = 0;
};

} // namespace detail

enum class HeavyMode { automatic, exact, monte_carlo };

inline const char* to_string(HeavyMode m) noexcept {
    switch (m) {
    case HeavyMode::exact: return "exact";
    case HeavyMode::monte_carlo: return "monte_carlo";
    default: return "automatic";
    }
}

/// Exact mode enumerates every x in {0,1}^n up to this length.
inline constexpr std::size_t kExactHeavyMaxLength = 16;

struct HeavyQueries {
    std::vector<BitString> queries;  ///< in first-seen order
    HeavyMode mode;
    std::size_t runs;
};

/// Queries q with Pr_x[Dec^F(sk, x) queries q] >= tau. Exact mode runs the
/// decoder on all 2^n inputs (one coin draw per input). Monte Carlo mode runs
/// `probe_trials` uniform inputs and reports every query whose empirical
/// frequency reaches tau; queries within a few standard errors of tau can land
/// on either side. `oracle` itself is not touched; probes run against a fork.
template <PrcScheme S>
HeavyQueries find_heavy_queries(const S& scheme, const SecretKey& sk, const LazyOracle& oracle, double tau,
                                std::size_t probe_trials, Seed seed, HeavyMode mode = HeavyMode::automatic) {
    if (!(tau > 0.0 && tau < 1.0)) throw ParameterError("tau must lie in (0, 1)");
    const std::size_t n = scheme.codeword_length();
    if (mode == HeavyMode::automatic) mode = n <= kExactHeavyMaxLength ? HeavyMode::exact : HeavyMode::monte_carlo;
    if (mode == HeavyMode::exact && n > kExactHeavyMaxLength) throw EnumerationLimit("exact heavy-query mode needs n <= 16");
    if (mode == HeavyMode::monte_carlo && static_cast<double>(probe_trials) < 10.0 / tau)
        throw ParameterError("Monte Carlo heavy-query detection needs at least 10/tau probes");

    const std::size_t runs = mode == HeavyMode::exact ? (std::size_t{1} << n) : probe_trials;
    LazyOracle probe = oracle.fork(LazyOracle::Logging::count_only);
    Rng inputs(seed.child("inputs"));
    detail::RunCountingOracle counter(probe);
    for (std::size_t run = 0; run < runs; ++run) {
        const BitString x = mode == HeavyMode::exact ? BitString::from_uint(run, n) : BitString::random(n, inputs);
        Rng coins(seed.child(run));
        counter.start_run();
        run_decode(scheme, sk, x, coins, counter);
    }
    const double threshold = tau * static_cast<double>(runs);
    HeavyQueries out{{}, mode, runs};
    counter.for_each([&](const BitString& q, std::size_t count) {
        if (static_cast<double>(count) >= threshold - 1e-9) out.queries.push_back(q);
    });
    return out;
}

/// 2^{-lambda} * Q / tau.
inline double bad1_bound(std::size_t q_bound, double tau, std::size_t lambda) {
    if (!(tau > 0.0 && tau < 1.0)) throw ParameterError("tau must lie in (0, 1)");
    return std::ldexp(static_cast<double>(q_bound) / tau, -static_cast<int>(lambda));
}

/// Q^2 * tau^{(1/2)(1 - rho^2)/(1 + rho^2)}.
inline double bad2_tau_term(std::size_t q_bound, double tau, NoiseParameter rho) {
    const double q = static_cast<double>(q_bound);
    return q * q * std::pow(tau, collision_exponent(rho));
}

/// delta' = delta + 2^{-lambda} Q/tau + Q^2 tau^{(1/2)(1-rho^2)/(1+rho^2)}
///          + Q^2 sqrt(eps n), with the big-O constant taken as 1.
inline double theoretical_delta_prime(double delta, std::size_t q_bound, double tau, NoiseParameter rho, double eps,
                                      std::size_t n, std::size_t lambda) {
    if (delta < 0.0 || eps < 0.0) throw ParameterError("delta and eps must be nonnegative");
    const double q = static_cast<double>(q_bound);
    return delta + bad1_bound(q_bound, tau, lambda) + bad2_tau_term(q_bound, tau, rho) +
           q * q * std::sqrt(eps * static_cast<double>(n));
}

/// Compiled-key size bound Q * ceil(lambda / tau).
inline std::size_t learned_set_bound(std::size_t q_bound, std::size_t lambda, double tau) {
    return q_bound * compile_rounds(lambda, tau);
}

struct TrialFlags {
    bool bad1 = false;
    bool bad2 = false;
    bool intersection = false;  ///< Enc^F1 and Dec^F2 share a query outside S
    bool compiled_accept = false;
    bool uncompiled_accept = false;
    std::size_t learned_size = 0;
};

struct BadEventCounts {
    std::size_t bad1 = 0;
    std::size_t bad2 = 0;
    std::size_t trials = 0;
    std::vector<TrialFlags> per_trial;
};

struct CompilerExperiment {
    ExperimentReport compiled;
    ExperimentReport uncompiled;
    BadEventCounts bad;
    double learned_size_mean = 0.0;
    HeavyMode mode = HeavyMode::automatic;
};

struct ExperimentOptions {
    HeavyMode mode = HeavyMode::automatic;
    double probe_factor = 100.0;  ///< Monte Carlo probes = ceil(probe_factor / tau)
};

namespace detail {

inline bool shares_unpinned_query(const QuerySet& enc, const QuerySet& dec, const QuerySet& pinned) {
    const QuerySet& small = enc.size() <= dec.size() ? enc : dec;
    const QuerySet& large = enc.size() <= dec.size() ? dec : enc;
    for (const auto& [q, bit] : small) {
        (void)bit;
        if (large.contains(q) && !pinned.contains(q)) return true;
    }
    return false;
}

} // namespace detail

/// One trial of the compiled completeness experiment, with the matched
/// uncompiled run. The uncompiled oracle agrees with S and with every query
/// the encoder made under F1, and with F2 elsewhere, so it is a uniformly
/// random function and the uncompiled encoder output equals c. Both runs
/// reach the same verdict unless an intersection query occurs.
template <PrcScheme S>
TrialFlags compiler_trial(const S& scheme, const CompilerParams& params, NoiseParameter rho, Seed trial,
                          const ExperimentOptions& options) {
    LazyOracle keygen_oracle(trial.child("oracle"), LazyOracle::Logging::count_only);
    Rng keygen_coins(trial.child("keygen"));
    SecretKey sk = run_keygen(scheme, keygen_coins, keygen_oracle);
    const CompiledKey ck = compile_key(scheme, params, std::move(sk), trial.child("learn"));

    LazyOracle f1 = consistent_resample(ck.pinned, trial.child("F1"));
    LazyOracle f2 = consistent_resample(ck.pinned, trial.child("F2"));
    Rng enc_coins(trial.child("encode"));
    Rng noise(trial.child("noise"));
    const BitString c = run_encode(scheme, ck.sk, enc_coins, f1);
    const BitString noisy = apply_noise(c, rho, noise);
    Rng dec_coins(trial.child("decode"));
    TrialFlags flags;
    flags.compiled_accept = run_decode(scheme, ck.sk, noisy, dec_coins, f2) == Verdict::accept;
    flags.learned_size = ck.learned.size();

    const std::size_t probes = static_cast<std::size_t>(std::ceil(options.probe_factor / params.tau));
    const HeavyQueries heavy =
        find_heavy_queries(scheme, ck.sk, f2, params.tau, probes, trial.child("probe"), options.mode);
    flags.bad1 = std::any_of(heavy.queries.begin(), heavy.queries.end(),
                             [&](const BitString& q) { return !ck.pinned->contains(q); });
    flags.intersection = detail::shares_unpinned_query(f1.log(), f2.log(), *ck.pinned);
    flags.bad2 = !flags.bad1 && flags.intersection;

    auto matched = std::make_shared<QuerySet>(*ck.pinned);
    matched->merge(f1.log());
    LazyOracle original = consistent_resample(std::move(matched), trial.child("F2"), LazyOracle::Logging::count_only);
    Rng matched_coins(trial.child("decode"));
    flags.uncompiled_accept = run_decode(scheme, ck.sk, noisy, matched_coins, original) == Verdict::accept;
    return flags;
}

template <PrcScheme S>
CompilerExperiment run_completeness_experiment(const S& scheme, const CompilerParams& params, NoiseParameter rho,
                                               std::size_t trials, Seed seed, const ExperimentOptions& options = {}) {
    if (trials < 100) throw ParameterError("experiments need at least 100 trials");
    CompilerExperiment out;
    out.mode = options.mode == HeavyMode::automatic
                   ? (scheme.codeword_length() <= kExactHeavyMaxLength ? HeavyMode::exact : HeavyMode::monte_carlo)
                   : options.mode;
    out.bad.trials = trials;
    out.bad.per_trial.resize(trials);
    parallel_for(trials, [&](std::size_t t) {
        out.bad.per_trial[t] = compiler_trial(scheme, params, rho, seed.child(t), options);
    });
    std::size_t compiled = 0;
    std::size_t uncompiled = 0;
    double learned = 0.0;
    for (const auto& f : out.bad.per_trial) {
        out.bad.bad1 += f.bad1;
        out.bad.bad2 += f.bad2;
        compiled += f.compiled_accept;
        uncompiled += f.uncompiled_accept;
        learned += static_cast<double>(f.learned_size);
    }
    out.learned_size_mean = learned / static_cast<double>(trials);
    auto params_echo = scheme_params(scheme);
    params_echo.emplace_back("rho", rho.rho());
    params_echo.emplace_back("tau", params.tau);
    out.compiled = proportion_report("compiled_completeness", compiled, trials, params_echo);
    out.compiled.events = {{"accept", compiled}, {"bad1", out.bad.bad1}, {"bad2", out.bad.bad2}};
    out.uncompiled = proportion_report("uncompiled_completeness", uncompiled, trials, params_echo);
    out.uncompiled.events = {{"accept", uncompiled}};
    return out;
}

/// Reject rate of Dec' on uniform inputs, each trial with a fresh compiled key.
template <PrcScheme S>
ExperimentReport estimate_compiled_soundness(const S& scheme, const CompilerParams& params, std::size_t trials,
                                             Seed seed) {
    if (trials < 100) throw ParameterError("experiments need at least 100 trials");
    std::vector<char> rejected(trials, 0);
    parallel_for(trials, [&](std::size_t t) {
        const Seed trial = seed.child(t);
        const CompiledKey ck = compile_keygen(scheme, params, trial.child("keygen"));
        Rng in(trial.child("input"));
        const BitString x = BitString::random(scheme.codeword_length(), in);
        rejected[t] = compiled_decode(scheme, ck, x, trial.child("decode")) == Verdict::reject;
    });
    const auto rej = static_cast<std::size_t>(std::count(rejected.begin(), rejected.end(), 1));
    auto echo = scheme_params(scheme);
    echo.emplace_back("tau", params.tau);
    auto r = proportion_report("compiled_soundness", rej, trials, std::move(echo));
    r.events = {{"reject", rej}, {"false_accept", trials - rej}};
    return r;
}

} // namespace prclab
