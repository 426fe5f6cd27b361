#pragma once

// Zero-bit secret-key pseudorandom codes in the (secret) random oracle model,
// and Monte Carlo estimators for their completeness, soundness and an
// empirical pseudorandomness proxy.

#include "prclab/bitstring.hpp"
#include "prclab/channel.hpp"
#include "prclab/errors.hpp"
#include "prclab/oracle.hpp"
#include "prclab/parallel.hpp"
#include "prclab/rng.hpp"
#include "prclab/stats.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <sstream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace prclab {

enum class Verdict { reject, accept };

inline const char* to_string(Verdict v) noexcept { return v == Verdict::accept ? "accept" : "reject"; }

/// Key material plus whatever oracle traffic key generation produced. The
/// transcript is honoured by every oracle the key is later used with.
struct SecretKey {
    BitString material;
    QuerySet keygen_transcript;

    /// First line: hex key material. Remaining lines: the transcript in
    /// query-set format.
    std::string to_text() const { return material.to_hex() + '\n' + keygen_transcript.to_text(); }

    static SecretKey from_text(const std::string& text) {
        const auto nl = text.find('\n');
        if (nl == std::string::npos) throw ParseError("secret key text lacks a material line");
        return {BitString::from_hex(std::string_view(text).substr(0, nl)), QuerySet::from_text(text.substr(nl + 1))};
    }

    friend bool operator==(const SecretKey&, const SecretKey&) = default;
};

/// A zero-bit PRC (KeyGen, Enc, Dec) with codeword length n and a per-call
/// oracle query bound Q.
template <class S>
concept PrcScheme = requires(const S& s, Rng& rng, Oracle& o, const SecretKey& sk, const BitString& x) {
    { s.security_parameter() } -> std::convertible_to<std::size_t>;
    { s.codeword_length() } -> std::convertible_to<std::size_t>;
    { s.key_length() } -> std::convertible_to<std::size_t>;
    { s.query_bound() } -> std::convertible_to<std::size_t>;
    { s.keygen(rng, o) } -> std::same_as<SecretKey>;
    { s.encode(sk, rng, o) } -> std::same_as<BitString>;
    { s.decode(sk, x, rng, o) } -> std::same_as<Verdict>;
};

/// KeyGen under the query bound; its traffic is stored in the key.
template <PrcScheme S>
SecretKey run_keygen(const S& scheme, Rng& coins, Oracle& oracle) {
    BoundedOracle bounded(oracle, scheme.query_bound());
    RecordingOracle recording(bounded);
    SecretKey sk = scheme.keygen(coins, recording);
    sk.keygen_transcript.merge(recording.log());
    return sk;
}

template <PrcScheme S>
BitString run_encode(const S& scheme, const SecretKey& sk, Rng& coins, Oracle& oracle) {
    BoundedOracle bounded(oracle, scheme.query_bound());
    BitString c = scheme.encode(sk, coins, bounded);
    if (c.size() != scheme.codeword_length()) throw DimensionMismatch("encoder returned a codeword of the wrong length");
    return c;
}

template <PrcScheme S>
Verdict run_decode(const S& scheme, const SecretKey& sk, const BitString& x, Rng& coins, Oracle& oracle) {
    if (x.size() != scheme.codeword_length()) throw DimensionMismatch("decoder input has the wrong length");
    BoundedOracle bounded(oracle, scheme.query_bound());
    return scheme.decode(sk, x, coins, bounded);
}

/// Proportion estimate with its binomial 95% half-width and echoed parameters.
struct ExperimentReport {
    std::string name;
    double estimate = 0.0;
    std::size_t successes = 0;
    std::size_t trials = 0;
    double ci95_halfwidth = 0.0;
    std::vector<std::pair<std::string, std::size_t>> events;
    std::vector<std::pair<std::string, double>> params;
    std::vector<std::pair<std::string, double>> metrics;

    std::size_t event(const std::string& key) const {
        for (const auto& [k, v] : events)
            if (k == key) return v;
        return 0;
    }

    double metric(const std::string& key) const {
        for (const auto& [k, v] : metrics)
            if (k == key) return v;
        return std::nan("");
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["name"] = name;
        j["estimate"] = estimate;
        j["trials"] = trials;
        j["ci95"] = ci95_halfwidth;
        auto& p = j["params"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : params) p[k] = v;
        auto& e = j["events"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : events) e[k] = v;
        if (!metrics.empty()) {
            auto& m = j["metrics"] = nlohmann::ordered_json::object();
            for (const auto& [k, v] : metrics) m[k] = v;
        }
        return j;
    }
};

/// Report for `successes` out of `trials`; at least 100 trials.
inline ExperimentReport proportion_report(std::string name, std::size_t successes, std::size_t trials,
                                          std::vector<std::pair<std::string, double>> params) {
    if (trials < 100) throw ParameterError("experiments need at least 100 trials");
    ExperimentReport r;
    r.name = std::move(name);
    r.successes = successes;
    r.trials = trials;
    r.estimate = stats::proportion(successes, trials);
    r.ci95_halfwidth = stats::ci95_halfwidth(successes, trials);
    r.params = std::move(params);
    return r;
}

template <PrcScheme S>
std::vector<std::pair<std::string, double>> scheme_params(const S& s) {
    return {{"lambda", static_cast<double>(s.security_parameter())},
            {"n", static_cast<double>(s.codeword_length())},
            {"Q", static_cast<double>(s.query_bound())}};
}

/// Seeds for the pieces of one trial.
struct TrialSeeds {
    Seed oracle, keygen, encode, noise, decode, input;

    explicit TrialSeeds(Seed trial)
        : oracle(trial.child("oracle")), keygen(trial.child("keygen")), encode(trial.child("encode")),
          noise(trial.child("noise")), decode(trial.child("decode")), input(trial.child("input")) {}
};

/// Fraction of trials with Dec(sk, N_rho(Enc(sk))) = accept, each trial with
/// a fresh key and a fresh oracle. Estimates 1 - delta.
template <PrcScheme S>
ExperimentReport estimate_completeness(const S& scheme, NoiseParameter rho, std::size_t trials, Seed seed) {
    if (trials < 100) throw ParameterError("experiments need at least 100 trials");
    std::vector<char> accepted(trials, 0);
    parallel_for(trials, [&](std::size_t t) {
        const TrialSeeds seeds(seed.child(t));
        LazyOracle oracle(seeds.oracle, LazyOracle::Logging::count_only);
        Rng kg(seeds.keygen), enc(seeds.encode), noise(seeds.noise), dec(seeds.decode);
        const SecretKey sk = run_keygen(scheme, kg, oracle);
        const BitString c = run_encode(scheme, sk, enc, oracle);
        const BitString noisy = apply_noise(c, rho, noise);
        accepted[t] = run_decode(scheme, sk, noisy, dec, oracle) == Verdict::accept;
    });
    const auto acc = static_cast<std::size_t>(std::count(accepted.begin(), accepted.end(), 1));
    auto params = scheme_params(scheme);
    params.emplace_back("rho", rho.rho());
    auto r = proportion_report("completeness", acc, trials, std::move(params));
    r.events = {{"accept", acc}, {"reject", trials - acc}};
    return r;
}

/// Fraction of trials with Dec(sk, x) = reject for x uniform and independent
/// of a fresh key. Estimates 1 - mu.
template <PrcScheme S>
ExperimentReport estimate_soundness(const S& scheme, std::size_t trials, Seed seed) {
    if (trials < 100) throw ParameterError("experiments need at least 100 trials");
    std::vector<char> rejected(trials, 0);
    parallel_for(trials, [&](std::size_t t) {
        const TrialSeeds seeds(seed.child(t));
        LazyOracle oracle(seeds.oracle, LazyOracle::Logging::count_only);
        Rng kg(seeds.keygen), dec(seeds.decode), in(seeds.input);
        const SecretKey sk = run_keygen(scheme, kg, oracle);
        const BitString x = BitString::random(scheme.codeword_length(), in);
        rejected[t] = run_decode(scheme, sk, x, dec, oracle) == Verdict::reject;
    });
    const auto rej = static_cast<std::size_t>(std::count(rejected.begin(), rejected.end(), 1));
    auto r = proportion_report("soundness", rej, trials, scheme_params(scheme));
    r.events = {{"reject", rej}, {"false_accept", trials - rej}};
    return r;
}

/// A statistical test over a batch of samples; `accept` = "looks non-uniform".
struct Distinguisher {
    std::string name;
    std::function<bool(std::span<const BitString>)> accept;
};

namespace battery {

inline Distinguisher bit_frequency(double z = 3.0) {
    return {"bit_frequency", [z](std::span<const BitString> samples) {
                double ones = 0.0;
                double total = 0.0;
                for (const auto& s : samples) {
                    ones += static_cast<double>(s.weight());
                    total += static_cast<double>(s.size());
                }
                return std::abs(ones - total / 2.0) > z * std::sqrt(total / 4.0);
            }};
}

/// Counts equal pairs among all aligned `width`-bit windows of all samples.
inline Distinguisher window_collisions(std::size_t width = 8, double z = 3.0) {
    return {"window_collisions_" + std::to_string(width), [width, z](std::span<const BitString> samples) {
                std::vector<std::uint64_t> windows;
                for (const auto& s : samples)
                    for (std::size_t pos = 0; pos + width <= s.size(); pos += width) {
                        std::uint64_t v = 0;
                        for (std::size_t b = 0; b < width; ++b) v = (v << 1) | (s[pos + b] ? 1U : 0U);
                        windows.push_back(v);
                    }
                std::sort(windows.begin(), windows.end());
                double pairs = 0.0;
                for (std::size_t i = 0; i < windows.size();) {
                    std::size_t j = i;
                    while (j < windows.size() && windows[j] == windows[i]) ++j;
                    const auto run = static_cast<double>(j - i);
                    pairs += run * (run - 1.0) / 2.0;
                    i = j;
                }
                const auto w = static_cast<double>(windows.size());
                const double expected = w * (w - 1.0) / 2.0 / std::ldexp(1.0, static_cast<int>(width));
                return pairs > expected + z * std::sqrt(expected) + 0.5;
            }};
}

/// Wald-Wolfowitz style runs count over the concatenation of all samples.
inline Distinguisher runs(double z = 3.0) {
    return {"runs", [z](std::span<const BitString> samples) {
                double count = 0.0;
                double total = 0.0;
                bool have_prev = false;
                bool prev = false;
                for (const auto& s : samples)
                    for (std::size_t i = 0; i < s.size(); ++i) {
                        const bool b = s[i];
                        if (!have_prev || b != prev) count += 1.0;
                        prev = b;
                        have_prev = true;
                        total += 1.0;
                    }
                const double expected = (total + 1.0) / 2.0;
                const double sd = std::sqrt((total - 1.0) / 4.0);
                return std::abs(count - expected) > z * sd;
            }};
}

inline Distinguisher pairwise_equality() {
    return {"pairwise_equality", [](std::span<const BitString> samples) {
                for (std::size_t i = 0; i < samples.size(); ++i)
                    for (std::size_t j = i + 1; j < samples.size(); ++j)
                        if (samples[i] == samples[j]) return true;
                return false;
            }};
}

} // namespace battery

inline std::vector<Distinguisher> default_battery() {
    return {battery::bit_frequency(), battery::window_collisions(8), battery::runs(), battery::pairwise_equality()};
}

/// For each distinguisher, |Pr[D(m encodings under one key) = 1] -
/// Pr[D(m uniform strings) = 1]|. The estimate is the largest gap; this is a
/// lower-bound proxy for the pseudorandomness advantage.
template <PrcScheme S>
ExperimentReport estimate_pseudorandomness_proxy(const S& scheme, std::size_t m, std::size_t trials,
                                                 const std::vector<Distinguisher>& tests, Seed seed) {
    if (tests.empty()) throw ParameterError("distinguisher battery is empty");
    if (m == 0) throw ParameterError("need at least one sample per trial");
    if (trials < 100) throw ParameterError("experiments need at least 100 trials");
    const std::size_t k = tests.size();
    std::vector<char> enc_hits(trials * k, 0);
    std::vector<char> unif_hits(trials * k, 0);
    parallel_for(trials, [&](std::size_t t) {
        const TrialSeeds seeds(seed.child(t));
        LazyOracle oracle(seeds.oracle, LazyOracle::Logging::count_only);
        Rng kg(seeds.keygen), enc(seeds.encode), in(seeds.input);
        const SecretKey sk = run_keygen(scheme, kg, oracle);
        std::vector<BitString> encodings;
        std::vector<BitString> uniform;
        for (std::size_t i = 0; i < m; ++i) {
            encodings.push_back(run_encode(scheme, sk, enc, oracle));
            uniform.push_back(BitString::random(scheme.codeword_length(), in));
        }
        for (std::size_t d = 0; d < k; ++d) {
            enc_hits[t * k + d] = tests[d].accept(encodings);
            unif_hits[t * k + d] = tests[d].accept(uniform);
        }
    });
    ExperimentReport r;
    r.name = "pseudorandomness_proxy";
    r.trials = trials;
    r.params = scheme_params(scheme);
    r.params.emplace_back("m", static_cast<double>(m));
    double best = -1.0;
    for (std::size_t d = 0; d < k; ++d) {
        std::size_t a = 0;
        std::size_t b = 0;
        for (std::size_t t = 0; t < trials; ++t) {
            a += static_cast<std::size_t>(enc_hits[t * k + d]);
            b += static_cast<std::size_t>(unif_hits[t * k + d]);
        }
        const double pa = stats::proportion(a, trials);
        const double pb = stats::proportion(b, trials);
        const double gap = std::abs(pa - pb);
        const double sigma = std::hypot(stats::binomial_sigma(pa, trials), stats::binomial_sigma(pb, trials));
        r.events.emplace_back(tests[d].name + ":encoded", a);
        r.events.emplace_back(tests[d].name + ":uniform", b);
        r.metrics.emplace_back(tests[d].name + ":gap", gap);
        r.metrics.emplace_back(tests[d].name + ":sigma", sigma);
        if (gap > best) {
            best = gap;
            r.estimate = gap;
            r.ci95_halfwidth = 1.959963984540054 * sigma;
        }
    }
    return r;
}

} // namespace prclab
