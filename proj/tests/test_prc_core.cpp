#include "prclab/prc.hpp"
#include "prclab/prf_prc.hpp"
#include "prclab/stats.hpp"
#include "prclab/toy_schemes.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

using namespace prclab;
using namespace prclab::testkit;

TEST(SecretKey, TextRoundTrip) {
    SecretKey sk{BitString::from_bits("1011001"), {}};
    sk.keygen_transcript.insert(BitString::from_bits("111"), true);
    sk.keygen_transcript.insert(BitString::from_bits("0"), false);
    EXPECT_EQ(SecretKey::from_text(sk.to_text()), sk);
    EXPECT_THROW(SecretKey::from_text("7:b2"), ParseError);
}

TEST(RunWrappers, AbsorbKeygenTraffic) {
    LazyOracle o(Seed(1));
    Rng coins(Seed(2));
    const auto sk = run_keygen(TinyKeygenQuery{}, coins, o);
    ASSERT_EQ(sk.keygen_transcript.size(), 1u);
    EXPECT_EQ(sk.keygen_transcript.find(BitString::from_bits("1111")), o.query(BitString::from_bits("1111")));
}

TEST(RunWrappers, EnforceQueryBound) {
    LazyOracle o(Seed(3));
    Rng coins(Seed(4));
    const Overspender s;
    const auto sk = run_keygen(s, coins, o);
    EXPECT_THROW(run_decode(s, sk, BitString(s.n), coins, o), QueryBoundExceeded);
    EXPECT_THROW(run_decode(s, sk, BitString(s.n + 1), coins, o), DimensionMismatch);
}

TEST(RunWrappers, NoSchemeExceedsItsBound) {
    // Counting underneath the bound: the largest per-call count is <= Q.
    const PrfPrc s(PrfPrcParams::from_lambda(16, 0.5).with_ell(6).with_blocks(20));
    LazyOracle base(Seed(5), LazyOracle::Logging::count_only);
    Rng coins(Seed(6));
    const auto sk = run_keygen(s, coins, base);
    for (int t = 0; t < 50; ++t) {
        const std::size_t before = base.calls();
        const auto c = run_encode(s, sk, coins, base);
        EXPECT_LE(base.calls() - before, s.query_bound());
        const std::size_t mid = base.calls();
        run_decode(s, sk, BitString::random(c.size(), coins), coins, base);
        EXPECT_LE(base.calls() - mid, s.query_bound());
    }
}

TEST(Completeness, TrivialSchemes) {
    EXPECT_EQ(estimate_completeness(AlwaysAccept{}, NoiseParameter(0.5), 200, Seed(1)).estimate, 1.0);
    EXPECT_EQ(estimate_completeness(AlwaysReject{}, NoiseParameter(0.5), 200, Seed(1)).estimate, 0.0);
    EXPECT_THROW(estimate_completeness(AlwaysAccept{}, NoiseParameter(0.5), 99, Seed(1)), ParameterError);
}

TEST(Completeness, AccountingIdentity) {
    const auto r = estimate_completeness(FirstBitZero{}, NoiseParameter(0.3), 500, Seed(7));
    EXPECT_EQ(r.event("accept") + r.event("reject"), r.trials);
    EXPECT_DOUBLE_EQ(r.estimate, static_cast<double>(r.event("accept")) / r.trials);
}

TEST(Completeness, SeedDeterministicAndWorkerIndependent) {
    const PrfPrc s(PrfPrcParams::from_lambda(16, 0.5).with_ell(4).with_blocks(8));
    const auto a = estimate_completeness(s, NoiseParameter(0.5), 300, Seed(8));
    setenv("PRCLAB_WORKERS", "3", 1);
    const auto b = estimate_completeness(s, NoiseParameter(0.5), 300, Seed(8));
    unsetenv("PRCLAB_WORKERS");
    EXPECT_EQ(a.to_json(), b.to_json());
}

TEST(Completeness, PrfPrcMatchesClosedFormHighRho) {
    const PrfPrc s(PrfPrcParams::from_lambda(64, 0.9).with_ell(60).with_blocks(4096));
    const auto r = estimate_completeness(s, NoiseParameter(0.9), 300, Seed(9));
    const double p = closed_form_completeness(NoiseParameter(0.9), 60, 4096);
    EXPECT_NEAR(p, 0.99984, 1e-5);
    EXPECT_TRUE(stats::within_binomial_interval(r.successes, r.trials, p, 3.0)) << r.estimate;
}

TEST(Soundness, Examples) {
    EXPECT_EQ(estimate_soundness(AlwaysReject{}, 200, Seed(1)).estimate, 1.0);
    const auto half = estimate_soundness(FirstBitZero{}, 2000, Seed(2));
    EXPECT_TRUE(stats::within_binomial_interval(half.successes, half.trials, 0.5, 4.0)) << half.estimate;
    const PrfPrc s(PrfPrcParams::from_lambda(16, 0.9).with_ell(60).with_blocks(64));
    EXPECT_EQ(estimate_soundness(s, 2000, Seed(3)).estimate, 1.0);
}

TEST(Pseudorandomness, UniformVersusUniformIsQuiet) {
    const auto r = estimate_pseudorandomness_proxy(AlwaysAccept{{64}}, 8, 1000, default_battery(), Seed(4));
    for (const auto& d : default_battery())
        EXPECT_LE(r.metric(d.name + ":gap"), 4.0 * r.metric(d.name + ":sigma") + 0.01) << d.name;
}

TEST(Pseudorandomness, AllZerosSaturatesBitFrequency) {
    const auto r = estimate_pseudorandomness_proxy(AllZeros{{64}}, 4, 200, {battery::bit_frequency()}, Seed(5));
    EXPECT_GT(r.metric("bit_frequency:gap"), 0.95);
    EXPECT_GT(r.estimate, 0.95);
}

TEST(Pseudorandomness, RejectsEmptyBattery) {
    EXPECT_THROW(estimate_pseudorandomness_proxy(AlwaysAccept{}, 4, 200, {}, Seed(6)), ParameterError);
}

TEST(Report, JsonFieldNames) {
    const auto r = estimate_completeness(AlwaysAccept{}, NoiseParameter(0.5), 100, Seed(1));
    const auto j = r.to_json();
    for (const char* key : {"estimate", "trials", "ci95", "params", "events"}) EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["params"]["rho"], 0.5);
    EXPECT_EQ(j["params"]["n"], 16.0);
}
