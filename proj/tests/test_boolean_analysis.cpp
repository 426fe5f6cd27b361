#include "prclab/boolean_analysis.hpp"
#include "prclab/generators.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace prclab;

namespace {

FunctionTable indicator(unsigned n, std::size_t at) {
    std::vector<double> v(hypercube_size(n), 0.0);
    v[at] = 1.0;
    return {n, v};
}

} // namespace

TEST(FunctionTable, Validation) {
    EXPECT_THROW(FunctionTable(2, {1.0, 2.0}), DimensionMismatch);
    EXPECT_THROW(FunctionTable(1, {1.0, std::nan("")}), ParameterError);
    EXPECT_THROW(hypercube_size(kMaxTableDimension + 1), EnumerationLimit);
}

TEST(PNorm, Examples) {
    const auto c = FunctionTable::constant(4, -3.0);
    for (double p : {1.0, 1.5, 2.0, 3.7}) EXPECT_NEAR(p_norm(c, p), 3.0, 1e-12);
    EXPECT_NEAR(p_norm(indicator(2, 1), 2.0), 0.5, 1e-15);
    EXPECT_THROW(p_norm(c, 0.5), ParameterError);
}

TEST(PNorm, OneNormMatchesSeparateSummation) {
    Rng rng(Seed(1));
    const auto f = gen::random_function(6, rng);
    long double acc = 0.0L;
    for (std::size_t x = 0; x < f.size(); ++x) acc += std::fabs(static_cast<long double>(f[x]));
    EXPECT_NEAR(p_norm(f, 1.0), static_cast<double>(acc / f.size()), 1e-12);
}

TEST(InnerProduct, Examples) {
    EXPECT_DOUBLE_EQ(inner_product(FunctionTable::constant(3, 1.0), FunctionTable::constant(3, 1.0)), 1.0);
    for (unsigned n = 1; n <= 6; ++n) {
        const auto parity = FunctionTable::character(n, hypercube_size(n) - 1);
        EXPECT_DOUBLE_EQ(inner_product(parity, parity), 1.0);
    }
    EXPECT_DOUBLE_EQ(inner_product(FunctionTable::dictator(2, 0), FunctionTable::dictator(2, 1)), 0.0);
    EXPECT_THROW(inner_product(FunctionTable::constant(2, 1), FunctionTable::constant(3, 1)), DimensionMismatch);
}

TEST(InnerProduct, CauchySchwarz) {
    Rng rng(Seed(2));
    for (int i = 0; i < 200; ++i) {
        const unsigned n = 1 + static_cast<unsigned>(rng.below(8));
        const auto f = gen::random_function(n, rng);
        const auto g = gen::random_function(n, rng);
        EXPECT_LE(std::abs(inner_product(f, g)), p_norm(f, 2) * p_norm(g, 2) + 1e-12);
    }
}

TEST(WalshHadamard, Examples) {
    const auto one = walsh_hadamard(FunctionTable::constant(3, 1.0));
    EXPECT_DOUBLE_EQ(one[0], 1.0);
    for (std::size_t s = 1; s < one.size(); ++s) EXPECT_DOUBLE_EQ(one[s], 0.0);
    const auto dict = walsh_hadamard(FunctionTable::dictator(4, 2));
    for (std::size_t s = 0; s < dict.size(); ++s) EXPECT_DOUBLE_EQ(dict[s], s == (1u << 2) ? 1.0 : 0.0);
}

TEST(WalshHadamard, MatchesDefinitionAndRoundTrips) {
    Rng rng(Seed(3));
    const auto f = gen::random_function(8, rng);
    const auto coeffs = walsh_hadamard(f);
    const auto reference = testkit::definitional_fourier(f);
    for (std::size_t s = 0; s < f.size(); ++s) EXPECT_NEAR(coeffs[s], reference[s], 1e-12);
    const auto back = inverse_walsh_hadamard(coeffs);
    for (std::size_t x = 0; x < f.size(); ++x) EXPECT_NEAR(back[x], f[x], 1e-10);
}

TEST(NoiseOperator, Examples) {
    Rng rng(Seed(4));
    const auto f = gen::random_function(5, rng);
    const auto same = noise_operator(f, NoiseParameter(1.0));
    for (std::size_t x = 0; x < f.size(); ++x) EXPECT_EQ(same[x], f[x]);

    double mean = 0.0;
    for (double v : f.values()) mean += v;
    mean /= static_cast<double>(f.size());
    const auto flat = noise_operator(f, NoiseParameter(0.0));
    for (std::size_t x = 0; x < f.size(); ++x) EXPECT_NEAR(flat[x], mean, 1e-12);

    const auto t = noise_operator(FunctionTable(1, {0.0, 1.0}), NoiseParameter(0.5));
    EXPECT_NEAR(t[0], 0.25, 1e-15);
    EXPECT_NEAR(t[1], 0.75, 1e-15);
}

TEST(NoiseOperator, MatchesDefinitionalExpectation) {
    Rng rng(Seed(5));
    for (unsigned n = 1; n <= 8; ++n)
        for (double rho : {0.0, 0.3, 0.5, 0.9}) {
            const auto f = gen::random_function(n, rng);
            const auto fast = noise_operator(f, NoiseParameter(rho));
            const auto slow = testkit::definitional_noise(f, rho);
            for (std::size_t x = 0; x < f.size(); ++x) EXPECT_NEAR(fast[x], slow[x], 1e-10);
        }
}

TEST(NoiseOperator, IsContractiveInTwoNorm) {
    Rng rng(Seed(6));
    for (int i = 0; i < 300; ++i) {
        const unsigned n = 1 + static_cast<unsigned>(rng.below(9));
        const auto f = gen::random_function(n, rng);
        const double rho = rng.uniform();
        EXPECT_LE(p_norm(noise_operator(f, NoiseParameter(rho)), 2), p_norm(f, 2) + 1e-12);
    }
}

TEST(Hypercontractivity, Examples) {
    const auto c = check_hypercontractivity(FunctionTable::constant(4, 1.0), NoiseParameter(0.3));
    EXPECT_NEAR(c.margin, 0.0, 1e-12);
    EXPECT_TRUE(c.ok);

    const auto d = check_hypercontractivity(FunctionTable::dictator(5, 1), NoiseParameter(0.5));
    EXPECT_NEAR(d.noisy_two_norm, 0.5, 1e-12);
    EXPECT_NEAR(d.source_norm, 1.0, 1e-12);
    EXPECT_NEAR(d.margin, 0.5, 1e-12);
}

TEST(Hypercontractivity, RandomSweepHolds) {
    Rng rng(Seed(7));
    for (int i = 0; i < 1000; ++i) {
        const unsigned n = 2 + static_cast<unsigned>(rng.below(9));
        const auto f = gen::random_function(n, rng);
        for (double rho : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const auto c = check_hypercontractivity(f, NoiseParameter(rho));
            EXPECT_GE(c.margin, -kInequalitySlack);
            EXPECT_TRUE(c.ok);
        }
    }
}

TEST(RandomizedFunctionTable, RowsMustBeDistributions) {
    using O = RandomizedFunctionTable::Outcome;
    EXPECT_THROW(RandomizedFunctionTable(1, {{{0, 0.5}}, {{0, 1.0}}}), ParameterError);
    EXPECT_THROW(RandomizedFunctionTable(1, {{{0, 1.0}}}), DimensionMismatch);
    const RandomizedFunctionTable t(1, {{O{0, 0.25}, O{1, 0.75}}, {O{1, 1.0}}});
    EXPECT_EQ(t.points(), 2u);
    EXPECT_DOUBLE_EQ(t.mass(0, 1), 0.75);
    EXPECT_DOUBLE_EQ(t.mass(1, 0), 0.0);
}

TEST(Alpha, Examples) {
    std::vector<Label> id(8);
    for (Label i = 0; i < 8; ++i) id[i] = i;
    const auto ident = RandomizedFunctionTable::deterministic(3, id);
    EXPECT_DOUBLE_EQ(alpha_of(ident, ident).alpha, 1.0 / 8.0);

    const auto constant = RandomizedFunctionTable::deterministic(3, std::vector<Label>(8, 7));
    EXPECT_DOUBLE_EQ(alpha_of(constant, constant).alpha, 1.0);

    using O = RandomizedFunctionTable::Outcome;
    const RandomizedFunctionTable four(2, std::vector<std::vector<O>>(4, {O{0, 0.25}, O{1, 0.25}, O{2, 0.25}, O{3, 0.25}}));
    EXPECT_DOUBLE_EQ(alpha_of(four, four).alpha, 0.25);
}

TEST(Collision, Examples) {
    const auto ident = RandomizedFunctionTable::deterministic(2, {0, 1, 2, 3});
    EXPECT_NEAR(collision_probability(ident, ident, NoiseParameter(0.5)), 0.5625, 1e-15);

    Rng rng(Seed(8));
    std::vector<Label> labels(16);
    for (auto& l : labels) l = static_cast<Label>(rng.below(5));
    const auto f = RandomizedFunctionTable::deterministic(4, labels);
    EXPECT_NEAR(collision_probability(f, f, NoiseParameter(1.0)), 1.0, 1e-15);

    // rho = 0 and g constant y0: Pr_x[f(x) = y0]
    const auto g = RandomizedFunctionTable::deterministic(4, std::vector<Label>(16, 2));
    const double expected = static_cast<double>(std::count(labels.begin(), labels.end(), 2u)) / 16.0;
    EXPECT_NEAR(collision_probability(f, g, NoiseParameter(0.0)), expected, 1e-15);
}

TEST(Collision, BoundExample) {
    const auto ident = RandomizedFunctionTable::deterministic(2, {0, 1, 2, 3});
    const auto c = check_collision_bound(ident, ident, NoiseParameter(0.5));
    EXPECT_NEAR(c.lhs, 0.5625, 1e-15);
    EXPECT_DOUBLE_EQ(c.alpha, 0.25);
    EXPECT_NEAR(c.rhs, std::pow(2.0, -0.6), 1e-15);
    EXPECT_NEAR(c.rhs, 0.6598, 5e-5);
    EXPECT_TRUE(c.ok);
}

TEST(Collision, MatchesDefinitionalDoubleSum) {
    Rng rng(Seed(9));
    for (int i = 0; i < 60; ++i) {
        const unsigned n = 1 + static_cast<unsigned>(rng.below(7));
        const auto pair = gen::random_function_pair(n, 12, rng);
        const double rho = rng.uniform();
        EXPECT_NEAR(collision_probability(pair.f, pair.g, NoiseParameter(rho)),
                    testkit::definitional_collision(pair.f, pair.g, rho), 1e-10);
    }
}

TEST(Collision, RhoOneIsPointwiseAgreement) {
    Rng rng(Seed(10));
    for (int i = 0; i < 50; ++i) {
        const auto pair = gen::random_function_pair(5, 8, rng);
        double direct = 0.0;
        for (std::size_t x = 0; x < 32; ++x)
            for (const auto& o : pair.f.row(x)) direct += o.mass * pair.g.mass(x, o.label);
        EXPECT_NEAR(collision_probability(pair.f, pair.g, NoiseParameter(1.0)), direct / 32.0, 1e-12);
    }
}

TEST(Collision, RhoZeroBoundIsSqrtAlpha) {
    Rng rng(Seed(11));
    for (int i = 0; i < 100; ++i) {
        const auto pair = gen::random_function_pair(4, 16, rng);
        const auto c = check_collision_bound(pair.f, pair.g, NoiseParameter(0.0));
        EXPECT_LE(c.lhs, c.alpha + 1e-12);
        EXPECT_NEAR(c.rhs, std::sqrt(c.alpha), 1e-15);
        EXPECT_TRUE(c.ok);
    }
}

TEST(Collision, RandomSweepHolds) {
    Rng rng(Seed(12));
    for (int i = 0; i < 200; ++i) {
        const unsigned n = 1 + static_cast<unsigned>(rng.below(10));
        const auto pair = gen::random_function_pair(n, 64, rng);
        for (double rho : {0.25, 0.5, 0.75}) EXPECT_TRUE(check_collision_bound(pair.f, pair.g, NoiseParameter(rho)).ok);
    }
}
