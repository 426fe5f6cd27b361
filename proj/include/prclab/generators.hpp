#pragma once

// Random instances for the exact verifiers.

#include "prclab/boolean_analysis.hpp"
#include "prclab/info_theory.hpp"
#include "prclab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace prclab::gen {

/// A real-valued table drawn from a rotating mix of shapes: signed uniform,
/// nonnegative heavy-tailed, sparse indicators and +-1 functions.
inline FunctionTable random_function(unsigned n, Rng& rng) {
    const std::size_t size = hypercube_size(n);
    std::vector<double> v(size);
    switch (rng.below(4)) {
    case 0:
        for (auto& x : v) x = 2.0 * rng.uniform() - 1.0;
        break;
    case 1:
        for (auto& x : v) x = -std::log1p(-rng.uniform()) * 3.0;
        break;
    case 2: {
        const double density = std::ldexp(1.0, -static_cast<int>(rng.below(n + 1)));
        for (auto& x : v) x = rng.bernoulli(density) ? 1.0 : 0.0;
        break;
    }
    default:
        for (auto& x : v) x = rng.bit() ? 1.0 : -1.0;
        break;
    }
    return {n, std::move(v)};
}

namespace detail {

inline std::vector<RandomizedFunctionTable::Outcome> random_row(Rng& rng, Label labels, std::size_t spread) {
    std::vector<RandomizedFunctionTable::Outcome> row;
    double total = 0.0;
    for (std::size_t k = 0; k < spread; ++k) {
        const double m = rng.uniform() + 1e-3;
        row.push_back({static_cast<Label>(rng.below(labels)), m});
        total += m;
    }
    for (auto& o : row) o.mass /= total;
    return row;
}

} // namespace detail

struct FunctionPair {
    RandomizedFunctionTable f;
    RandomizedFunctionTable g;
};

/// A pair (f, g) of randomized functions on {0,1}^n over at most `max_labels`
/// labels. Shapes: independent random labelings, f = g, labels determined by
/// a few coordinates (coarse cells), and sparse randomized rows.
inline FunctionPair random_function_pair(unsigned n, Label max_labels, Rng& rng) {
    const std::size_t size = hypercube_size(n);
    const Label labels = static_cast<Label>(std::min<std::size_t>(max_labels, std::max<std::size_t>(size, 2)));
    const auto kind = rng.below(4);
    std::vector<std::vector<RandomizedFunctionTable::Outcome>> frows(size);
    std::vector<std::vector<RandomizedFunctionTable::Outcome>> grows(size);
    if (kind == 2) {
        // label = the value of a random subset of coordinates
        std::size_t mask = 0;
        const unsigned width = 1 + static_cast<unsigned>(rng.below(std::min<unsigned>(n, 6)));
        while (static_cast<unsigned>(std::popcount(mask)) < width) mask |= std::size_t{1} << rng.below(n);
        for (std::size_t x = 0; x < size; ++x) {
            const auto cell = static_cast<Label>(x & mask);
            frows[x] = {{cell, 1.0}};
            grows[x] = rng.bernoulli(0.9) ? frows[x] : std::vector<RandomizedFunctionTable::Outcome>{{static_cast<Label>(rng.below(labels)), 1.0}};
        }
    } else {
        const std::size_t spread = kind == 3 ? 1 + rng.below(3) : 1;
        for (std::size_t x = 0; x < size; ++x) {
            frows[x] = detail::random_row(rng, labels, spread);
            grows[x] = kind == 1 ? frows[x] : detail::random_row(rng, labels, spread);
        }
    }
    return {RandomizedFunctionTable(n, frows), RandomizedFunctionTable(n, grows)};
}

/// A distribution on `size` points with SD from uniform at most about
/// `max_eps` (mixes uniform with a random distribution).
inline FiniteDistribution near_uniform_distribution(std::size_t size, double max_eps, Rng& rng) {
    std::vector<double> raw(size);
    double total = 0.0;
    const bool spiky = rng.bit();
    for (auto& r : raw) {
        r = spiky ? std::pow(rng.uniform(), 4.0) : rng.uniform();
        total += r;
    }
    const double weight = std::min(1.0, max_eps * rng.uniform() * 2.0);
    const double u = 1.0 / static_cast<double>(size);
    std::vector<double> p(size);
    double sum = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
        p[i] = (1.0 - weight) * u + weight * raw[i] / total;
        sum += p[i];
    }
    for (auto& x : p) x /= sum;
    return FiniteDistribution(std::move(p));
}

/// A small keyed family whose members are near-uniform, point masses or
/// key-correlated, chosen at random.
inline KeyedFamily random_keyed_family(unsigned key_bits, unsigned n, Rng& rng) {
    const std::size_t keys = std::size_t{1} << key_bits;
    const std::size_t points = std::size_t{1} << n;
    std::vector<FiniteDistribution> members;
    const auto kind = rng.below(3);
    const double eps = 0.3 * rng.uniform();
    for (std::size_t k = 0; k < keys; ++k) {
        if (kind == 0) {
            members.push_back(near_uniform_distribution(points, eps, rng));
        } else if (kind == 1) {
            members.push_back(FiniteDistribution::point(points, k % points));
        } else {
            // uniform except that the key nudges mass toward x = k mod 2^n
            std::vector<double> p(points, (1.0 - eps) / static_cast<double>(points));
            p[k % points] += eps;
            members.push_back(FiniteDistribution(std::move(p)));
        }
    }
    return KeyedFamily(key_bits, n, std::move(members));
}

} // namespace prclab::gen
