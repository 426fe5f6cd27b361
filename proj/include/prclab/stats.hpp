#pragma once

// Binomial and chi-square helpers for Monte Carlo comparisons.

#include "prclab/errors.hpp"

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>

namespace prclab::stats {

inline double proportion(std::size_t successes, std::size_t trials) {
    return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
}

/// sqrt(p (1 - p) / trials).
inline double binomial_sigma(double p, std::size_t trials) {
    p = std::clamp(p, 0.0, 1.0);
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

/// Normal-approximation 95% half-width around the observed proportion.
inline double ci95_halfwidth(std::size_t successes, std::size_t trials) {
    return 1.959963984540054 * binomial_sigma(proportion(successes, trials), trials);
}

/// Two-sided tail mass outside +-z standard deviations of a normal.
inline double normal_two_sided_tail(double z) {
    return 2.0 * boost::math::cdf(boost::math::complement(boost::math::normal(), z));
}

/// Exact two-sided binomial p-value of observing `successes` under Bin(trials, p).
inline double binomial_two_sided_p(std::size_t successes, std::size_t trials, double p) {
    if (successes > trials) throw ParameterError("more successes than trials");
    p = std::clamp(p, 0.0, 1.0);
    if (p == 0.0) return successes == 0 ? 1.0 : 0.0;
    if (p == 1.0) return successes == trials ? 1.0 : 0.0;
    const boost::math::binomial_distribution<double> dist(static_cast<double>(trials), p);
    const double k = static_cast<double>(successes);
    const double lower = boost::math::cdf(dist, k);
    const double upper = successes == 0 ? 1.0 : boost::math::cdf(boost::math::complement(dist, k - 1.0));
    return std::min(1.0, 2.0 * std::min(lower, upper));
}

/// The observed count lies within the z-sigma binomial interval of p: the
/// exact two-sided p-value is at least the normal tail mass beyond z.
inline bool within_binomial_interval(std::size_t successes, std::size_t trials, double p, double z) {
    return binomial_two_sided_p(successes, trials, p) >= normal_two_sided_tail(z);
}

/// The observed proportion is not significantly above `bound`: either it
/// is at most the bound, or Pr[Bin(trials, bound) >= successes] is at least
/// the one-sided normal tail mass beyond z.
inline bool not_above_bound(std::size_t successes, std::size_t trials, double bound, double z) {
    if (successes > trials) throw ParameterError("more successes than trials");
    if (proportion(successes, trials) <= bound) return true;
    if (bound <= 0.0) return false;
    const boost::math::binomial_distribution<double> dist(static_cast<double>(trials), bound);
    const double upper = boost::math::cdf(boost::math::complement(dist, static_cast<double>(successes) - 1.0));
    return upper >= normal_two_sided_tail(z) / 2.0;
}

struct ChiSquareResult {
    double statistic;
    std::size_t dof;
    double p_value;
};

/// Chi-square test of homogeneity for two samples over the same categories.
/// Categories empty in both samples are dropped.
inline ChiSquareResult chi_square_homogeneity(std::span<const std::size_t> a, std::span<const std::size_t> b) {
    if (a.size() != b.size()) throw DimensionMismatch("chi-square samples over different category sets");
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        na += static_cast<double>(a[i]);
        nb += static_cast<double>(b[i]);
    }
    if (na == 0.0 || nb == 0.0) throw ParameterError("chi-square sample is empty");
    double stat = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double col = static_cast<double>(a[i] + b[i]);
        if (col == 0.0) continue;
        ++used;
        const double ea = col * na / (na + nb);
        const double eb = col * nb / (na + nb);
        stat += (static_cast<double>(a[i]) - ea) * (static_cast<double>(a[i]) - ea) / ea;
        stat += (static_cast<double>(b[i]) - eb) * (static_cast<double>(b[i]) - eb) / eb;
    }
    if (used < 2) return {0.0, 0, 1.0};
    const std::size_t dof = used - 1;
    const boost::math::chi_squared_distribution<double> dist(static_cast<double>(dof));
    return {stat, dof, boost::math::cdf(boost::math::complement(dist, stat))};
}

} // namespace prclab::stats
