#pragma once

#include "prclab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace prclab {

/// Probability vector over {0, ..., size-1}.
class FiniteDistribution {
public:
    explicit FiniteDistribution(std::vector<double> probabilities) : p_(std::move(probabilities)) {
        if (p_.empty()) throw ParameterError("distribution over an empty set");
        double total = 0.0;
        for (double v : p_) {
            if (!(v >= 0.0) || !std::isfinite(v)) throw ParameterError("probabilities must be finite and nonnegative");
            total += v;
        }
        if (std::abs(total - 1.0) > 1e-12) throw ParameterError("probabilities must sum to 1");
    }

    static FiniteDistribution uniform(std::size_t size) {
        return FiniteDistribution(std::vector<double>(size, 1.0 / static_cast<double>(size)));
    }

    static FiniteDistribution point(std::size_t size, std::size_t at) {
        std::vector<double> p(size, 0.0);
        p.at(at) = 1.0;
        return FiniteDistribution(std::move(p));
    }

    std::size_t size() const noexcept { return p_.size(); }
    std::span<const double> probabilities() const noexcept { return p_; }
    double operator[](std::size_t i) const noexcept { return p_[i]; }

private:
    std::vector<double> p_;
};

/// Shannon entropy in bits, with 0 log 0 = 0.
inline double entropy(const FiniteDistribution& d) {
    double h = 0.0;
    for (double p : d.probabilities())
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

inline double statistical_distance(const FiniteDistribution& a, const FiniteDistribution& b) {
    if (a.size() != b.size()) throw DimensionMismatch("statistical distance over different supports");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
    return acc / 2.0;
}

/// KL(a || b) in bits. Returns +infinity when a is not absolutely continuous
/// with respect to b.
inline double kl_divergence(const FiniteDistribution& a, const FiniteDistribution& b) {
    if (a.size() != b.size()) throw DimensionMismatch("KL divergence over different supports");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) continue;
        if (b[i] == 0.0) return std::numeric_limits<double>::infinity();
        acc += a[i] * std::log2(a[i] / b[i]);
    }
    return acc;
}

struct PinskerCheck {
    enum class Status { holds, violated, hypothesis_not_met };

    double eps;    ///< SD(d, uniform)
    double lower;  ///< 2 eps^2
    double gap;    ///< log|S| - H(d)
    double upper;  ///< 2 eps log|S| + 2 sqrt(eps)
    Status status;

    bool ok() const noexcept { return status == Status::holds; }
};

/// 2 eps^2 <= log|S| - H(X) <= 2 eps log|S| + 2 sqrt(eps), claimed only for
/// eps <= 1/4.
inline PinskerCheck check_pinsker_sandwich(const FiniteDistribution& d, double slack = 1e-9) {
    const double eps = statistical_distance(d, FiniteDistribution::uniform(d.size()));
    const double log_size = std::log2(static_cast<double>(d.size()));
    PinskerCheck c{eps, 2.0 * eps * eps, log_size - entropy(d), 2.0 * eps * log_size + 2.0 * std::sqrt(eps),
                   PinskerCheck::Status::holds};
    if (eps > 0.25) {
        c.status = PinskerCheck::Status::hypothesis_not_met;
    } else if (c.lower > c.gap + slack || c.gap > c.upper + slack) {
        c.status = PinskerCheck::Status::violated;
    }
    return c;
}

/// sqrt(2 eps n + 2 sqrt(eps) / m + ell / m): bound on SD((sk, x), uniform)
/// for a key of ell bits whose m-fold samples are eps-close to uniform.
inline double key_leakage_bound(double eps, std::size_t n, std::size_t m, std::size_t ell) {
    if (!(eps >= 0.0 && eps <= 1.0)) throw ParameterError("eps must lie in [0, 1]");
    if (m == 0) throw ParameterError("sample count m must be at least 1");
    const double md = static_cast<double>(m);
    return std::sqrt(2.0 * eps * static_cast<double>(n) + 2.0 * std::sqrt(eps) / md + static_cast<double>(ell) / md);
}

/// {D_key} for key in {0,1}^key_bits, each over {0,1}^n (index-encoded).
class KeyedFamily {
public:
    KeyedFamily(unsigned key_bits, unsigned n, std::vector<FiniteDistribution> members)
        : key_bits_(key_bits), n_(n), members_(std::move(members)) {
        if (key_bits > 30 || n > 30) throw ParameterError("keyed family dimensions too large");
        if (members_.size() != (std::size_t{1} << key_bits)) throw DimensionMismatch("keyed family needs 2^key_bits members");
        for (const auto& d : members_)
            if (d.size() != (std::size_t{1} << n)) throw DimensionMismatch("keyed family member is not over {0,1}^n");
    }

    unsigned key_bits() const noexcept { return key_bits_; }
    unsigned n() const noexcept { return n_; }
    const FiniteDistribution& member(std::size_t key) const { return members_.at(key); }
    std::size_t keys() const noexcept { return members_.size(); }

private:
    unsigned key_bits_;
    unsigned n_;
    std::vector<FiniteDistribution> members_;
};

struct KeyLeakageCheck {
    double eps;          ///< SD of (x_1..x_m) from uniform on {0,1}^{nm}
    double measured_sd;  ///< SD of (sk, x) from uniform on {0,1}^{ell+n}
    double bound;
    bool ok;
};

/// Enumeration caps for check_key_leakage.
inline constexpr unsigned kMaxKeyedBits = 20;       // n + ell
inline constexpr unsigned kMaxJointSampleBits = 24; // m * n
inline constexpr unsigned kMaxKeyLeakageWork = 30;  // ell + m * n

inline KeyLeakageCheck check_key_leakage(const KeyedFamily& family, std::size_t m) {
    if (m == 0) throw ParameterError("sample count m must be at least 1");
    const unsigned n = family.n();
    const unsigned ell = family.key_bits();
    if (n + ell > kMaxKeyedBits) throw EnumerationLimit("n + ell exceeds the enumeration cap");
    if (m * n > kMaxJointSampleBits) throw EnumerationLimit("m * n exceeds the enumeration cap");
    if (ell + m * n > kMaxKeyLeakageWork) throw EnumerationLimit("2^(ell + m n) work exceeds the enumeration cap");
    const std::size_t points = std::size_t{1} << n;
    const double key_weight = 1.0 / static_cast<double>(family.keys());

    std::vector<double> joint(std::size_t{1} << (m * n), 0.0);
    std::vector<double> product;
    std::vector<double> next;
    for (std::size_t key = 0; key < family.keys(); ++key) {
        const auto d = family.member(key).probabilities();
        product.assign(1, 1.0);
        for (std::size_t s = 0; s < m; ++s) {
            next.assign(product.size() * points, 0.0);
            for (std::size_t prefix = 0; prefix < product.size(); ++prefix) {
                if (product[prefix] == 0.0) continue;
                for (std::size_t x = 0; x < points; ++x) next[prefix * points + x] = product[prefix] * d[x];
            }
            product.swap(next);
        }
        for (std::size_t i = 0; i < joint.size(); ++i) joint[i] += key_weight * product[i];
    }
    const double joint_uniform = 1.0 / static_cast<double>(joint.size());
    double eps = 0.0;
    for (double v : joint) eps += std::abs(v - joint_uniform);
    eps = std::min(eps / 2.0, 1.0);

    const double pair_uniform = key_weight / static_cast<double>(points);
    double measured = 0.0;
    for (std::size_t key = 0; key < family.keys(); ++key) {
        const auto d = family.member(key).probabilities();
        for (std::size_t x = 0; x < points; ++x) measured += std::abs(key_weight * d[x] - pair_uniform);
    }
    measured /= 2.0;

    const double bound = key_leakage_bound(eps, n, m, ell);
    return {eps, measured, bound, measured <= bound + 1e-9};
}

} // namespace prclab
