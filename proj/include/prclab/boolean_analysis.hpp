#pragma once

// Exact analysis of functions on small hypercubes {0,1}^n. A point x is an
// index in [0, 2^n); coordinate k of x is bit k of the index.

#include "prclab/channel.hpp"
#include "prclab/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace prclab {

/// Dense tables are refused above this dimension.
inline constexpr unsigned kMaxTableDimension = 20;

inline std::size_t hypercube_size(unsigned n) {
    if (n > kMaxTableDimension)
        throw EnumerationLimit("dimension " + std::to_string(n) + " exceeds the dense-table cap of " +
                             std::to_string(kMaxTableDimension));
    return std::size_t{1} << n;
}

/// f : {0,1}^n -> R stored as 2^n values.
class FunctionTable {
public:
    FunctionTable() = default;

    FunctionTable(unsigned n, std::vector<double> values) : n_(n), values_(std::move(values)) {
        if (values_.size() != hypercube_size(n)) throw DimensionMismatch("function table length must be 2^n");
        for (double v : values_)
            if (!std::isfinite(v)) throw ParameterError("function table entries must be finite");
    }

    static FunctionTable constant(unsigned n, double c) { return {n, std::vector<double>(hypercube_size(n), c)}; }

    /// (-1)^{x_k}: +1 where coordinate k is 0.
    static FunctionTable dictator(unsigned n, unsigned k) {
        if (k >= n) throw ParameterError("dictator coordinate out of range");
        std::vector<double> v(hypercube_size(n));
        for (std::size_t x = 0; x < v.size(); ++x) v[x] = ((x >> k) & 1U) ? -1.0 : 1.0;
        return {n, std::move(v)};
    }

    /// (-1)^{popcount(x & mask)}.
    static FunctionTable character(unsigned n, std::size_t mask) {
        std::vector<double> v(hypercube_size(n));
        for (std::size_t x = 0; x < v.size(); ++x) v[x] = (std::popcount(x & mask) & 1) ? -1.0 : 1.0;
        return {n, std::move(v)};
    }

    unsigned dimension() const noexcept { return n_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t x) const noexcept { return values_[x]; }

private:
    unsigned n_ = 0;
    std::vector<double> values_{0.0};
};

/// (E_x |f(x)|^p)^{1/p} under the uniform measure.
inline double p_norm(const FunctionTable& f, double p) {
    if (!(p >= 1.0)) throw ParameterError("p-norm requires p >= 1");
    double acc = 0.0;
    if (p == 1.0) {
        for (double v : f.values()) acc += std::abs(v);
        return acc / static_cast<double>(f.size());
    }
    if (p == 2.0) {
        for (double v : f.values()) acc += v * v;
        return std::sqrt(acc / static_cast<double>(f.size()));
    }
    for (double v : f.values()) acc += std::pow(std::abs(v), p);
    return std::pow(acc / static_cast<double>(f.size()), 1.0 / p);
}

/// E_x[f(x) g(x)].
inline double inner_product(const FunctionTable& f, const FunctionTable& g) {
    if (f.dimension() != g.dimension()) throw DimensionMismatch("inner product of tables with different dimensions");
    double acc = 0.0;
    for (std::size_t x = 0; x < f.size(); ++x) acc += f[x] * g[x];
    return acc / static_cast<double>(f.size());
}

namespace detail {

// Unnormalized in-place fast Walsh-Hadamard butterfly.
inline void fwht(std::vector<double>& a) {
    for (std::size_t h = 1; h < a.size(); h <<= 1) {
        for (std::size_t i = 0; i < a.size(); i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                const double u = a[j];
                const double v = a[j + h];
                a[j] = u + v;
                a[j + h] = u - v;
            }
        }
    }
}

} // namespace detail

/// Fourier coefficients fhat(S) = E_x[f(x) chi_S(x)], indexed by subset mask S.
inline FunctionTable walsh_hadamard(const FunctionTable& f) {
    std::vector<double> a(f.values().begin(), f.values().end());
    detail::fwht(a);
    const double scale = 1.0 / static_cast<double>(a.size());
    for (double& v : a) v *= scale;
    return {f.dimension(), std::move(a)};
}

/// f(x) = sum_S fhat(S) chi_S(x).
inline FunctionTable inverse_walsh_hadamard(const FunctionTable& coefficients) {
    std::vector<double> a(coefficients.values().begin(), coefficients.values().end());
    detail::fwht(a);
    return {coefficients.dimension(), std::move(a)};
}

/// (T_rho f)(x) = E_{y ~ N_rho(x)} f(y), computed by damping fhat(S) by rho^|S|.
inline FunctionTable noise_operator(const FunctionTable& f, NoiseParameter rho) {
    if (rho.rho() == 1.0) return f;
    std::vector<double> a(f.values().begin(), f.values().end());
    detail::fwht(a);
    const unsigned n = f.dimension();
    std::vector<double> damping(n + 1);
    for (unsigned k = 0; k <= n; ++k) damping[k] = std::pow(rho.rho(), static_cast<double>(k));
    const double scale = 1.0 / static_cast<double>(a.size());
    for (std::size_t s = 0; s < a.size(); ++s) a[s] *= damping[static_cast<unsigned>(std::popcount(s))] * scale;
    detail::fwht(a);
    return {n, std::move(a)};
}

struct HypercontractivityCheck {
    double noisy_two_norm;  ///< ||T_rho f||_2
    double source_norm;     ///< ||f||_{1+rho^2}
    double margin;          ///< source_norm - noisy_two_norm
    bool ok;
};

/// Inequalities are accepted with this absolute slack.
inline constexpr double kInequalitySlack = 1e-9;

/// ||T_rho f||_2 <= ||f||_{1+rho^2}.
inline HypercontractivityCheck check_hypercontractivity(const FunctionTable& f, NoiseParameter rho) {
    const double lhs = p_norm(noise_operator(f, rho), 2.0);
    const double rhs = p_norm(f, 1.0 + rho.rho() * rho.rho());
    return {lhs, rhs, rhs - lhs, rhs - lhs >= -kInequalitySlack};
}

using Label = std::uint32_t;

/// A randomized function {0,1}^n -> Y given by its conditional distributions:
/// for each x, a list of (label, probability) summing to one. Stored row-wise
/// (CSR) so wide label sets stay cheap.
class RandomizedFunctionTable {
public:
    struct Outcome {
        Label label;
        double mass;
    };

    RandomizedFunctionTable() = default;

    RandomizedFunctionTable(unsigned n, const std::vector<std::vector<Outcome>>& rows) : n_(n) {
        if (rows.size() != hypercube_size(n)) throw DimensionMismatch("randomized table needs one row per point");
        offsets_.assign(1, 0);
        offsets_.reserve(rows.size() + 1);
        for (const auto& row : rows) {
            double total = 0.0;
            for (const auto& o : row) {
                if (!(o.mass >= 0.0) || !std::isfinite(o.mass)) throw ParameterError("outcome masses must be finite and nonnegative");
                total += o.mass;
                if (o.mass > 0.0) outcomes_.push_back(o);
            }
            if (std::abs(total - 1.0) > 1e-12) throw ParameterError("outcome masses for a point must sum to 1");
            offsets_.push_back(outcomes_.size());
        }
    }

    /// Deterministic function x -> labels[x].
    static RandomizedFunctionTable deterministic(unsigned n, const std::vector<Label>& labels) {
        std::vector<std::vector<Outcome>> rows(labels.size());
        for (std::size_t x = 0; x < labels.size(); ++x) rows[x] = {{labels[x], 1.0}};
        return {n, rows};
    }

    unsigned dimension() const noexcept { return n_; }
    std::size_t points() const noexcept { return offsets_.size() - 1; }

    std::span<const Outcome> row(std::size_t x) const noexcept {
        return {outcomes_.data() + offsets_[x], offsets_[x + 1] - offsets_[x]};
    }

    /// Pr[f(x) = y].
    double mass(std::size_t x, Label y) const noexcept {
        double m = 0.0;
        for (const auto& o : row(x))
            if (o.label == y) m += o.mass;
        return m;
    }

    /// For each label with positive total mass, the column (x, Pr[f(x)=label]),
    /// sorted by label.
    std::vector<std::pair<Label, std::vector<std::pair<std::size_t, double>>>> columns() const {
        std::vector<std::pair<Label, std::pair<std::size_t, double>>> entries;
        entries.reserve(outcomes_.size());
        for (std::size_t x = 0; x < points(); ++x)
            for (const auto& o : row(x)) entries.push_back({o.label, {x, o.mass}});
        std::stable_sort(entries.begin(), entries.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<Label, std::vector<std::pair<std::size_t, double>>>> cols;
        for (const auto& [label, entry] : entries) {
            if (cols.empty() || cols.back().first != label) cols.push_back({label, {}});
            cols.back().second.push_back(entry);
        }
        return cols;
    }

private:
    unsigned n_ = 0;
    std::vector<std::size_t> offsets_{0, 0};
    std::vector<Outcome> outcomes_;
};

/// Least alpha with Pr_x[f(x) = y] <= alpha for every y that g can output.
/// Zero when f never produces a label in the support of g.
struct AlphaBound {
    double alpha;
};

inline AlphaBound alpha_of(const RandomizedFunctionTable& f, const RandomizedFunctionTable& g) {
    if (f.dimension() != g.dimension()) throw DimensionMismatch("alpha_of on tables with different dimensions");
    const auto fcols = f.columns();
    const auto gcols = g.columns();
    const double points = static_cast<double>(f.points());
    double alpha = 0.0;
    auto fi = fcols.begin();
    for (const auto& [label, gcol] : gcols) {
        (void)gcol;
        while (fi != fcols.end() && fi->first < label) ++fi;
        if (fi == fcols.end() || fi->first != label) continue;
        double total = 0.0;
        for (const auto& [x, m] : fi->second) total += m;
        alpha = std::max(alpha, total / points);
    }
    return {alpha};
}

/// Pr[f(x~) = g(x)] for uniform x and x~ <- N_rho(x), computed as
/// sum_y <q_y, T_rho p_y> over labels y in the support of g.
inline double collision_probability(const RandomizedFunctionTable& f, const RandomizedFunctionTable& g,
                                    NoiseParameter rho) {
    if (f.dimension() != g.dimension()) throw DimensionMismatch("collision probability of tables with different dimensions");
    const unsigned n = f.dimension();
    const std::size_t size = hypercube_size(n);
    const auto fcols = f.columns();
    const auto gcols = g.columns();
    double total = 0.0;
    std::vector<double> p(size);
    auto fi = fcols.begin();
    for (const auto& [label, gcol] : gcols) {
        while (fi != fcols.end() && fi->first < label) ++fi;
        if (fi == fcols.end() || fi->first != label) continue;
        std::fill(p.begin(), p.end(), 0.0);
        for (const auto& [x, m] : fi->second) p[x] += m;
        const FunctionTable smoothed = noise_operator(FunctionTable(n, p), rho);
        double acc = 0.0;
        for (const auto& [x, m] : gcol) acc += m * smoothed[x];
        total += acc / static_cast<double>(size);
    }
    return total;
}

struct CollisionCheck {
    unsigned n;
    double rho;
    double alpha;
    double lhs;  ///< exact collision probability
    double rhs;  ///< alpha^{(1/2)(1-rho^2)/(1+rho^2)}
    bool ok;
};

inline double collision_exponent(NoiseParameter rho) {
    const double r2 = rho.rho() * rho.rho();
    return 0.5 * (1.0 - r2) / (1.0 + r2);
}

inline CollisionCheck check_collision_bound(const RandomizedFunctionTable& f, const RandomizedFunctionTable& g,
                                            NoiseParameter rho) {
    const double lhs = collision_probability(f, g, rho);
    const double alpha = alpha_of(f, g).alpha;
    const double rhs = std::pow(alpha, collision_exponent(rho));
    return {f.dimension(), rho.rho(), alpha, lhs, rhs, lhs <= rhs + kInequalitySlack};
}

} // namespace prclab
