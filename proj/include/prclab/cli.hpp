#pragma once

// Batch commands behind the prclab executable. Each command turns a RunConfig
// into a table; rendering adds a config echo header and the version line.
// Output depends only on the config (seed included).

#include "prclab/boolean_analysis.hpp"
#include "prclab/compiler.hpp"
#include "prclab/generators.hpp"
#include "prclab/info_theory.hpp"
#include "prclab/parallel.hpp"
#include "prclab/prc.hpp"
#include "prclab/prf_prc.hpp"
#include "prclab/stats.hpp"
#include "prclab/toy_schemes.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace prclab::cli {

inline constexpr const char* kVersion = "prclab 0.1.0";

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2 };

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string command;
    std::uint64_t seed = 1;
    std::optional<std::size_t> trials;
    std::string out;  ///< empty: standard output
    std::string format = "csv";

    std::vector<unsigned> n;
    std::vector<double> rho;
    std::vector<double> tau;
    std::vector<std::size_t> lambda;
    std::vector<std::size_t> ell;
    std::vector<std::size_t> blocks;
    std::vector<std::size_t> q_bound;

    unsigned n_cap = 16;        // hyper
    std::size_t pairs = 1000;   // hyper: collision-bound instances
    bool simulate = true;       // prc-eval
    std::string scheme = "prf-prc";  // compile
    std::string heavy_mode = "auto";
    double delta = 0.0;         // bounds
    double eps = 0.0;
    std::size_t m = 1;
    std::optional<std::size_t> key_bits;
    std::optional<double> c;
};

using Cell = std::variant<std::string, std::int64_t, double, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct Output {
    int exit_code = kOk;
    std::string text;     ///< report body (written to --out or stdout)
    std::string message;  ///< diagnostics for stderr
};

// ---- rendering ---------------------------------------------------------------

/// Shortest decimal that reads back to the same double.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return {buf, end};
}

inline std::string format_cell(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>) return v;
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else if constexpr (std::is_same_v<T, double>) return format_double(v);
            else return std::to_string(v);
        },
        c);
}

inline nlohmann::ordered_json cell_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return nullptr;
            }
            return v;
        },
        c);
}

inline nlohmann::ordered_json config_echo(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["command"] = cfg.command;
    j["seed"] = cfg.seed;
    j["trials"] = cfg.trials ? nlohmann::ordered_json(*cfg.trials) : nlohmann::ordered_json(nullptr);
    j["format"] = cfg.format;
    j["n"] = cfg.n;
    j["rho"] = cfg.rho;
    j["tau"] = cfg.tau;
    j["lambda"] = cfg.lambda;
    j["ell"] = cfg.ell;
    j["blocks"] = cfg.blocks;
    j["q_bound"] = cfg.q_bound;
    if (cfg.command == "hyper") {
        j["n_cap"] = cfg.n_cap;
        j["pairs"] = cfg.pairs;
    } else if (cfg.command == "prc-eval") {
        j["simulate"] = cfg.simulate;
    } else if (cfg.command == "compile") {
        j["scheme"] = cfg.scheme;
        j["heavy_mode"] = cfg.heavy_mode;
        j["eps"] = cfg.eps;
    } else if (cfg.command == "bounds") {
        j["delta"] = cfg.delta;
        j["eps"] = cfg.eps;
        j["m"] = cfg.m;
        j["key_bits"] = cfg.key_bits ? nlohmann::ordered_json(*cfg.key_bits) : nlohmann::ordered_json(nullptr);
        j["c"] = cfg.c ? nlohmann::ordered_json(*cfg.c) : nlohmann::ordered_json(nullptr);
    }
    j["workers_env"] = "PRCLAB_WORKERS (does not affect results)";
    return j;
}

inline std::string render(const RunConfig& cfg, const Table& t) {
    const auto echo = config_echo(cfg);
    if (cfg.format == "json") {
        nlohmann::ordered_json j;
        j["version"] = kVersion;
        j["config"] = echo;
        j["columns"] = t.columns;
        auto& rows = j["rows"] = nlohmann::ordered_json::array();
        for (const auto& r : t.rows) {
            nlohmann::ordered_json row;
            for (std::size_t i = 0; i < r.size(); ++i) row[t.columns[i]] = cell_json(r[i]);
            rows.push_back(std::move(row));
        }
        return j.dump(2) + '\n';
    }
    std::ostringstream out;
    out << "# " << kVersion << '\n';
    for (const auto& [k, v] : echo.items()) out << "# " << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << format_cell(r[i]);
        out << '\n';
    }
    return out.str();
}

// ---- helpers -----------------------------------------------------------------

namespace detail {

template <class T>
std::vector<T> or_default(const std::vector<T>& v, std::vector<T> fallback) {
    return v.empty() ? fallback : v;
}

inline void check_rhos(const std::vector<double>& rhos) {
    for (double r : rhos)
        if (!(r >= 0.0 && r <= 1.0)) throw UsageError("--rho values must lie in [0, 1]");
}

inline void check_taus(const std::vector<double>& taus) {
    for (double t : taus)
        if (!(t > 0.0 && t < 1.0)) throw UsageError("--tau values must lie in (0, 1)");
}

inline Seed cell_seed(Seed root, std::initializer_list<std::uint64_t> coords) {
    for (auto c : coords) root = root.child(c);
    return root;
}

inline std::uint64_t bits_of(double v) { return std::bit_cast<std::uint64_t>(v); }

inline HeavyMode parse_heavy_mode(const std::string& s) {
    if (s == "auto") return HeavyMode::automatic;
    if (s == "exact") return HeavyMode::exact;
    if (s == "mc") return HeavyMode::monte_carlo;
    throw UsageError("--heavy-mode must be auto, exact or mc");
}

} // namespace detail

// ---- hyper -------------------------------------------------------------------

/// Hypercontractivity on random real-valued tables and the collision bound on
/// random pairs of randomized functions. One row per (instance, rho).
inline Output cmd_hyper(const RunConfig& cfg) {
    if (cfg.n_cap > kMaxTableDimension)
        throw UsageError("--n-cap may not exceed " + std::to_string(kMaxTableDimension));
    const auto dims = detail::or_default(cfg.n, {2, 3, 4, 5, 6, 7, 8, 9, 10});
    for (unsigned n : dims)
        if (n < 1 || n > cfg.n_cap)
            throw UsageError("--n value " + std::to_string(n) + " outside [1, " + std::to_string(cfg.n_cap) + "]");
    const auto rhos = detail::or_default(cfg.rho, {0.0, 0.25, 0.5, 0.75, 1.0});
    detail::check_rhos(rhos);
    const std::size_t instances = cfg.trials.value_or(10000);

    std::vector<unsigned> pair_dims;
    for (unsigned n : dims)
        if (n <= 12) pair_dims.push_back(n);
    const std::size_t pairs = pair_dims.empty() ? 0 : cfg.pairs;

    Table t{{"check", "instance", "n", "rho", "lhs", "rhs", "margin", "alpha", "ok"}, {}};
    std::vector<std::vector<std::vector<Cell>>> blocks(instances + pairs);
    const Seed root = Seed(cfg.seed).child("hyper");
    parallel_for(instances + pairs, [&](std::size_t i) {
        auto& rows = blocks[i];
        if (i < instances) {
            Rng rng(root.child("function").child(i));
            const unsigned n = dims[rng.below(dims.size())];
            const FunctionTable f = gen::random_function(n, rng);
            for (double rho : rhos) {
                const auto c = check_hypercontractivity(f, NoiseParameter(rho));
                rows.push_back({std::string("hypercontractivity"), static_cast<std::int64_t>(i), static_cast<std::int64_t>(n),
                                rho, c.noisy_two_norm, c.source_norm, c.margin, std::nan(""), c.ok});
            }
        } else {
            const std::size_t k = i - instances;
            Rng rng(root.child("pair").child(k));
            const unsigned n = pair_dims[rng.below(pair_dims.size())];
            const auto pair = gen::random_function_pair(n, 64, rng);
            for (double rho : rhos) {
                const auto c = check_collision_bound(pair.f, pair.g, NoiseParameter(rho));
                rows.push_back({std::string("collision"), static_cast<std::int64_t>(k), static_cast<std::int64_t>(n), rho,
                                c.lhs, c.rhs, c.rhs - c.lhs, c.alpha, c.ok});
            }
        }
    });
    std::size_t violations = 0;
    for (auto& rows : blocks)
        for (auto& r : rows) {
            violations += !std::get<bool>(r.back());
            t.rows.push_back(std::move(r));
        }
    Output out{violations ? kViolation : kOk, render(cfg, t), {}};
    if (violations) out.message = std::to_string(violations) + " inequality violations";
    return out;
}

// ---- prc-eval ----------------------------------------------------------------

/// Measured versus closed-form completeness and the soundness bound for each
/// (lambda, rho, ell, B) cell of the PRF-based block PRC. The closed form
/// counts only uncorrupted blocks; a corrupted block still passes with
/// probability about 2^-ell, so where B * 2^-ell is not small the measured rate
/// sits above it. The one-sided column checks the closed form as a lower bound.
inline Output cmd_prc_eval(const RunConfig& cfg) {
    if (cfg.rho.empty() || cfg.ell.empty() || cfg.blocks.empty())
        throw UsageError("prc-eval needs a nonempty grid: give --rho, --ell and --blocks");
    detail::check_rhos(cfg.rho);
    const auto lambdas = detail::or_default(cfg.lambda, {16});
    const std::size_t trials = cfg.trials.value_or(1000);
    if (cfg.simulate && trials < 100) throw UsageError("--trials must be at least 100");

    Table t{{"lambda", "rho", "ell", "blocks", "n", "Q", "trials", "completeness_closed_form", "completeness_measured",
             "completeness_ci95", "completeness_within_3sigma", "completeness_not_below_closed_form", "soundness_bound", "false_accept_measured",
             "false_accept_ci95", "false_accept_within_bound"},
            {}};
    const Seed root = Seed(cfg.seed).child("prc-eval");
    for (std::size_t lambda : lambdas)
        for (double rho : cfg.rho)
            for (std::size_t ell : cfg.ell)
                for (std::size_t b : cfg.blocks) {
                    PrfPrcParams params;
                    params.lambda = lambda;
                    params.design_rho = rho;
                    try {
                        params = params.with_ell(ell).with_blocks(b);
                    } catch (const ParameterError& e) {
                        throw UsageError(e.what());
                    }
                    const PrfPrc scheme(params);
                    const NoiseParameter noise(rho);
                    const double closed = closed_form_completeness(noise, ell, b);
                    const double bound = closed_form_soundness_bound(ell, b);
                    std::vector<Cell> row{static_cast<std::int64_t>(lambda), rho, static_cast<std::int64_t>(ell),
                                          static_cast<std::int64_t>(b), static_cast<std::int64_t>(scheme.codeword_length()),
                                          static_cast<std::int64_t>(scheme.query_bound()),
                                          static_cast<std::int64_t>(cfg.simulate ? trials : 0), closed};
                    if (cfg.simulate) {
                        const Seed cell = detail::cell_seed(root, {lambda, detail::bits_of(rho), ell, b});
                        const auto comp = estimate_completeness(scheme, noise, trials, cell.child("completeness"));
                        const auto sound = estimate_soundness(scheme, trials, cell.child("soundness"));
                        const std::size_t false_accepts = sound.event("false_accept");
                        row.insert(row.end(), {comp.estimate, comp.ci95_halfwidth,
                                               stats::within_binomial_interval(comp.successes, trials, closed, 3.0),
                                               stats::not_above_bound(trials - comp.successes, trials, 1.0 - closed, 3.0),
                                               bound,
                                               stats::proportion(false_accepts, trials),
                                               stats::ci95_halfwidth(false_accepts, trials),
                                               stats::not_above_bound(false_accepts, trials, bound, 3.0)});
                    } else {
                        row.insert(row.end(), {std::nan(""), std::nan(""), std::string(""), std::string(""), bound, std::nan(""),
                                               std::nan(""), std::string("")});
                    }
                    t.rows.push_back(std::move(row));
                }
    return {kOk, render(cfg, t), {}};
}

// ---- compile -----------------------------------------------------------------

namespace detail {

template <PrcScheme S>
std::vector<Cell> compile_row(const S& scheme, double rho, double tau, std::size_t trials, double eps, HeavyMode mode,
                              Seed cell) {
    const CompilerParams params(tau);
    const NoiseParameter noise(rho);
    ExperimentOptions options;
    options.mode = mode;
    const auto e = run_completeness_experiment(scheme, params, noise, trials, cell.child("completeness"), options);
    const auto sound = estimate_compiled_soundness(scheme, params, trials, cell.child("soundness"));

    const std::size_t lambda = scheme.security_parameter();
    const std::size_t q = scheme.query_bound();
    const std::size_t n = scheme.codeword_length();
    const double delta_uncompiled = 1.0 - e.uncompiled.estimate;
    const double delta_compiled = 1.0 - e.compiled.estimate;
    const double mu = 1.0 - sound.estimate;
    const double tau_term = bad2_tau_term(q, tau, noise);
    return {static_cast<std::int64_t>(lambda),
            rho,
            tau,
            static_cast<std::int64_t>(q),
            static_cast<std::int64_t>(n),
            static_cast<std::int64_t>(trials),
            e.compiled.estimate,
            e.uncompiled.estimate,
            stats::proportion(e.bad.bad1, trials),
            bad1_bound(q, tau, lambda),
            stats::proportion(e.bad.bad2, trials),
            tau_term,
            theoretical_delta_prime(delta_uncompiled, q, tau, noise, eps, n, lambda),
            e.learned_size_mean,
            std::string(to_string(e.mode)),
            mu,
            delta_compiled + mu,
            1.0 - tau_term};
}

} // namespace detail

/// The compiler completeness sweep with Bad1/Bad2 frequencies, their bounds,
/// and the measured delta' + mu of the compiled scheme.
inline Output cmd_compile(const RunConfig& cfg) {
    const auto lambdas = detail::or_default(cfg.lambda, {16});
    const auto rhos = detail::or_default(cfg.rho, {0.5});
    const auto taus = detail::or_default(cfg.tau, {0.1});
    detail::check_rhos(rhos);
    detail::check_taus(taus);
    const std::size_t trials = cfg.trials.value_or(200);
    if (trials < 100) throw UsageError("--trials must be at least 100");
    const HeavyMode mode = detail::parse_heavy_mode(cfg.heavy_mode);
    if (!(cfg.eps >= 0.0)) throw UsageError("--eps must be nonnegative");

    Table t{{"lambda", "rho", "tau", "Q", "n", "trials", "completeness_compiled", "completeness_uncompiled", "bad1_freq",
             "bad1_bound", "bad2_freq", "bad2_tau_term", "delta_prime_theory", "S_size_mean", "heavy_mode",
             "mu_measured", "delta_prime_plus_mu", "delta_plus_mu_floor", "scheme", "ell", "blocks"},
            {}};
    const Seed root = Seed(cfg.seed).child("compile").child(cfg.scheme);
    auto add = [&](const auto& scheme, std::size_t ell, std::size_t blocks) {
        for (double rho : rhos)
            for (double tau : taus) {
                const Seed cell = detail::cell_seed(
                    root, {scheme.security_parameter(), detail::bits_of(rho), detail::bits_of(tau), ell, blocks});
                auto row = detail::compile_row(scheme, rho, tau, trials, cfg.eps, mode, cell);
                row.insert(row.end(), {cfg.scheme, static_cast<std::int64_t>(ell), static_cast<std::int64_t>(blocks)});
                t.rows.push_back(std::move(row));
            }
    };
    try {
        if (cfg.scheme == "prf-prc" || cfg.scheme == "oracle-free") {
            const auto ells = detail::or_default(cfg.ell, {8});
            const auto blocks = detail::or_default(cfg.blocks, {16});
            for (std::size_t lambda : lambdas)
                for (std::size_t ell : ells)
                    for (std::size_t b : blocks) {
                        if (cfg.scheme == "prf-prc") {
                            PrfPrcParams p;
                            p.lambda = lambda;
                            add(PrfPrc(p.with_ell(ell).with_blocks(b)), ell, b);
                        } else {
                            add(OracleFreeScheme(lambda, ell * b), ell, b);
                        }
                    }
        } else if (cfg.scheme == "prefix-query") {
            const auto prefixes = detail::or_default(cfg.ell, {3});
            const auto lengths = detail::or_default(cfg.n, {12});
            for (std::size_t lambda : lambdas)
                for (std::size_t prefix : prefixes)
                    for (unsigned n : lengths) add(PrefixQueryScheme(lambda, n, prefix), prefix, 0);
        } else {
            throw UsageError("--scheme must be prf-prc, oracle-free or prefix-query");
        }
    } catch (const ParameterError& e) {
        throw UsageError(e.what());
    } catch (const EnumerationLimit& e) {
        throw UsageError(e.what());
    }
    return {kOk, render(cfg, t), {}};
}

// ---- bounds ------------------------------------------------------------------

/// Every closed-form bound for each point of the parameter grid. No sampling.
inline Output cmd_bounds(const RunConfig& cfg) {
    const auto lambdas = detail::or_default(cfg.lambda, {16});
    const auto rhos = detail::or_default(cfg.rho, {0.5});
    const auto taus = detail::or_default(cfg.tau, {0.1});
    const auto qs = detail::or_default(cfg.q_bound, {1});
    const auto ells = detail::or_default(cfg.ell, {8});
    const auto blocks = detail::or_default(cfg.blocks, {256});
    detail::check_rhos(rhos);
    detail::check_taus(taus);
    if (!(cfg.delta >= 0.0 && cfg.delta <= 1.0)) throw UsageError("--delta must lie in [0, 1]");
    if (!(cfg.eps >= 0.0 && cfg.eps <= 1.0)) throw UsageError("--eps must lie in [0, 1]");
    if (cfg.m == 0) throw UsageError("--m must be at least 1");
    if (cfg.c && !(*cfg.c > 0.0)) throw UsageError("--c must be positive");

    Table t{{"lambda", "rho", "tau", "Q", "n", "ell", "blocks", "delta", "eps", "m", "key_bits", "bad1_bound",
             "bad2_tau_term", "delta_prime", "learned_set_bound", "key_leakage_bound", "prf_completeness",
             "prf_soundness_bound", "c", "tau_from_c", "tau_term_from_c", "delta_plus_mu_floor_from_c"},
            {}};
    for (std::size_t lambda : lambdas)
        for (double rho : rhos)
            for (double tau : taus)
                for (std::size_t q : qs)
                    for (std::size_t ell : ells)
                        for (std::size_t b : blocks) {
                            if (ell == 0 || b == 0) throw UsageError("--ell and --blocks must be positive");
                            const NoiseParameter noise(rho);
                            std::vector<std::size_t> ns;
                            if (cfg.n.empty()) ns.push_back(2 * ell * b);
                            for (unsigned v : cfg.n) ns.push_back(v);
                            for (std::size_t n : ns) {
                                const std::size_t key_bits = cfg.key_bits.value_or(lambda);
                                std::vector<Cell> row{static_cast<std::int64_t>(lambda), rho, tau,
                                                      static_cast<std::int64_t>(q), static_cast<std::int64_t>(n),
                                                      static_cast<std::int64_t>(ell), static_cast<std::int64_t>(b),
                                                      cfg.delta, cfg.eps, static_cast<std::int64_t>(cfg.m),
                                                      static_cast<std::int64_t>(key_bits), bad1_bound(q, tau, lambda),
                                                      bad2_tau_term(q, tau, noise),
                                                      theoretical_delta_prime(cfg.delta, q, tau, noise, cfg.eps, n, lambda),
                                                      static_cast<std::int64_t>(learned_set_bound(q, lambda, tau)),
                                                      key_leakage_bound(cfg.eps, n, cfg.m, key_bits),
                                                      closed_form_completeness(noise, ell, b),
                                                      closed_form_soundness_bound(ell, b)};
                                if (cfg.c) {
                                    // tau = lambda^{-c}: the tau-term becomes lambda^{-(c/2)(1-rho^2)/(1+rho^2)}
                                    const double l = static_cast<double>(lambda);
                                    const double term = std::pow(l, -*cfg.c * collision_exponent(noise));
                                    const double qd = static_cast<double>(q);
                                    row.insert(row.end(), {*cfg.c, std::pow(l, -*cfg.c), term, 1.0 - qd * qd * term});
                                } else {
                                    row.insert(row.end(), {std::nan(""), std::nan(""), std::nan(""), std::nan("")});
                                }
                                t.rows.push_back(std::move(row));
                            }
                        }
    return {kOk, render(cfg, t), {}};
}

// ---- dispatch ----------------------------------------------------------------

inline Output run(const RunConfig& cfg) {
    if (cfg.format != "csv" && cfg.format != "json") throw UsageError("--format must be csv or json");
    if (cfg.command == "hyper") return cmd_hyper(cfg);
    if (cfg.command == "prc-eval") return cmd_prc_eval(cfg);
    if (cfg.command == "compile") return cmd_compile(cfg);
    if (cfg.command == "bounds") return cmd_bounds(cfg);
    throw UsageError("unknown command '" + cfg.command + "'");
}

/// Parses argv into a RunConfig. Returns nullopt after printing help.
inline std::optional<RunConfig> parse(int argc, const char* const* argv, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Pseudorandom-code laboratory: exact verifiers and seeded experiments"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "root seed");
        sub->add_option("--trials", cfg.trials, "trials (instances for hyper)");
        sub->add_option("--out", cfg.out, "output file (default: stdout)");
        sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--n", cfg.n, "dimensions / codeword lengths")->delimiter(',');
        sub->add_option("--rho", cfg.rho, "noise correlations")->delimiter(',');
        sub->add_option("--tau", cfg.tau, "heaviness thresholds")->delimiter(',');
        sub->add_option("--lambda", cfg.lambda, "security parameters")->delimiter(',');
        sub->add_option("--ell", cfg.ell, "block seed lengths")->delimiter(',');
        sub->add_option("--blocks", cfg.blocks, "block counts")->delimiter(',');
        sub->add_option("--q-bound", cfg.q_bound, "query bounds")->delimiter(',');
    };
    auto* hyper = app.add_subcommand("hyper", "hypercontractivity and collision-bound sweeps");
    common(hyper);
    hyper->add_option("--n-cap", cfg.n_cap, "largest admissible --n");
    hyper->add_option("--pairs", cfg.pairs, "collision-bound instances");

    auto* eval = app.add_subcommand("prc-eval", "PRF-based PRC: measured vs closed-form");
    common(eval);
    eval->add_flag("--no-sim{false}", cfg.simulate, "closed forms only");

    auto* compile = app.add_subcommand("compile", "oracle-removal compiler sweep");
    common(compile);
    compile->add_option("--scheme", cfg.scheme, "prf-prc, oracle-free or prefix-query");
    compile->add_option("--heavy-mode", cfg.heavy_mode, "auto, exact or mc");
    compile->add_option("--eps", cfg.eps, "pseudorandomness error used in delta'");

    auto* bounds = app.add_subcommand("bounds", "closed-form bounds");
    common(bounds);
    bounds->add_option("--delta", cfg.delta, "completeness error of the input scheme");
    bounds->add_option("--eps", cfg.eps, "pseudorandomness error");
    bounds->add_option("--m", cfg.m, "sample count in the key-leakage bound");
    bounds->add_option("--key-bits", cfg.key_bits, "key length in the key-leakage bound (default lambda)");
    bounds->add_option("--c", cfg.c, "exponent for tau = lambda^-c");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        std::ostringstream out;
        app.exit(e, out, err);
        std::cout << out.str();
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    cfg.command = app.get_subcommands().front()->get_name();
    return cfg;
}

/// Runs a parsed config and writes the report. Usage errors leave no file.
inline int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Output result;
    try {
        result = run(cfg);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }
    if (!result.message.empty()) err << result.message << '\n';
    if (cfg.out.empty()) {
        out << result.text;
    } else {
        std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
        if (!file) {
            err << "cannot open " << cfg.out << " for writing\n";
            return kUsage;
        }
        file << result.text;
    }
    return result.exit_code;
}

} // namespace prclab::cli
