#pragma once

// Simulated random oracles R : {0,1}^* -> {0,1}.
//
// Responses of a LazyOracle are a keyed hash of (seed, query), so two
// oracles with the same seed and pinned assignments are the same function.
// Queries of different lengths hash into disjoint namespaces.

#include "prclab/bitstring.hpp"
#include "prclab/errors.hpp"
#include "prclab/rng.hpp"

#include <cstddef>
#include <functional>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace prclab {

class Oracle {
public:
    virtual ~Oracle() = default;
    virtual bool query(const BitString& q) = 0;
};

/// Insertion-ordered query -> bit transcript. A query can be recorded once.
class QuerySet {
public:
    using Entry = std::pair<BitString, bool>;

    /// Returns true if q was new. Recording a different bit for a known query
    /// is an error.
    bool insert(const BitString& q, bool bit) {
        const auto [it, inserted] = index_.try_emplace(q, entries_.size());
        if (!inserted) {
            if (entries_[it->second].second != bit) throw ParameterError("query recorded with two different responses");
            return false;
        }
        entries_.emplace_back(q, bit);
        return true;
    }

    std::optional<bool> find(const BitString& q) const {
        const auto it = index_.find(q);
        if (it == index_.end()) return std::nullopt;
        return entries_[it->second].second;
    }

    bool contains(const BitString& q) const { return index_.contains(q); }

    void merge(const QuerySet& other) {
        for (const auto& [q, b] : other.entries_) insert(q, b);
    }

    void reserve(std::size_t n) {
        entries_.reserve(n);
        index_.reserve(n);
    }

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const std::vector<Entry>& entries() const noexcept { return entries_; }
    auto begin() const noexcept { return entries_.begin(); }
    auto end() const noexcept { return entries_.end(); }

    friend bool operator==(const QuerySet& a, const QuerySet& b) { return a.entries_ == b.entries_; }

    /// One line per entry: "<hex query> <bit>\n", in insertion order.
    void write(std::ostream& out) const {
        for (const auto& [q, b] : entries_) out << q.to_hex() << ' ' << (b ? '1' : '0') << '\n';
    }

    std::string to_text() const {
        std::ostringstream out;
        write(out);
        return out.str();
    }

    static QuerySet read(std::istream& in) {
        QuerySet s;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            const auto space = line.find(' ');
            if (space == std::string::npos || space + 2 != line.size() || (line.back() != '0' && line.back() != '1'))
                throw ParseError("query set line " + std::to_string(lineno) + " is not '<hex> <bit>'");
            s.insert(BitString::from_hex(std::string_view(line).substr(0, space)), line.back() == '1');
        }
        return s;
    }

    static QuerySet from_text(const std::string& text) {
        std::istringstream in(text);
        return read(in);
    }

private:
    std::vector<Entry> entries_;
    std::unordered_map<BitString, std::size_t> index_;
};

/// The simulated random function: one keyed-hash bit per (seed, query).
inline bool oracle_bit(Seed seed, const BitString& q) noexcept {
    std::uint64_t h = mix64(seed.value() ^ mix64(q.size() + 0xd1b54a32d192ed03ULL));
    for (auto w : q.words()) h = mix64(h ^ w) + 0x9e3779b97f4a7c15ULL;
    return (mix64(h) >> 63) != 0;
}

/// Lazily sampled random oracle with a first-query-ordered log. Optional
/// pinned assignments override the hash (consistent resampling).
class LazyOracle final : public Oracle {
public:
    enum class Logging { record, count_only };

    explicit LazyOracle(Seed seed, Logging logging = Logging::record) : seed_(seed), logging_(logging) {}

    LazyOracle(Seed seed, std::shared_ptr<const QuerySet> pinned, Logging logging = Logging::record)
        : seed_(seed), pinned_(std::move(pinned)), logging_(logging) {}

    bool query(const BitString& q) override {
        ++calls_;
        if (logging_ == Logging::record) {
            if (auto known = log_.find(q)) return *known;
        }
        bool bit;
        if (auto fixed = pinned_ ? pinned_->find(q) : std::nullopt) {
            bit = *fixed;
        } else {
            bit = oracle_bit(seed_, q);
        }
        if (logging_ == Logging::record) log_.insert(q, bit);
        return bit;
    }

    /// Distinct queries in first-query order (empty under Logging::count_only).
    const QuerySet& log() const noexcept { return log_; }
    /// Total query calls including repeats.
    std::size_t calls() const noexcept { return calls_; }
    Seed seed() const noexcept { return seed_; }
    const std::shared_ptr<const QuerySet>& pinned() const noexcept { return pinned_; }

    /// The same function with an empty log.
    LazyOracle fork(Logging logging = Logging::record) const { return LazyOracle(seed_, pinned_, logging); }

private:
    Seed seed_;
    std::shared_ptr<const QuerySet> pinned_;
    Logging logging_;
    QuerySet log_;
    std::size_t calls_ = 0;
};

inline bool oracle_query(Oracle& o, const BitString& q) { return o.query(q); }

/// A fresh oracle that agrees with `s` on its domain and is seed-random elsewhere.
inline LazyOracle consistent_resample(std::shared_ptr<const QuerySet> s, Seed seed,
                                      LazyOracle::Logging logging = LazyOracle::Logging::record) {
    return LazyOracle(seed, std::move(s), logging);
}

inline LazyOracle consistent_resample(const QuerySet& s, Seed seed,
                                      LazyOracle::Logging logging = LazyOracle::Logging::record) {
    return consistent_resample(std::make_shared<const QuerySet>(s), seed, logging);
}

/// Answers from a pinned set first, then from an arbitrary base oracle.
class PinnedOracle final : public Oracle {
public:
    PinnedOracle(std::shared_ptr<const QuerySet> pinned, Oracle& base) : pinned_(std::move(pinned)), base_(base) {}

    bool query(const BitString& q) override {
        if (auto fixed = pinned_->find(q)) return *fixed;
        return base_.query(q);
    }

private:
    std::shared_ptr<const QuerySet> pinned_;
    Oracle& base_;
};

/// An explicit function on {0,1}^width for width <= 6, given as a truth
/// table: the response to q is bit q.to_uint() of `table`. Used to enumerate
/// every oracle on a tiny domain.
class TableOracle final : public Oracle {
public:
    TableOracle(std::size_t width, std::uint64_t table) : width_(width), table_(table) {
        if (width > 6) throw ParameterError("table oracle domain is limited to 6-bit queries");
    }

    bool query(const BitString& q) override {
        if (q.size() != width_) throw DimensionMismatch("table oracle queried outside its domain");
        return (table_ >> q.to_uint()) & 1U;
    }

private:
    std::size_t width_;
    std::uint64_t table_;
};

/// Passes queries through and records distinct (query, response) pairs.
class RecordingOracle final : public Oracle {
public:
    explicit RecordingOracle(Oracle& inner) : inner_(inner) {}

    bool query(const BitString& q) override {
        const bool bit = inner_.query(q);
        log_.insert(q, bit);
        return bit;
    }

    const QuerySet& log() const noexcept { return log_; }
    QuerySet take_log() { return std::move(log_); }

private:
    Oracle& inner_;
    QuerySet log_;
};

/// Enforces a per-call query budget.
class BoundedOracle final : public Oracle {
public:
    BoundedOracle(Oracle& inner, std::size_t bound) : inner_(inner), bound_(bound) {}

    bool query(const BitString& q) override {
        if (++count_ > bound_)
            throw QueryBoundExceeded("procedure exceeded its declared bound of " + std::to_string(bound_) + " queries");
        return inner_.query(q);
    }

    std::size_t count() const noexcept { return count_; }

private:
    Oracle& inner_;
    std::size_t bound_;
    std::size_t count_ = 0;
};

/// q -> base(prefix || q). With a fixed prefix length, views under distinct
/// prefixes touch disjoint parts of the base oracle.
class SecretPrefixView final : public Oracle {
public:
    SecretPrefixView(Oracle& base, BitString prefix) : base_(base), prefix_(std::move(prefix)) {}

    bool query(const BitString& q) override { return base_.query(prefix_ + q); }

    const BitString& prefix() const noexcept { return prefix_; }

private:
    Oracle& base_;
    BitString prefix_;
};

inline SecretPrefixView secret_prefix(Oracle& base, const BitString& sk) { return {base, sk}; }

/// Oracle handle given to a crypto-oracle machine. Every query costs one step;
/// programs may charge extra work through tick().
class OracleTape {
public:
    OracleTape(Oracle& oracle, std::size_t step_bound) : oracle_(oracle), bound_(step_bound) {}

    bool query(const BitString& q) {
        tick();
        return oracle_.query(q);
    }

    void tick(std::size_t steps = 1) {
        steps_ += steps;
        if (steps_ > bound_) throw StepBoundExceeded("crypto oracle exceeded its step bound of " + std::to_string(bound_));
    }

    std::size_t steps() const noexcept { return steps_; }

private:
    Oracle& oracle_;
    std::size_t bound_;
    std::size_t steps_ = 0;
};

/// A stateless deterministic program with access to a secret random function.
/// `program` must not carry state between calls; the output length is up to
/// the program.
struct CryptoOracleMachine {
    std::string name;
    std::size_t step_bound = 0;
    std::function<BitString(const BitString&, OracleTape&)> program;
};

inline BitString run_crypto_oracle(const CryptoOracleMachine& machine, const BitString& input, Oracle& oracle) {
    OracleTape tape(oracle, machine.step_bound);
    return machine.program(input, tape);
}

} // namespace prclab
