#pragma once

#include "prclab/errors.hpp"
#include "prclab/rng.hpp"

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace prclab {

/// Fixed-length bit vector. Bit 0 is the first (most significant) bit; it is
/// stored in the top bit of word 0. Unused trailing bits of the last word are
/// kept zero so that word-wise equality and hashing are exact.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

    /// Parses a string of '0'/'1' characters.
    static BitString from_bits(std::string_view bits) {
        BitString out(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == '1') {
                out.set(i, true);
            } else if (bits[i] != '0') {
                throw ParseError("bit string contains a character other than 0/1");
            }
        }
        return out;
    }

    /// The low `width` bits of `value`, most significant first.
    static BitString from_uint(std::uint64_t value, std::size_t width) {
        if (width > 64) throw ParameterError("from_uint width exceeds 64");
        BitString out(width);
        if (width > 0) out.words_[0] = (width == 64 ? value : (value & ((1ULL << width) - 1))) << (64 - width);
        return out;
    }

    static BitString random(std::size_t n, Rng& rng) {
        BitString out(n);
        for (auto& w : out.words_) w = rng();
        out.clear_tail();
        return out;
    }

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    std::span<const std::uint64_t> words() const noexcept { return words_; }

    bool operator[](std::size_t i) const noexcept { return (words_[i >> 6] >> (63 - (i & 63))) & 1U; }

    bool at(std::size_t i) const {
        if (i >= size_) throw DimensionMismatch("bit index out of range");
        return (*this)[i];
    }

    void set(std::size_t i, bool v) noexcept {
        const std::uint64_t mask = 1ULL << (63 - (i & 63));
        if (v) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }

    /// Overwrites bits [pos, pos + width) with the low `width` bits of value,
    /// most significant first.
    void set_uint(std::size_t pos, std::uint64_t value, std::size_t width) noexcept {
        for (std::size_t b = 0; b < width; ++b) set(pos + b, (value >> (width - 1 - b)) & 1U);
    }

    void flip(std::size_t i) noexcept { words_[i >> 6] ^= 1ULL << (63 - (i & 63)); }

    /// XOR a whole 64-bit mask into word w. Tail bits of the mask must be zero
    /// for the last word.
    void xor_word(std::size_t w, std::uint64_t mask) noexcept { words_[w] ^= mask; }

    /// Interprets the string as an unsigned integer (first bit most significant).
    std::uint64_t to_uint() const {
        if (size_ > 64) throw ParameterError("to_uint on more than 64 bits");
        if (size_ == 0) return 0;
        return words_[0] >> (64 - size_);
    }

    BitString slice(std::size_t pos, std::size_t len) const {
        if (pos > size_ || len > size_ - pos) throw DimensionMismatch("slice out of range");
        BitString out(len);
        for (std::size_t i = 0; i < len; ++i) out.set(i, (*this)[pos + i]);
        return out;
    }

    /// Appends the bits of `tail`.
    BitString& append(const BitString& tail) {
        const std::size_t old = size_;
        size_ += tail.size_;
        words_.resize((size_ + 63) / 64, 0);
        if ((old & 63) == 0) {
            std::copy(tail.words_.begin(), tail.words_.end(), words_.begin() + static_cast<std::ptrdiff_t>(old >> 6));
        } else {
            const unsigned shift = old & 63;
            for (std::size_t k = 0; k < tail.words_.size(); ++k) {
                const std::uint64_t w = tail.words_[k];
                words_[(old >> 6) + k] |= w >> shift;
                if ((old >> 6) + k + 1 < words_.size()) words_[(old >> 6) + k + 1] |= w << (64 - shift);
            }
        }
        return *this;
    }

    /// Appends the low `width` bits of `value`, most significant first.
    BitString& append_uint(std::uint64_t value, std::size_t width) { return append(from_uint(value, width)); }

    friend BitString operator+(BitString head, const BitString& tail) { return head.append(tail); }

    friend BitString operator^(const BitString& a, const BitString& b) {
        if (a.size_ != b.size_) throw DimensionMismatch("xor of bit strings with different lengths");
        BitString out = a;
        for (std::size_t k = 0; k < out.words_.size(); ++k) out.words_[k] ^= b.words_[k];
        return out;
    }

    std::size_t weight() const noexcept {
        std::size_t w = 0;
        for (auto word : words_) w += static_cast<std::size_t>(std::popcount(word));
        return w;
    }

    friend std::size_t hamming_distance(const BitString& a, const BitString& b) {
        if (a.size_ != b.size_) throw DimensionMismatch("hamming distance of bit strings with different lengths");
        std::size_t d = 0;
        for (std::size_t k = 0; k < a.words_.size(); ++k) d += static_cast<std::size_t>(std::popcount(a.words_[k] ^ b.words_[k]));
        return d;
    }

    friend bool operator==(const BitString&, const BitString&) = default;

    friend bool operator<(const BitString& a, const BitString& b) {
        if (a.size_ != b.size_) return a.size_ < b.size_;
        return a.words_ < b.words_;
    }

    std::string to_bits() const {
        std::string s(size_, '0');
        for (std::size_t i = 0; i < size_; ++i)
            if ((*this)[i]) s[i] = '1';
        return s;
    }

    /// "<length>:<hex>", most significant nibble first; the final nibble is
    /// zero-padded on the right when the length is not a multiple of four.
    std::string to_hex() const {
        static constexpr char digits[] = "0123456789abcdef";
        std::string s = std::to_string(size_);
        s.push_back(':');
        const std::size_t nibbles = (size_ + 3) / 4;
        for (std::size_t k = 0; k < nibbles; ++k) {
            const std::uint64_t w = words_[k >> 4];
            s.push_back(digits[(w >> (60 - 4 * (k & 15))) & 0xF]);
        }
        return s;
    }

    static BitString from_hex(std::string_view text) {
        const auto colon = text.find(':');
        if (colon == std::string_view::npos || colon == 0) throw ParseError("hex bit string lacks a length prefix");
        std::size_t n = 0;
        for (char c : text.substr(0, colon)) {
            if (c < '0' || c > '9') throw ParseError("bad length prefix in hex bit string");
            n = n * 10 + static_cast<std::size_t>(c - '0');
        }
        const auto hex = text.substr(colon + 1);
        if (hex.size() != (n + 3) / 4) throw ParseError("hex digit count does not match declared length");
        BitString out(n);
        for (std::size_t k = 0; k < hex.size(); ++k) {
            const char c = hex[k];
            std::uint64_t v = 0;
            if (c >= '0' && c <= '9') {
                v = static_cast<std::uint64_t>(c - '0');
            } else if (c >= 'a' && c <= 'f') {
                v = static_cast<std::uint64_t>(c - 'a' + 10);
            } else if (c >= 'A' && c <= 'F') {
                v = static_cast<std::uint64_t>(c - 'A' + 10);
            } else {
                throw ParseError("non-hex digit in bit string");
            }
            out.words_[k >> 4] |= v << (60 - 4 * (k & 15));
        }
        const std::uint64_t tail = out.words_.empty() ? 0 : out.words_.back();
        out.clear_tail();
        if (!out.words_.empty() && out.words_.back() != tail) throw ParseError("nonzero padding bits in hex bit string");
        return out;
    }

    std::size_t hash() const noexcept {
        std::uint64_t h = mix64(size_ + 0x2545f4914f6cdd1dULL);
        for (auto w : words_) h = mix64(h ^ w);
        return static_cast<std::size_t>(h);
    }

private:
    void clear_tail() noexcept {
        if ((size_ & 63) != 0) words_.back() &= ~0ULL << (64 - (size_ & 63));
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace prclab

template <>
struct std::hash<prclab::BitString> {
    std::size_t operator()(const prclab::BitString& b) const noexcept { return b.hash(); }
};
