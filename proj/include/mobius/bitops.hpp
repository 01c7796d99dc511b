#pragma once

#include <bit>
#include <cstdint>
#include <string>

#include "mobius/errors.hpp"

namespace mobius {

// Outcome words hold one measured variable per bit: variable i occupies bit i,
// so subset masks and outcome words share the same indexing. Bitstrings are
// plain binary numerals, most significant variable leftmost (variable 1, the
// lowest index, is the rightmost character).

inline constexpr int kMinVariables = 2;
inline constexpr int kMaxVariables = 16;

inline int outcome_bit(std::uint32_t word, int var) {
    return static_cast<int>((word >> var) & 1u);
}

inline std::uint32_t with_outcome_bit(std::uint32_t word, int var, int value) {
    const std::uint32_t m = 1u << var;
    return value ? (word | m) : (word & ~m);
}

enum class BitOrder {
    MsbFirst,  // leftmost character is variable n (the file-format default)
    LsbFirst,  // leftmost character is variable 1; strings read reversed
};

inline std::string format_outcome(std::uint32_t word, int n, BitOrder order = BitOrder::MsbFirst) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i) {
        const int pos = order == BitOrder::MsbFirst ? n - 1 - i : i;
        s[static_cast<std::size_t>(pos)] = outcome_bit(word, i) ? '1' : '0';
    }
    return s;
}

inline std::uint32_t parse_outcome(const std::string& s, int n, BitOrder order = BitOrder::MsbFirst) {
    if (static_cast<int>(s.size()) != n) {
        throw DataError("invariant: bitstring \"" + s + "\" does not have width " + std::to_string(n));
    }
    std::uint32_t word = 0;
    for (int pos = 0; pos < n; ++pos) {
        const char c = s[static_cast<std::size_t>(pos)];
        if (c != '0' && c != '1') {
            throw DataError("parse-error: bitstring \"" + s + "\" contains a non-binary character");
        }
        const int var = order == BitOrder::MsbFirst ? n - 1 - pos : pos;
        if (c == '1') {
            word = with_outcome_bit(word, var, 1);
        }
    }
    return word;
}

inline int parity(std::uint32_t word) {
    return std::popcount(word) & 1;
}

// Subset masks: "123" style keys used in reports, 1-based sorted variables.
// Comma-separated once two-digit variables appear, so keys stay unambiguous.
inline std::string subset_key(std::uint32_t subset) {
    const bool wide = (subset >> 9) != 0;
    std::string key;
    for (int i = 0; i < kMaxVariables; ++i) {
        if (subset & (1u << i)) {
            if (wide && !key.empty()) {
                key += ',';
            }
            key += std::to_string(i + 1);
        }
    }
    return key;
}

}  // namespace mobius
