#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace paracirc {

// Words over {0,1} are plain strings of '0'/'1' characters; position 0 is the
// leftmost character. The empty string is a legal word.
using bitstring = std::string;

bool is_bits(const bitstring& w);

// Canonical binary numeral: most significant bit first, no leading zeros,
// zero is the single digit "0".
bitstring nat_to_bits(std::uint64_t v);

// Inverse of nat_to_bits. In strict mode non-canonical numerals (leading
// zeros) are rejected; in lenient mode they are normalized. Empty strings,
// non-binary characters and values wider than 64 bits are always rejected.
std::optional<std::uint64_t> bits_to_nat(const bitstring& b, bool strict = true);

bool is_canonical_numeral(const bitstring& b);

// Number of digits of the canonical numeral, i.e. max(1, floor(log2 v) + 1).
std::uint64_t numeral_width(std::uint64_t v);

// Smallest c with 2^c >= n (0 for n <= 1).
std::uint64_t ceil_log2(std::uint64_t n);

bitstring ones(std::uint64_t n);

}  // namespace paracirc
