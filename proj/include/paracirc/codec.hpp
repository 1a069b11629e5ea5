#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "paracirc/bits.hpp"

namespace paracirc {

// Self-delimiting list encoding. Each item x is written as delta(|x|) 01 x,
// where delta doubles every digit of the canonical binary numeral of |x|
// (0 -> 00, 1 -> 11) and "01" acts as a separator. The empty item has
// delta(0) = "00". A list is the concatenation of its encoded items; the
// empty list encodes to the empty string.
bitstring encode_item(const bitstring& item);
bitstring encode_list(const std::vector<bitstring>& items);

// Exact inverse of encode_list; nullopt when w is not an encoding (bad delta
// digits, non-canonical delta, missing separator, truncated payload).
std::optional<std::vector<bitstring>> decode_list(const bitstring& w);

// Total projection: item i when w encodes a list with more than i items,
// "0" otherwise.
bitstring project(const bitstring& w, std::uint64_t i);

// Gate-number embedding of flat tuples of naturals: the tuple's components
// are written as canonical numerals, list-encoded, and the encoding is read
// back as a binary number. Numeral items make the encoding start with "11",
// so the map is injective and every tuple id is at least min_tuple_id.
std::uint64_t encode_tuple_id(const std::vector<std::uint64_t>& parts);
std::optional<std::vector<std::uint64_t>> decode_tuple_id(std::uint64_t id);

inline constexpr std::uint64_t min_tuple_id = 858;  // encode_tuple_id({0, 0})

}  // namespace paracirc
