#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "paracirc/codec.hpp"
#include "paracirc/oracle.hpp"

namespace paracirc {

// A five-item word <G, a, p, z, z'> of a connection language. G and a are
// numerals (a is a type code when p is empty), p is empty, a position
// numeral, or an encoded path, and only the lengths of z and z' matter.
struct connection_word {
  bitstring g, a, p, z, zp;

  bitstring encode() const { return encode_list({g, a, p, z, zp}); }
  static std::optional<connection_word> decode(const bitstring& w);

  bool operator==(const connection_word&) const = default;
};

connection_word type_word(gate_id g, std::uint64_t code, std::uint64_t n, std::uint64_t k);
connection_word edge_word(gate_id g, gate_id a, std::uint64_t p, std::uint64_t n,
                          std::uint64_t k);

// Membership in L_D(C): w = <G, a, p, z, z'> with n = |z|, k = |z'|; either
// p is empty and a is the type code of gate G, or p is a position numeral
// and the p-th gate feeding into G is numbered a. In strict mode numerals
// with leading zeros reject; lenient mode normalizes them.
bool decide_direct(const family_oracle& o, const bitstring& w, bool strict = true);

// Membership in L_BD(C): <G, a, p, n, k> with n and k written in binary;
// equivalent to decide_direct on <G, a, p, 1^n, 1^k>.
bool decide_binary_direct(const family_oracle& o, const bitstring& w, bool strict = true);

// Membership in L_E(C): nonempty p decodes to a path <p1, ..., pm>, and
// walking the positions from G must end at gate a.
bool decide_extended_naive(const family_oracle& o, const bitstring& w, bool strict = true);

// Shared field-level core of the three deciders.
bool decide_direct_fields(const family_oracle& o, const bitstring& g, const bitstring& a,
                          const bitstring& p, std::uint64_t n, std::uint64_t k,
                          bool strict);

// All accepted direct words with representative padding z = 1^n, z' = 1^k and
// canonical numerals, in deterministic order.
std::vector<connection_word> enumerate_direct_words(const family_oracle& o,
                                                    std::uint64_t n, std::uint64_t k,
                                                    const materialize_limits& lim = {});

// Every path of 1..max_len steps in the circuit, reported through the sink as
// (start gate, step positions, end gate).
void for_each_path(const circuit& c, std::size_t max_len,
                   const std::function<void(gate_id, const std::vector<std::uint64_t>&,
                                            gate_id)>& sink);

}  // namespace paracirc
