#include "paracirc/bits.hpp"

#include <bit>

namespace paracirc {

bool is_bits(const bitstring& w) {
  for (char c : w)
    if (c != '0' && c != '1') return false;
  return true;
}

bitstring nat_to_bits(std::uint64_t v) {
  if (v == 0) return "0";
  bitstring out;
  for (int i = 63; i >= 0; --i)
    if (v >> i & 1 || !out.empty()) out.push_back(char('0' + (v >> i & 1)));
  return out;
}

std::optional<std::uint64_t> bits_to_nat(const bitstring& b, bool strict) {
  if (b.empty() || !is_bits(b)) return std::nullopt;
  std::size_t first = b.find('1');
  if (first == bitstring::npos) first = b.size() - 1;  // all zeros: value 0
  if (strict && first != 0) return std::nullopt;
  if (b.size() - first > 64) return std::nullopt;
  std::uint64_t v = 0;
  for (std::size_t i = first; i < b.size(); ++i) v = v << 1 | (b[i] == '1');
  return v;
}

bool is_canonical_numeral(const bitstring& b) {
  if (b.empty() || !is_bits(b)) return false;
  return b.size() == 1 || b[0] == '1';
}

std::uint64_t numeral_width(std::uint64_t v) {
  return v == 0 ? 1 : std::uint64_t(std::bit_width(v));
}

std::uint64_t ceil_log2(std::uint64_t n) {
  return n <= 1 ? 0 : std::uint64_t(std::bit_width(n - 1));
}

bitstring ones(std::uint64_t n) { return bitstring(n, '1'); }

}  // namespace paracirc
