#include "paracirc/codec.hpp"

#include <stdexcept>

namespace paracirc {

bitstring encode_item(const bitstring& item) {
  bitstring out;
  for (char c : nat_to_bits(item.size())) {
    out.push_back(c);
    out.push_back(c);
  }
  out += "01";
  out += item;
  return out;
}

bitstring encode_list(const std::vector<bitstring>& items) {
  bitstring out;
  for (const auto& item : items) out += encode_item(item);
  return out;
}

std::optional<std::vector<bitstring>> decode_list(const bitstring& w) {
  if (!is_bits(w)) return std::nullopt;
  std::vector<bitstring> items;
  std::size_t pos = 0;
  while (pos < w.size()) {
    bitstring digits;
    for (;;) {
      if (pos + 2 > w.size()) return std::nullopt;
      char a = w[pos], b = w[pos + 1];
      pos += 2;
      if (a == '0' && b == '1') break;  // separator
      if (a != b) return std::nullopt;
      digits.push_back(a);
      if (digits.size() > 64) return std::nullopt;
    }
    if (!is_canonical_numeral(digits)) return std::nullopt;
    auto len = bits_to_nat(digits);
    if (!len || *len > w.size() - pos) return std::nullopt;
    items.push_back(w.substr(pos, *len));
    pos += *len;
  }
  return items;
}

bitstring project(const bitstring& w, std::uint64_t i) {
  auto items = decode_list(w);
  if (items && i < items->size()) return (*items)[i];
  return "0";
}

std::uint64_t encode_tuple_id(const std::vector<std::uint64_t>& parts) {
  std::vector<bitstring> items;
  items.reserve(parts.size());
  for (auto p : parts) items.push_back(nat_to_bits(p));
  bitstring enc = encode_list(items);
  if (enc.size() > 63) throw std::overflow_error("tuple id wider than 63 bits");
  auto v = bits_to_nat(enc);
  if (!v) throw std::logic_error("tuple encoding not a numeral");
  return *v;
}

std::optional<std::vector<std::uint64_t>> decode_tuple_id(std::uint64_t id) {
  bitstring enc = nat_to_bits(id);
  if (enc.size() < 2 || enc[0] != '1' || enc[1] != '1') return std::nullopt;
  auto items = decode_list(enc);
  if (!items || items->empty()) return std::nullopt;
  std::vector<std::uint64_t> parts;
  for (const auto& item : *items) {
    auto v = bits_to_nat(item);
    if (!v) return std::nullopt;
    parts.push_back(*v);
  }
  return parts;
}

}  // namespace paracirc
