#include "paracirc/conlang.hpp"

#include <functional>

namespace paracirc {

std::optional<connection_word> connection_word::decode(const bitstring& w) {
  auto items = decode_list(w);
  if (!items || items->size() != 5) return std::nullopt;
  return connection_word{(*items)[0], (*items)[1], (*items)[2], (*items)[3], (*items)[4]};
}

connection_word type_word(gate_id g, std::uint64_t code, std::uint64_t n, std::uint64_t k) {
  return {nat_to_bits(g), nat_to_bits(code), "", ones(n), ones(k)};
}

connection_word edge_word(gate_id g, gate_id a, std::uint64_t p, std::uint64_t n,
                          std::uint64_t k) {
  return {nat_to_bits(g), nat_to_bits(a), nat_to_bits(p), ones(n), ones(k)};
}

bool decide_direct_fields(const family_oracle& o, const bitstring& g, const bitstring& a,
                          const bitstring& p, std::uint64_t n, std::uint64_t k,
                          bool strict) {
  auto gv = bits_to_nat(g, strict);
  if (!gv) return false;
  auto t = o.type_of(*gv, n, k);
  if (!t) return false;
  auto av = bits_to_nat(a, strict);
  if (!av) return false;
  if (p.empty()) {
    auto code = type_code(*t);
    return code && *av == *code;
  }
  auto pv = bits_to_nat(p, strict);
  if (!pv) return false;
  auto target = o.pth_input(*gv, *pv, n, k);
  return target && *target == *av;
}

bool decide_direct(const family_oracle& o, const bitstring& w, bool strict) {
  auto cw = connection_word::decode(w);
  if (!cw) return false;
  return decide_direct_fields(o, cw->g, cw->a, cw->p, cw->z.size(), cw->zp.size(), strict);
}

bool decide_binary_direct(const family_oracle& o, const bitstring& w, bool strict) {
  auto cw = connection_word::decode(w);
  if (!cw) return false;
  auto n = bits_to_nat(cw->z, strict);
  auto k = bits_to_nat(cw->zp, strict);
  if (!n || !k) return false;
  return decide_direct_fields(o, cw->g, cw->a, cw->p, *n, *k, strict);
}

bool decide_extended_naive(const family_oracle& o, const bitstring& w, bool strict) {
  auto cw = connection_word::decode(w);
  if (!cw) return false;
  std::uint64_t n = cw->z.size(), k = cw->zp.size();
  if (cw->p.empty())
    return decide_direct_fields(o, cw->g, cw->a, cw->p, n, k, strict);
  auto steps = decode_list(cw->p);
  if (!steps || steps->empty()) return false;
  auto gv = bits_to_nat(cw->g, strict);
  if (!gv || !o.type_of(*gv, n, k)) return false;
  gate_id cur = *gv;
  for (const auto& step : *steps) {
    auto pv = bits_to_nat(step, strict);
    if (!pv) return false;
    auto next = o.pth_input(cur, *pv, n, k);
    if (!next) return false;
    cur = *next;
  }
  auto av = bits_to_nat(cw->a, strict);
  return av && *av == cur;
}

std::vector<connection_word> enumerate_direct_words(const family_oracle& o,
                                                    std::uint64_t n, std::uint64_t k,
                                                    const materialize_limits& lim) {
  std::vector<connection_word> words;
  for (gate_id g : oracle_gates(o, n, k, lim)) {
    auto code = type_code(*o.type_of(g, n, k));
    if (code) words.push_back(type_word(g, *code, n, k));
    auto preds = oracle_preds(o, g, n, k, lim);
    for (std::uint64_t p = 0; p < preds.size(); ++p)
      words.push_back(edge_word(g, preds[p], p, n, k));
  }
  return words;
}

void for_each_path(const circuit& c, std::size_t max_len,
                   const std::function<void(gate_id, const std::vector<std::uint64_t>&,
                                            gate_id)>& sink) {
  std::vector<std::uint64_t> steps;
  std::function<void(gate_id, gate_id)> walk = [&](gate_id start, gate_id cur) {
    if (!steps.empty()) sink(start, steps, cur);
    if (steps.size() == max_len) return;
    const auto& preds = c.gates.at(cur).preds;
    for (std::uint64_t p = 0; p < preds.size(); ++p) {
      steps.push_back(p);
      walk(start, preds[p]);
      steps.pop_back();
    }
  };
  for (const auto& [g, _] : c.gates) walk(g, g);
}

}  // namespace paracirc
