#include "paracirc/oracle.hpp"

#include <algorithm>
#include <iterator>

#include "paracirc/codec.hpp"

namespace paracirc {

std::vector<gate_id> family_oracle::output_ids(std::uint64_t n, std::uint64_t k) const {
  std::vector<gate_id> out;
  std::uint64_t m = output_count(n, k);
  for (std::uint64_t i = 0; i < m; ++i) out.push_back(n + i);
  return out;
}

std::vector<gate_id> oracle_gates(const family_oracle& o, std::uint64_t n,
                                  std::uint64_t k, const materialize_limits& lim) {
  std::vector<gate_id> gates;
  if (auto hint = o.gate_hint(n, k)) {
    for (gate_id g : *hint)
      if (o.type_of(g, n, k)) gates.push_back(g);
    std::sort(gates.begin(), gates.end());
    gates.erase(std::unique(gates.begin(), gates.end()), gates.end());
    if (gates.size() > lim.max_gates)
      throw bound_exceeded("family has " + std::to_string(gates.size()) +
                           " gates, limit " + std::to_string(lim.max_gates));
    return gates;
  }
  std::uint64_t bound = o.numbering_bound(n, k);
  if (bound > lim.max_gates)
    throw bound_exceeded("numbering bound " + std::to_string(bound) +
                         " exceeds limit " + std::to_string(lim.max_gates));
  for (gate_id g = 0; g < bound; ++g)
    if (o.type_of(g, n, k)) gates.push_back(g);
  return gates;
}

std::vector<gate_id> oracle_preds(const family_oracle& o, gate_id g, std::uint64_t n,
                                  std::uint64_t k, const materialize_limits& lim) {
  std::vector<gate_id> preds;
  for (std::uint64_t p = 0;; ++p) {
    auto a = o.pth_input(g, p, n, k);
    if (!a) break;
    preds.push_back(*a);
    if (preds.size() > lim.max_fanin)
      throw inconsistent_oracle("gate " + std::to_string(g) + " fan-in exceeds " +
                                std::to_string(lim.max_fanin));
  }
  return preds;
}

circuit materialize(const family_oracle& o, std::uint64_t n, std::uint64_t k,
                    const materialize_limits& lim) {
  circuit c;
  c.n_inputs = n;
  c.outputs = o.output_ids(n, k);
  for (gate_id g : oracle_gates(o, n, k, lim)) {
    auto t = o.type_of(g, n, k);
    c.add(g, *t, oracle_preds(o, g, n, k, lim));
    if (o.structured_ids() && g >= n)
      if (auto parts = decode_tuple_id(g)) c.structured.emplace(g, *parts);
  }
  for (const auto& [g, gt] : c.gates)
    for (gate_id p : gt.preds)
      if (!c.has_gate(p))
        throw inconsistent_oracle("gate " + std::to_string(g) +
                                  " has dangling predecessor " + std::to_string(p));
  for (gate_id out : c.outputs)
    if (!c.has_gate(out))
      throw inconsistent_oracle("output gate " + std::to_string(out) + " undefined");
  try {
    evaluator dag_check(c);
    (void)dag_check;
  } catch (const circuit_error& e) {
    throw inconsistent_oracle(e.what());
  }
  if (o.admissible_numbering()) {
    auto report =
        validate_numbering(c, {n, k, std::max(o.numbering_bound(n, k),
                                              n + c.outputs.size())});
    if (!report.empty()) throw inconsistent_oracle("numbering: " + report.front());
  }
  return c;
}

std::vector<std::string> consistency_check(const circuit& c, const family_oracle& o,
                                           std::uint64_t n, std::uint64_t k,
                                           const materialize_limits& lim) {
  std::vector<std::string> report;
  circuit m;
  try {
    m = materialize(o, n, k, lim);
  } catch (const circuit_error& e) {
    report.push_back(std::string("materialize failed: ") + e.what());
    return report;
  }
  if (c.n_inputs != m.n_inputs)
    report.push_back("input count differs: " + std::to_string(c.n_inputs) + " vs " +
                     std::to_string(m.n_inputs));
  if (c.outputs != m.outputs) report.push_back("output lists differ");
  for (const auto& [g, gt] : m.gates) {
    auto it = c.gates.find(g);
    if (it == c.gates.end()) {
      report.push_back("circuit is missing gate " + std::to_string(g));
      continue;
    }
    if (it->second.type != gt.type)
      report.push_back("type mismatch at gate " + std::to_string(g));
    if (it->second.preds != gt.preds) {
      std::size_t pos = 0;
      while (pos < it->second.preds.size() && pos < gt.preds.size() &&
             it->second.preds[pos] == gt.preds[pos])
        ++pos;
      report.push_back("predecessor mismatch at (" + std::to_string(g) + ", position " +
                       std::to_string(pos) + ")");
    }
  }
  for (const auto& [g, _] : c.gates)
    if (!m.has_gate(g)) report.push_back("extra gate " + std::to_string(g));
  return report;
}

circuit_backed_oracle::circuit_backed_oracle(circuit c, std::uint64_t depth_bound)
    : circ_(std::move(c)), depth_bound_(depth_bound) {
  admissible_ = validate_numbering(
                    circ_, {circ_.n_inputs, 0,
                            circ_.gates.empty() ? circ_.n_inputs + circ_.outputs.size()
                                                : std::prev(circ_.gates.end())->first + 1})
                    .empty();
}

std::optional<gate_type> circuit_backed_oracle::type_of(gate_id g, std::uint64_t,
                                                        std::uint64_t) const {
  auto it = circ_.gates.find(g);
  if (it == circ_.gates.end()) return std::nullopt;
  return it->second.type;
}

std::optional<gate_id> circuit_backed_oracle::pth_input(gate_id g, std::uint64_t p,
                                                        std::uint64_t,
                                                        std::uint64_t) const {
  auto it = circ_.gates.find(g);
  if (it == circ_.gates.end() || p >= it->second.preds.size()) return std::nullopt;
  return it->second.preds[p];
}

std::uint64_t circuit_backed_oracle::numbering_bound(std::uint64_t, std::uint64_t) const {
  return circ_.gates.empty() ? 0 : std::prev(circ_.gates.end())->first + 1;
}

std::uint64_t circuit_backed_oracle::output_count(std::uint64_t, std::uint64_t) const {
  return circ_.outputs.size();
}

std::vector<gate_id> circuit_backed_oracle::output_ids(std::uint64_t, std::uint64_t) const {
  return circ_.outputs;
}

std::optional<std::vector<gate_id>> circuit_backed_oracle::gate_hint(std::uint64_t,
                                                                     std::uint64_t) const {
  std::vector<gate_id> ids;
  ids.reserve(circ_.gates.size());
  for (const auto& [g, _] : circ_.gates) ids.push_back(g);
  return ids;
}

}  // namespace paracirc
