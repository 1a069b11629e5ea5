#include "paracirc/ratm_compile.hpp"

#include "paracirc/kernels.hpp"

namespace paracirc {

circuit compile_ratm(const machine_desc& m, std::uint64_t t, std::uint64_t n,
                     std::uint64_t max_gates, bool parallel) {
  if (!m.is_ratm()) throw std::invalid_argument("compile_ratm needs a query state");
  if (t > 12) throw cap_exceeded("step budget too large to branch over");
  std::uint64_t branches = 1ull << (2 * t);
  if (branches + 2 * n + 4 > max_gates)
    throw cap_exceeded("compiled circuit would exceed " + std::to_string(max_gates) +
                       " gates");

  auto outcomes = parallel ? kernels::simulate_branches(m, t)
                           : kernels::simulate_branches_serial(m, t);

  circuit c;
  c.n_inputs = n;
  for (gate_id i = 0; i < n; ++i) c.add(i, gate_type::input);
  gate_id output = n;
  gate_id next = n + 1;
  std::vector<gate_id> and_gates;
  and_gates.reserve(branches);
  for (std::uint64_t r = 0; r < branches; ++r) and_gates.push_back(next++);

  // shared subcircuits: one not gate per input, one constant of each value
  gate_id const0 = next++;
  gate_id const1 = next++;
  c.add(const0, gate_type::const0);
  c.add(const1, gate_type::const1);
  std::vector<gate_id> not_of(n, 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    not_of[i] = next++;
    c.add(not_of[i], gate_type::g_not, {i});
  }

  for (std::uint64_t r = 0; r < branches; ++r) {
    const auto& branch = outcomes[r];
    std::vector<gate_id> preds;
    preds.reserve(t + 1);
    for (std::uint64_t slot = 0; slot < t; ++slot) {
      std::uint64_t code = r >> (2 * (t - 1 - slot)) & 3;
      if (code == 3) {
        preds.push_back(const0);
        continue;
      }
      if (slot >= branch.addresses.size()) {
        preds.push_back(const1);  // no such query in this branch
        continue;
      }
      auto addr = branch.addresses[slot];
      bool in_range = addr && *addr < n;
      if (in_range) {
        preds.push_back(code == 1   ? gate_id(*addr)
                        : code == 0 ? not_of[*addr]
                                    : const0);  // a real bit is never out of range
      } else {
        preds.push_back(code == 2 ? const1 : const0);
      }
    }
    preds.push_back(branch.accept ? const1 : const0);
    c.add(and_gates[r], gate_type::g_and, std::move(preds));
  }
  c.add(output, gate_type::g_or, std::move(and_gates));
  c.outputs = {output};
  return c;
}

}  // namespace paracirc
