#include "paracirc/kernels.hpp"

#include <stdexcept>

namespace paracirc {
namespace kernels {

std::vector<std::uint8_t> truth_table_serial(const circuit& c) {
  if (c.n_inputs > 24) throw std::invalid_argument("truth table limited to 24 inputs");
  if (c.outputs.size() != 1) throw std::invalid_argument("truth table needs one output");
  evaluator ev(c);
  std::vector<std::uint8_t> table(1ull << c.n_inputs);
  std::vector<std::uint8_t> scratch;
  for (std::uint64_t x = 0; x < table.size(); ++x) table[x] = ev.run_mask(x, scratch);
  return table;
}

std::vector<std::uint8_t> truth_table(const circuit& c) {
  if (c.n_inputs > 24) throw std::invalid_argument("truth table limited to 24 inputs");
  if (c.outputs.size() != 1) throw std::invalid_argument("truth table needs one output");
  evaluator ev(c);
  std::vector<std::uint8_t> table(1ull << c.n_inputs);
  const std::int64_t total = std::int64_t(table.size());
#pragma omp parallel
  {
    std::vector<std::uint8_t> scratch;
#pragma omp for schedule(static)
    for (std::int64_t x = 0; x < total; ++x)
      table[std::size_t(x)] = ev.run_mask(std::uint64_t(x), scratch);
  }
  return table;
}

std::vector<std::uint8_t> decide_direct_batch_serial(const family_oracle& o,
                                                     const std::vector<bitstring>& words,
                                                     bool strict) {
  std::vector<std::uint8_t> out(words.size());
  for (std::size_t i = 0; i < words.size(); ++i)
    out[i] = decide_direct(o, words[i], strict);
  return out;
}

std::vector<std::uint8_t> decide_direct_batch(const family_oracle& o,
                                              const std::vector<bitstring>& words,
                                              bool strict) {
  std::vector<std::uint8_t> out(words.size());
  const std::int64_t total = std::int64_t(words.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < total; ++i)
    out[std::size_t(i)] = decide_direct(o, words[std::size_t(i)], strict);
  return out;
}

namespace {

branch_outcome run_branch(const machine_desc& m, std::uint64_t t, std::uint64_t r) {
  // slot i occupies bits 2i (high digit) and 2i+1 of the 2t-bit string r,
  // read left to right: 00 -> 0, 01 -> 1, 10 -> out-of-range, 11 -> invalid.
  // Invalid slots are fed out-of-range here; the compiler wires constant 0 at
  // those positions, so the branch is dead whatever the run does.
  std::vector<qresponse> script;
  for (std::uint64_t i = 0; i < t; ++i) {
    auto resp = response_from_code(unsigned(r >> (2 * (t - 1 - i)) & 3));
    script.push_back(resp.value_or(qresponse::out_of_range));
  }
  auto res = simulate_ratm_scripted(m, script, t);
  branch_outcome out;
  out.accept = res.v == verdict::accept;
  out.addresses = std::move(res.addresses);
  return out;
}

}  // namespace

std::vector<branch_outcome> simulate_branches_serial(const machine_desc& m,
                                                     std::uint64_t t) {
  std::vector<branch_outcome> out(1ull << (2 * t));
  for (std::uint64_t r = 0; r < out.size(); ++r) out[r] = run_branch(m, t, r);
  return out;
}

std::vector<branch_outcome> simulate_branches(const machine_desc& m, std::uint64_t t) {
  std::vector<branch_outcome> out(1ull << (2 * t));
  const std::int64_t total = std::int64_t(out.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t r = 0; r < total; ++r)
    out[std::size_t(r)] = run_branch(m, t, std::uint64_t(r));
  return out;
}

}  // namespace kernels
}  // namespace paracirc
