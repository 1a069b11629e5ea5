#pragma once

#include <cstdint>
#include <vector>

#include "paracirc/conlang.hpp"
#include "paracirc/machine.hpp"

namespace paracirc {
namespace kernels {

// Data-parallel inner loops, each with a serial reference twin. The parallel
// versions are OpenMP kernels; results are bit-identical to the serial ones.

// Truth table of a single-output circuit: entry x is C(x) with bit i of x
// feeding input gate i. Requires n_inputs <= 24.
std::vector<std::uint8_t> truth_table_serial(const circuit& c);
std::vector<std::uint8_t> truth_table(const circuit& c);

// decide_direct over a batch of words.
std::vector<std::uint8_t> decide_direct_batch_serial(const family_oracle& o,
                                                     const std::vector<bitstring>& words,
                                                     bool strict = true);
std::vector<std::uint8_t> decide_direct_batch(const family_oracle& o,
                                              const std::vector<bitstring>& words,
                                              bool strict = true);

// One scripted run per response string r in R'^t (codes 00, 01, 10, 11 per
// slot), used by the circuit compiler.
struct branch_outcome {
  bool accept = false;
  std::vector<std::optional<std::uint64_t>> addresses;  // per query made
};
std::vector<branch_outcome> simulate_branches_serial(const machine_desc& m,
                                                     std::uint64_t t);
std::vector<branch_outcome> simulate_branches(const machine_desc& m, std::uint64_t t);

}  // namespace kernels
}  // namespace paracirc
