#pragma once

#include <cstdint>

#include "paracirc/circuit.hpp"
#include "paracirc/machine.hpp"

namespace paracirc {

struct cap_exceeded : circuit_error {
  using circuit_error::circuit_error;
};

// Compiles a random-access machine capped at t steps into a constant-depth
// circuit on n inputs: one output or over 2^{2t} and gates, one per response
// string r over the two-bit codes {00, 01, 10, 11}. Input m < t of the r-th
// and gate is wired from the branch run of the machine with scripted
// responses r:
//   - constant 0 when slot m holds the invalid code 11,
//   - x_i / not x_i / constant 0 when the m-th query asked for address i < n
//     and the slot holds 1 / 0 / out-of-range,
//   - constant 1 when the address was >= n (or no number) and the slot holds
//     out-of-range, constant 0 when it holds 0 or 1,
//   - constant 1 when the run makes no m-th query.
// The final input is a constant carrying the branch verdict. For every x of
// length n, the circuit outputs 1 iff the machine accepts x within t steps.
circuit compile_ratm(const machine_desc& m, std::uint64_t t, std::uint64_t n,
                     std::uint64_t max_gates = 1ull << 20, bool parallel = true);

}  // namespace paracirc
