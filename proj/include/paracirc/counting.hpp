#pragma once

#include <cstdint>

namespace paracirc {

// Elementary tape operations (cell writes and head moves) a faithful two-tape
// counter machine spends counting in binary from N to N+M. The value tape is
// incremented M times, a countdown tape initialized to M is decremented
// alongside, and the work of setting up the two tapes is not counted.
std::uint64_t count_binary_steps(std::uint64_t n, std::uint64_t m);

// Breakdown used by the amortization checks.
struct counting_trace {
  std::uint64_t writes = 0;
  std::uint64_t moves = 0;
  std::uint64_t total() const { return writes + moves; }
};
counting_trace count_binary_trace(std::uint64_t n, std::uint64_t m);

}  // namespace paracirc
