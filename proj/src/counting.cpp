#include "paracirc/counting.hpp"

#include <vector>

namespace paracirc {

namespace {

// Little-endian tape with the head parked at the least significant cell
// between operations. Cells never written are blank.
struct counter_tape {
  std::vector<char> cells;  // '0'/'1'; index = distance from cell 0
  counting_trace* ops;

  explicit counter_tape(std::uint64_t v, counting_trace* t) : ops(t) {
    while (v) {
      cells.push_back(char('0' + (v & 1)));
      v >>= 1;
    }
  }

  char at(std::size_t pos) const { return pos < cells.size() ? cells[pos] : '_'; }
  void put(std::size_t pos, char c) {
    if (pos >= cells.size()) cells.resize(pos + 1, '0');
    cells[pos] = c;
    ++ops->writes;
  }

  // add one: flip trailing ones, set the first zero/blank, walk back
  void increment() {
    std::size_t pos = 0;
    while (at(pos) == '1') {
      put(pos, '0');
      ++pos;
      ++ops->moves;
    }
    put(pos, '1');
    ops->moves += pos;  // return to cell 0
  }

  // subtract one: flip trailing zeros, clear the first one; hitting a blank
  // means the tape held zero
  bool decrement() {
    std::size_t pos = 0;
    while (at(pos) == '0') {
      put(pos, '1');
      ++pos;
      ++ops->moves;
    }
    if (at(pos) == '_') return false;  // underflow: counting is done
    put(pos, '0');
    ops->moves += pos;
    return true;
  }
};

}  // namespace

counting_trace count_binary_trace(std::uint64_t n, std::uint64_t m) {
  counting_trace ops;
  counter_tape value(n, &ops);      // tape setup is not counted
  counter_tape countdown(m, &ops);
  while (countdown.decrement()) value.increment();
  return ops;
}

std::uint64_t count_binary_steps(std::uint64_t n, std::uint64_t m) {
  return count_binary_trace(n, m).total();
}

}  // namespace paracirc
