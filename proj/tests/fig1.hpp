#pragma once

// Hand-transcribed circuit C_{5,2} of the equality-prefix/suffix family, used
// as a fixed point of reference independent of the library's builders.
//
//   inputs 0..4, output 5 = and(6, 7)
//   6 = or(8, 9)    8 = and(0, 1)   9 = not(12)   12 = or(0, 1)
//   7 = or(10, 11) 10 = and(3, 4)  11 = not(13)   13 = or(3, 4)

#include "paracirc/circuit.hpp"

inline paracirc::circuit fig1_reference() {
  using namespace paracirc;
  circuit c;
  c.n_inputs = 5;
  for (gate_id i = 0; i < 5; ++i) c.add(i, gate_type::input);
  c.add(5, gate_type::g_and, {6, 7});
  c.add(6, gate_type::g_or, {8, 9});
  c.add(7, gate_type::g_or, {10, 11});
  c.add(8, gate_type::g_and, {0, 1});
  c.add(9, gate_type::g_not, {12});
  c.add(10, gate_type::g_and, {3, 4});
  c.add(11, gate_type::g_not, {13});
  c.add(12, gate_type::g_or, {0, 1});
  c.add(13, gate_type::g_or, {3, 4});
  c.outputs = {5};
  return c;
}

// the defining predicate at (5,2): x0 = x1 and x3 = x4
inline bool fig1_semantics(const paracirc::bitstring& x) {
  return x[0] == x[1] && x[3] == x[4];
}
