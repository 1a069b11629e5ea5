#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "paracirc/bits.hpp"

namespace paracirc {

using gate_id = std::uint64_t;

enum class gate_type : std::uint8_t { input, g_and, g_or, g_not, const0, const1 };

const char* gate_type_name(gate_type t);
std::optional<gate_type> gate_type_from_name(std::string_view name);

// Type codes used in connection words: and = 0, or = 1, not = 2.
// Input and constant gates carry no code.
std::optional<std::uint64_t> type_code(gate_type t);
std::optional<gate_type> type_from_code(std::uint64_t code);

struct gate {
  gate_type type = gate_type::g_and;
  std::vector<gate_id> preds;
};

struct circuit {
  std::uint64_t n_inputs = 0;
  std::vector<gate_id> outputs;
  std::map<gate_id, gate> gates;
  // Tuple annotations for gates whose number embeds a structured id.
  std::map<gate_id, std::vector<std::uint64_t>> structured;

  bool has_gate(gate_id g) const { return gates.count(g) != 0; }
  void add(gate_id g, gate_type t, std::vector<gate_id> preds = {});
  void add_structured(const std::vector<std::uint64_t>& parts, gate_type t,
                      std::vector<gate_id> preds = {});
};

struct circuit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct input_length_mismatch : circuit_error {
  using circuit_error::circuit_error;
};

// Reusable evaluator over a fixed topological order. Construction checks the
// DAG and predecessor invariants once.
class evaluator {
 public:
  explicit evaluator(const circuit& c);

  std::uint64_t n_inputs() const { return n_inputs_; }
  std::size_t n_gates() const { return types_.size(); }

  // Evaluates with one byte of scratch per gate; returns the output bits.
  void run(const bitstring& x, std::vector<std::uint8_t>& scratch, bitstring& out) const;
  bitstring run(const bitstring& x) const;

  // Single-output fast path with input bits packed into a mask (bit i of the
  // mask is input gate i). Requires n_inputs <= 64 and exactly one output.
  bool run_mask(std::uint64_t x, std::vector<std::uint8_t>& scratch) const;

 private:
  void eval_into(std::vector<std::uint8_t>& scratch) const;

  std::uint64_t n_inputs_ = 0;
  std::vector<gate_type> types_;           // in topological order
  std::vector<std::uint32_t> pred_off_;
  std::vector<std::uint32_t> preds_;       // dense indices into topo order
  std::vector<std::uint32_t> input_pos_;   // topo position of input gate i
  std::vector<std::uint32_t> output_pos_;  // topo positions of outputs
};

bitstring evaluate(const circuit& c, const bitstring& x);

struct circuit_stats_t {
  std::uint64_t size = 0;
  std::uint64_t depth = 0;
  std::map<gate_id, std::uint64_t> levels;
};

// size = gate count, level(g) = length of the longest path from g down to an
// input gate (0 when no such path exists), depth = max level over outputs.
circuit_stats_t stats(const circuit& c);

struct numbering_bound {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::uint64_t bound = 0;
};

// Checks the admissibility conditions: gate numbers unique (structural),
// inputs are exactly 0..n-1, outputs follow at n..n+m-1, and every number is
// below the bound. Violations are returned as messages; empty means ok.
std::vector<std::string> validate_numbering(const circuit& c, const numbering_bound& b);

}  // namespace paracirc
