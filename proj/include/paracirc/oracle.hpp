#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "paracirc/circuit.hpp"

namespace paracirc {

struct materialize_limits {
  std::uint64_t max_gates = 1ull << 14;
  std::uint64_t max_fanin = 1ull << 14;
};

struct bound_exceeded : circuit_error {
  using circuit_error::circuit_error;
};
struct inconsistent_oracle : circuit_error {
  using circuit_error::circuit_error;
};

// Answer source for gate-type and p-th-input questions of a parameterized
// circuit family, indexed by (n, k). Implementations must be pure: answers
// depend only on the arguments.
class family_oracle {
 public:
  virtual ~family_oracle() = default;

  virtual std::optional<gate_type> type_of(gate_id g, std::uint64_t n,
                                           std::uint64_t k) const = 0;
  virtual std::optional<gate_id> pth_input(gate_id g, std::uint64_t p, std::uint64_t n,
                                           std::uint64_t k) const = 0;
  // Exclusive upper bound on gate numbers in C_{n,k}.
  virtual std::uint64_t numbering_bound(std::uint64_t n, std::uint64_t k) const = 0;
  virtual std::uint64_t depth_bound(std::uint64_t k) const = 0;
  virtual std::uint64_t output_count(std::uint64_t n, std::uint64_t k) const = 0;

  // Output gate numbers; defaults to n..n+m-1 per the admissible numbering.
  virtual std::vector<gate_id> output_ids(std::uint64_t n, std::uint64_t k) const;

  // False for families numbered with structured ids (inputs still occupy
  // 0..n-1, but outputs and internal gates do not form a dense range).
  virtual bool admissible_numbering() const { return true; }

  // True when non-input gate numbers embed tuple ids; materialize then
  // annotates the circuit with the decoded tuples.
  virtual bool structured_ids() const { return false; }

  // Candidate gate list for families whose numbering bound is far larger
  // than the gate count; nullopt means scan 0..bound.
  virtual std::optional<std::vector<gate_id>> gate_hint(std::uint64_t,
                                                        std::uint64_t) const {
    return std::nullopt;
  }
};

// All gates of C_{n,k} in increasing id order (hint or bound scan).
std::vector<gate_id> oracle_gates(const family_oracle& o, std::uint64_t n,
                                  std::uint64_t k, const materialize_limits& lim = {});

// The contiguous predecessor list of gate g.
std::vector<gate_id> oracle_preds(const family_oracle& o, gate_id g, std::uint64_t n,
                                  std::uint64_t k, const materialize_limits& lim = {});

// Builds the explicit circuit: exactly the gates with a defined type, with
// predecessor order given by pth_input. Throws bound_exceeded when the family
// does not fit the limits and inconsistent_oracle on dangling predecessors or
// cycles. For admissibly numbered oracles the result passes validate_numbering.
circuit materialize(const family_oracle& o, std::uint64_t n, std::uint64_t k,
                    const materialize_limits& lim = {});

// Gate-for-gate comparison of c against materialize(o, n, k).
std::vector<std::string> consistency_check(const circuit& c, const family_oracle& o,
                                           std::uint64_t n, std::uint64_t k,
                                           const materialize_limits& lim = {});

// Oracle view of one explicit circuit, used for every (n, k).
class circuit_backed_oracle : public family_oracle {
 public:
  circuit_backed_oracle(circuit c, std::uint64_t depth_bound);

  std::optional<gate_type> type_of(gate_id g, std::uint64_t, std::uint64_t) const override;
  std::optional<gate_id> pth_input(gate_id g, std::uint64_t p, std::uint64_t,
                                   std::uint64_t) const override;
  std::uint64_t numbering_bound(std::uint64_t, std::uint64_t) const override;
  std::uint64_t depth_bound(std::uint64_t) const override { return depth_bound_; }
  std::uint64_t output_count(std::uint64_t, std::uint64_t) const override;
  std::vector<gate_id> output_ids(std::uint64_t, std::uint64_t) const override;
  bool admissible_numbering() const override { return admissible_; }
  std::optional<std::vector<gate_id>> gate_hint(std::uint64_t, std::uint64_t) const override;

  const circuit& circ() const { return circ_; }

 private:
  circuit circ_;
  std::uint64_t depth_bound_;
  bool admissible_;
};

}  // namespace paracirc
