#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>

#include "paracirc/conlang.hpp"

namespace paracirc {

struct plan_violation : circuit_error {
  using circuit_error::circuit_error;
};
struct layout_too_small : circuit_error {
  using circuit_error::circuit_error;
};

// ---------------------------------------------------------------------------
// substitution

// Marks internal gates of A and states their fan-in; both must agree with
// A's structure wherever the marker is 1.
struct substitution_plan {
  std::function<bool(gate_id, std::uint64_t, std::uint64_t)> marker;
  std::function<std::uint64_t(gate_id, std::uint64_t, std::uint64_t)> fanin;
};

// The family A[B/M]: every marked gate G of A_{n,k} is replaced by the
// circuit B_{fanin(G),k} whose input and output gates become unary or gates.
// Gate numbers: inputs of A stay 0..n-1, an unmarked gate G becomes the pair
// <0,G>, and gate G' of the copy of B inside marked G becomes <G,G'>
// (pairs embedded via encode_tuple_id). The copy's input gate i forwards, at
// position 0, the substituted image of the i-th input of G in A.
std::shared_ptr<family_oracle> substitute(std::shared_ptr<const family_oracle> a,
                                          std::shared_ptr<const family_oracle> b,
                                          substitution_plan plan);

// Throws plan_violation when the plan contradicts A at slice (n,k): marker on
// an input/output gate, wrong fan-in for a marked gate, or a B slice without
// a single fan-in-1 output.
void validate_plan(const family_oracle& a, const family_oracle& b,
                   const substitution_plan& plan, std::uint64_t n, std::uint64_t k,
                   const materialize_limits& lim = {});

// Word-level decision procedure for the substituted family, by case analysis
// on the pair ids (type queries and the unmarked/marked G and H cases),
// answering through A's and B's oracles only. An independent route against
// decide_direct on the materialized substitution.
bool decide_substituted_direct(const family_oracle& a, const family_oracle& b,
                               const substitution_plan& plan, const bitstring& word,
                               bool strict = true);
bool decide_substituted_binary_direct(const family_oracle& a, const family_oracle& b,
                                      const substitution_plan& plan, const bitstring& word,
                                      bool strict = true);

// ---------------------------------------------------------------------------
// renumbering

// Isomorphic copy with an admissible flat numbering: inputs keep 0..n-1,
// outputs move to n..n+m-1, the remaining gates follow in increasing id
// order. Evaluation is preserved.
circuit canonical_renumber(const circuit& c);

// Smallest layer count d such that every output gate has converged: a gate
// needs one layer more than the deepest non-input gate feeding it.
std::uint64_t required_layers(const circuit& c);

// Smallest L with 2^L - 1 >= bound.
std::uint64_t min_step_bits(std::uint64_t bound);

// ---------------------------------------------------------------------------
// simgate simulation

// d layers of N simgates. In extended mode N must be exactly 2^L - 1 and the
// or/and collection gates order their inputs so that positions 0..N-1 are the
// previous-layer selectors, position N a neutral filler constant, and
// positions N+1+i the input selectors.
struct simgate_layout {
  std::uint64_t d = 1;
  std::uint64_t n_simgates = 1;   // N
  std::uint64_t step_bits = 0;    // L, extended mode only
  bool extended = false;
  enum class query_mode { oracle_constants, substituted_decider };
  query_mode mode = query_mode::oracle_constants;
};

// The layered simulation D_{n,k} of a single-output family C. Simgate
// <m,q> recomputes gate q of C_{n,k} from layer m >= level(q) on; the final
// subcircuit propagates the simgate of the output gate. Query blocks are
// constants carrying the direct-connection answers for C ("is q an
// and/or/not?", "does q take input i?", "does q take gate p?"); in
// substituted-decider mode each constant sits behind a unary or stub.
circuit build_simgate_family(const family_oracle& c, std::uint64_t n, std::uint64_t k,
                             const simgate_layout& layout,
                             const materialize_limits& lim = {});

// ---------------------------------------------------------------------------
// extended-uniformity layered family

struct layered_family {
  circuit circ;
  std::uint64_t n = 0, k = 0;
  std::uint64_t d = 0;          // layers
  std::uint64_t big_n = 0;      // N = 2^L - 1 simgates per layer
  std::uint64_t step_bits = 0;  // L
  std::uint64_t path_cap = 0;   // D(k): longest path in the built circuit
  std::uint64_t output_gate = 0;
};

// The 2^L - 1 variant of the simgate construction together with the data the
// path tracer needs.
layered_family build_layered_e(const family_oracle& c, std::uint64_t n, std::uint64_t k,
                               std::uint64_t step_bits, const materialize_limits& lim = {});

// Oracle view of the built slice that answers only for its own (n, k), so
// word deciders agree with the tracer about words naming other slices.
std::shared_ptr<family_oracle> layered_slice_oracle(std::shared_ptr<const layered_family> fam);

enum class trace_reject {
  none,           // accepted
  malformed,      // not a five-item word or field not a numeral
  unknown_gate,   // G or a is not a gate of the layered circuit
  type_mismatch,  // p empty and a is not the gate's type code
  empty_path,     // p nonempty but not a nonempty list
  step_too_long,  // an element is longer than L + ceil(log2 n) + 1
  path_too_long,  // more than D(k) steps
  bad_step,       // step does not name an input position of the current gate
  dead_end,       // path continues past a fan-in-0 gate
  wrong_target    // walk ended somewhere else than a
};

struct trace_result {
  bool accept = false;
  trace_reject reject = trace_reject::none;
};
const char* trace_reject_name(trace_reject r);

// Membership in L_E of the layered family by the structural tracing
// algorithm: reject on element lengths first, then walk the path keeping the
// layer m, the simgate indices held by a_q/a_q', and the intra-simgate gate
// indicator H, reading a full step value only when the step is short or it is
// the unique long step into an input selector. Verbose mode logs the tracked
// variables per step.
trace_result trace_extended(const layered_family& fam, const bitstring& word,
                            bool strict = true, std::ostream* verbose = nullptr);

}  // namespace paracirc
