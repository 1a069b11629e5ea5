#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "paracirc/bits.hpp"

namespace paracirc {

// Formal multitape deterministic Turing machine, optionally with random
// access to the input via a query tape. Text format, one directive per line
// ('#' starts a comment):
//
//   tapes 3
//   start q0
//   accept qA
//   reject qR
//   query qQ 1 2        # query state, query tape, response tape (RATM only)
//   q0 1 _ _ -> q1 1 0 _ S R S
//
// Transition lines list one read symbol per tape, then the target state, one
// write symbol per tape and one head move (L/R/S) per tape. The blank symbol
// is '_'. Tape 0 holds the input; on a random-access machine it is read-only
// and the response to a query appears on the response tape under its head
// ('0', '1', or 'x' for out-of-bounds).
struct machine_desc {
  int tapes = 1;
  std::string start, accept, reject;
  std::string query;  // empty for plain DTMs
  int query_tape = -1;
  int response_tape = -1;

  // In read patterns '*' matches any symbol; in write positions '*' keeps the
  // symbol that was read. The first matching rule in declaration order fires,
  // and exact duplicates of (state, reads) are rejected at parse time.
  struct transition {
    std::string from;
    std::string read;   // one symbol per tape
    std::string to;
    std::string write;  // one symbol per tape
    std::string moves;  // L/R/S per tape
  };
  std::vector<transition> rules;

  bool is_ratm() const { return !query.empty(); }
};

struct machine_parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

machine_desc parse_machine(const std::string& text);

enum class verdict { accept, reject, timeout };
const char* verdict_name(verdict v);

enum class qresponse : std::uint8_t { zero, one, out_of_range };

// Fixed two-bit encoding of query responses: 0 -> 00, 1 -> 01,
// out-of-range -> 10. The leftover code 11 is deliberately invalid.
unsigned response_code(qresponse r);
std::optional<qresponse> response_from_code(unsigned code);
bitstring encode_responses(const std::vector<qresponse>& rs);
std::optional<std::vector<qresponse>> decode_responses(const bitstring& bits);

struct query_event {
  std::optional<std::uint64_t> address;  // nullopt: query tape held no number
  qresponse response;
  bool operator==(const query_event&) const = default;
};

struct run_result {
  verdict v = verdict::reject;
  std::uint64_t steps = 0;
  std::vector<query_event> query_log;
};

// Faithful single-step simulation; steps is the exact number of transitions
// taken, timeout when the cap is hit first. A missing transition in a
// non-halting state rejects.
run_result simulate_dtm(const machine_desc& m, const bitstring& x, std::uint64_t cap);

// Random-access run: a transition entering the query state also delivers, in
// that same step, input bit a onto the response tape, where a is the binary
// content of the query tape (out-of-bounds for a >= |x| or no number). The
// query tape is not erased and the input tape is read-only.
run_result simulate_ratm(const machine_desc& m, const bitstring& x, std::uint64_t cap,
                         std::ostream* trace = nullptr);

// Scripted run used by the circuit compiler: query i is answered with
// responses[i] regardless of the address; the addresses actually queried are
// recorded. Runs out of scripted answers reject.
struct scripted_result {
  verdict v = verdict::reject;
  std::uint64_t steps = 0;
  std::vector<std::optional<std::uint64_t>> addresses;
};
scripted_result simulate_ratm_scripted(const machine_desc& m,
                                       const std::vector<qresponse>& responses,
                                       std::uint64_t cap);

// Registry of small machines used across tests and the CLI.
const std::vector<std::string>& builtin_machine_names();
machine_desc builtin_machine(const std::string& name);  // throws std::out_of_range

}  // namespace paracirc
