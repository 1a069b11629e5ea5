#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "paracirc/bits.hpp"

namespace paracirc {

struct fo_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct unbound_variable : fo_error {
  using fo_error::fo_error;
};
struct unsupported_atom : fo_error {
  using fo_error::fo_error;
};
struct fo_parse_error : fo_error {
  fo_parse_error(const std::string& what, std::size_t pos)
      : fo_error(what + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

// Terms are variables, constant symbols (#len is the input length, any other
// #name is looked up in the evaluation assignment) or numeric literals.
struct fo_term {
  enum class kind : std::uint8_t { variable, constant, literal };
  kind k = kind::literal;
  std::string name;
  std::uint64_t value = 0;

  static fo_term var(std::string n) { return {kind::variable, std::move(n), 0}; }
  static fo_term cons(std::string n) { return {kind::constant, std::move(n), 0}; }
  static fo_term lit(std::uint64_t v) { return {kind::literal, {}, v}; }
  bool operator==(const fo_term&) const = default;
};

struct fo_formula;
using fo_ptr = std::shared_ptr<const fo_formula>;

// Sentence trees over forall/exists, the connectives, and the atoms
// le, eq, bit, plus, times, X. times2 is the pair-represented product
// relation emitted by square_domain (see there).
struct fo_formula {
  enum class kind : std::uint8_t {
    forall,
    exists,
    conj,
    disj,
    neg,
    impl,
    le,
    eq,
    bit,
    plus,
    times,
    x_pred,
    times2
  };
  kind k;
  std::string var;  // quantifiers only
  fo_ptr a, b;
  std::vector<fo_term> args;  // atoms only
};

fo_ptr fo_forall(std::string v, fo_ptr body);
fo_ptr fo_exists(std::string v, fo_ptr body);
fo_ptr fo_and(fo_ptr a, fo_ptr b);
fo_ptr fo_or(fo_ptr a, fo_ptr b);
fo_ptr fo_not(fo_ptr a);
fo_ptr fo_implies(fo_ptr a, fo_ptr b);
fo_ptr fo_atom(fo_formula::kind k, std::vector<fo_term> args);

// Word model: domain 0..|w| inclusive; X(i) holds iff bit i of w is 1, and
// in particular X(|w|) is false.
struct word_model {
  bitstring w;
  std::uint64_t domain_size() const { return w.size() + 1; }
};

using fo_env = std::map<std::string, std::uint64_t>;

// Tarskian evaluation. bit(i,j) reads the i-th least significant bit of j;
// plus/times are relations on naturals (arguments range over the domain, so
// out-of-domain results make them unsatisfiable). Free variables fall back to
// the assignment; a name found nowhere raises unbound_variable.
bool eval_fo(const fo_ptr& s, const word_model& m, const fo_env& assignment = {});

// The unique domain element satisfying a one-free-variable formula, if any.
std::optional<std::uint64_t> define_value(const fo_ptr& s, const word_model& m,
                                          const fo_env& assignment = {});

std::vector<std::string> free_variables(const fo_ptr& s);

// One step (Q x. M) of a quantifier block; guards are quantifier-free.
struct quantifier_step {
  bool universal = false;
  std::string var;
  fo_ptr guard;
};
using quantifier_block = std::vector<quantifier_step>;

// M^t psi: t concatenated copies of the block in front of psi, with
// (forall x. g) f = forall x (g -> f) and (exists x. g) f = exists x (g & f).
fo_ptr iterate_block(const quantifier_block& block, fo_ptr psi, std::uint64_t t);
bool eval_fo_iterated(const quantifier_block& block, const fo_ptr& psi, std::uint64_t t,
                      const word_model& m, const fo_env& assignment = {});

// Domain squaring r(phi): every variable i becomes a pair (i_h, i_l) with the
// low component guarded below P = 2^B, B = |bin(|w|)| - 1, representing the
// value i_l + i_h * P. bit() is rewritten to the two-window bit' formula,
// le/eq/X are lifted per-component, plus becomes the carry split, and times
// becomes the built-in pair relation times2. Atom arguments must be variables
// or small literals; constant symbols raise unsupported_atom.
fo_ptr square_domain(const fo_ptr& s);

// ASCII syntax:
//   forall i. ... | exists i. ... | & | "|" | ! | -> | (...)
//   le(a,b) eq(a,b) bit(i,j) plus(a,b,c) times(a,b,c) X(i)
//   terms: variables, #len / #name constants, numeric literals
fo_ptr parse_sentence(const std::string& text);
std::string to_string(const fo_ptr& s);

// r*r <= #len and every s > r has s*s > #len (floor square root of #len).
fo_ptr sqrt_formula(const std::string& var = "r");

// One reachability step over 2-node adjacency words (X(2u+v) is the edge
// relation): advances free variable x along one edge per copy.
quantifier_block reachability_block();

}  // namespace paracirc
