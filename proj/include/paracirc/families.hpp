#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "paracirc/conlang.hpp"
#include "paracirc/fologic.hpp"
#include "paracirc/machine.hpp"

namespace paracirc {

struct unknown_family : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A parameterized problem: reference membership semantics plus the parameter
// function.
struct param_problem {
  std::string name;
  std::function<bool(const bitstring&)> membership;
  std::function<std::uint64_t(const bitstring&)> kappa;
};

struct builtin_family {
  param_problem problem;
  std::shared_ptr<const family_oracle> oracle;
};

// Registered names: fig1-equality, sqrt-wire, const0, const1, identity-wire.
builtin_family builtin(const std::string& name);  // throws unknown_family
const std::vector<std::string>& builtin_family_names();

std::uint64_t isqrt(std::uint64_t n);

// ---------------------------------------------------------------------------
// uniformity witnesses

// Claimed step budget: c * (base(n) + f(k)) with base(n) = n for linear
// machines and ceil(log2 n) + 1 for logtime ones; f is a lookup table, with
// the last entry reused beyond its end.
struct budget_spec {
  enum class shape { linear, logtime };
  shape base = shape::linear;
  std::uint64_t c = 1;
  std::vector<std::uint64_t> f_table = {0};

  std::uint64_t f_of(std::uint64_t k) const;
  std::uint64_t bound(std::uint64_t n, std::uint64_t k) const;
};

// A claimed decider for a family's connection language. Machine witnesses run
// on the encoded words (binary-direct words for machine-bd, direct words for
// machine-d) and carry a step budget. FO witnesses are sentences evaluated on
// the word model of the padding string z with constants bound from the parsed
// word: #g, #a, #p (0 when p is empty), #peps (1 when p is empty), #k.
struct uniformity_witness {
  enum class wkind { machine_bd, machine_d, fo_d, fo_e };
  wkind kind = wkind::fo_d;
  std::string name;
  std::optional<machine_desc> machine;
  fo_ptr sentence;
  std::optional<budget_spec> budget;
};

const std::vector<std::string>& builtin_witness_names();
uniformity_witness builtin_witness(const std::string& name);  // throws unknown_family

struct witness_violation {
  std::uint64_t n = 0, k = 0;
  bitstring word;
  std::string what;
  std::uint64_t steps = 0, budget = 0;
};

struct witness_report {
  std::vector<witness_violation> violations;
  std::uint64_t words_checked = 0;
  std::uint64_t slices = 0;
  bool ok() const { return violations.empty(); }
  // line-oriented: "(n,k) word verdict steps budget" per violation + summary
  void print(std::ostream& os) const;
};

// For each grid point: the witness must agree with the reference decider on
// every enumerated word of the appropriate connection language and on a
// seeded sample of mutated/random non-words; machine witnesses must also stay
// within their step budget on every tested word.
witness_report check_witness(const family_oracle& o, const uniformity_witness& w,
                             const std::vector<std::pair<std::uint64_t, std::uint64_t>>& grid,
                             std::uint64_t fuzz_per_slice = 50, std::uint64_t seed = 1,
                             const materialize_limits& lim = {});

// Seeded non-word sample: mutations of real words plus random strings.
std::vector<bitstring> fuzz_words(const std::vector<connection_word>& words,
                                  std::uint64_t count, std::uint64_t seed);

}  // namespace paracirc
