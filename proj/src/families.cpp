#include "paracirc/families.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <ostream>
#include <random>

namespace paracirc {

std::uint64_t isqrt(std::uint64_t n) {
  std::uint64_t r = std::uint64_t(std::sqrt(double(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

namespace {

// Family oracle defined by an explicit per-slice circuit builder.
class builder_oracle : public family_oracle {
 public:
  using build_fn = std::function<circuit(std::uint64_t, std::uint64_t)>;
  builder_oracle(build_fn build, std::uint64_t depth) : build_(std::move(build)), depth_(depth) {}

  std::optional<gate_type> type_of(gate_id g, std::uint64_t n, std::uint64_t k) const override {
    const circuit c = build_(n, k);
    auto it = c.gates.find(g);
    if (it == c.gates.end()) return std::nullopt;
    return it->second.type;
  }
  std::optional<gate_id> pth_input(gate_id g, std::uint64_t p, std::uint64_t n,
                                   std::uint64_t k) const override {
    const circuit c = build_(n, k);
    auto it = c.gates.find(g);
    if (it == c.gates.end() || p >= it->second.preds.size()) return std::nullopt;
    return it->second.preds[p];
  }
  std::uint64_t numbering_bound(std::uint64_t n, std::uint64_t k) const override {
    const circuit c = build_(n, k);
    return c.gates.empty() ? 0 : std::prev(c.gates.end())->first + 1;
  }
  std::uint64_t depth_bound(std::uint64_t) const override { return depth_; }
  std::uint64_t output_count(std::uint64_t n, std::uint64_t k) const override {
    return build_(n, k).outputs.size();
  }

 private:
  build_fn build_;
  std::uint64_t depth_;
};

// The equality-prefix/suffix family: for every i in [1, k], x_0 = x_{i-1}
// and x_{n-i} = x_{n-1}. The i = 1 conditions are vacuous; each later i
// contributes one equality gadget or(and(a, b), not(or(a, b))) per side.
circuit build_fig1(std::uint64_t n, std::uint64_t k) {
  circuit c;
  c.n_inputs = n;
  for (gate_id i = 0; i < n; ++i) c.add(i, gate_type::input);
  std::uint64_t imax = std::min(k, n);
  std::uint64_t g = imax >= 2 ? 2 * (imax - 1) : 0;
  std::vector<gate_id> or_gates;
  for (std::uint64_t j = 0; j < g; ++j) or_gates.push_back(n + 1 + j);
  c.add(n, gate_type::g_and, or_gates);
  c.outputs = {n};
  for (std::uint64_t j = 0; j < g; ++j) {
    std::uint64_t i = 2 + j / 2;
    gate_id a = j % 2 == 0 ? 0 : n - i;
    gate_id b = j % 2 == 0 ? i - 1 : n - 1;
    gate_id and_g = n + 1 + g + 2 * j;
    gate_id not_g = n + 2 + g + 2 * j;
    gate_id inner_or = n + 1 + 3 * g + j;
    c.add(n + 1 + j, gate_type::g_or, {and_g, not_g});
    c.add(and_g, gate_type::g_and, {a, b});
    c.add(not_g, gate_type::g_not, {inner_or});
    c.add(inner_or, gate_type::g_or, {a, b});
  }
  return c;
}

circuit build_sqrt_wire(std::uint64_t n, std::uint64_t /*k*/) {
  circuit c;
  c.n_inputs = n;
  for (gate_id i = 0; i < n; ++i) c.add(i, gate_type::input);
  // floor(sqrt(1)) = 1 names a bit that a one-bit input does not have
  if (isqrt(n) >= n)
    c.add(n, gate_type::const0);
  else
    c.add(n, gate_type::g_or, {isqrt(n)});
  c.outputs = {n};
  return c;
}

circuit build_const(std::uint64_t n, bool value) {
  circuit c;
  c.n_inputs = n;
  for (gate_id i = 0; i < n; ++i) c.add(i, gate_type::input);
  c.add(n, value ? gate_type::const1 : gate_type::const0);
  c.outputs = {n};
  return c;
}

circuit build_identity_wire(std::uint64_t n, std::uint64_t /*k*/) {
  circuit c;
  c.n_inputs = n;
  for (gate_id i = 0; i < n; ++i) c.add(i, gate_type::input);
  if (n == 0)
    c.add(0, gate_type::const0);
  else
    c.add(n, gate_type::g_or, {gate_id(0)});
  c.outputs = {n == 0 ? 0 : n};
  return c;
}

// Reduction families with a forwarding output gate, substitution-ready: the
// output gate n has fan-in 1 and the internal gate n+1 does the work.
enum class reduce_op { and_all, or_all, not_first };

circuit build_reduce(std::uint64_t n, reduce_op op) {
  circuit c;
  c.n_inputs = n;
  std::vector<gate_id> all;
  for (gate_id i = 0; i < n; ++i) {
    c.add(i, gate_type::input);
    all.push_back(i);
  }
  switch (op) {
    case reduce_op::and_all: c.add(n + 1, gate_type::g_and, all); break;
    case reduce_op::or_all: c.add(n + 1, gate_type::g_or, all); break;
    case reduce_op::not_first:
      if (n == 0)
        c.add(n + 1, gate_type::const0);
      else
        c.add(n + 1, gate_type::g_not, {gate_id(0)});
      break;
  }
  c.add(n, gate_type::g_or, {n + 1});
  c.outputs = {n};
  return c;
}

}  // namespace

builtin_family builtin(const std::string& name) {
  if (name == "fig1-equality") {
    param_problem p{
        name,
        [](const bitstring& x) {
          std::uint64_t n = x.size(), k = isqrt(n);
          for (std::uint64_t i = 2; i <= std::min(k, n); ++i)
            if (x[0] != x[i - 1] || x[n - i] != x[n - 1]) return false;
          return true;
        },
        [](const bitstring& x) { return isqrt(x.size()); }};
    return {p, std::make_shared<builder_oracle>(build_fig1, 4)};
  }
  if (name == "sqrt-wire") {
    param_problem p{name,
                    [](const bitstring& x) {
                      std::uint64_t r = isqrt(x.size());
                      return r < x.size() && x[r] == '1';
                    },
                    [](const bitstring& x) { return isqrt(x.size()); }};
    return {p, std::make_shared<builder_oracle>(build_sqrt_wire, 1)};
  }
  if (name == "const0") {
    param_problem p{name, [](const bitstring&) { return false; },
                    [](const bitstring&) { return std::uint64_t(0); }};
    return {p, std::make_shared<builder_oracle>(
                   [](std::uint64_t n, std::uint64_t) { return build_const(n, false); }, 1)};
  }
  if (name == "const1") {
    param_problem p{name, [](const bitstring&) { return true; },
                    [](const bitstring&) { return std::uint64_t(0); }};
    return {p, std::make_shared<builder_oracle>(
                   [](std::uint64_t n, std::uint64_t) { return build_const(n, true); }, 1)};
  }
  if (name == "identity-wire") {
    param_problem p{name,
                    [](const bitstring& x) { return !x.empty() && x[0] == '1'; },
                    [](const bitstring&) { return std::uint64_t(0); }};
    return {p, std::make_shared<builder_oracle>(build_identity_wire, 1)};
  }
  if (name == "and-reduce") {
    param_problem p{name,
                    [](const bitstring& x) { return x.find('0') == bitstring::npos; },
                    [](const bitstring&) { return std::uint64_t(0); }};
    return {p, std::make_shared<builder_oracle>(
                   [](std::uint64_t n, std::uint64_t) {
                     return build_reduce(n, reduce_op::and_all);
                   },
                   2)};
  }
  if (name == "or-reduce") {
    param_problem p{name,
                    [](const bitstring& x) { return x.find('1') != bitstring::npos; },
                    [](const bitstring&) { return std::uint64_t(0); }};
    return {p, std::make_shared<builder_oracle>(
                   [](std::uint64_t n, std::uint64_t) {
                     return build_reduce(n, reduce_op::or_all);
                   },
                   2)};
  }
  if (name == "not-first") {
    param_problem p{name,
                    [](const bitstring& x) { return !x.empty() && x[0] == '0'; },
                    [](const bitstring&) { return std::uint64_t(0); }};
    return {p, std::make_shared<builder_oracle>(
                   [](std::uint64_t n, std::uint64_t) {
                     return build_reduce(n, reduce_op::not_first);
                   },
                   2)};
  }
  throw unknown_family("no builtin family named '" + name + "'");
}

const std::vector<std::string>& builtin_family_names() {
  static const std::vector<std::string> names = {
      "fig1-equality", "sqrt-wire", "const0",    "const1",
      "identity-wire", "and-reduce", "or-reduce", "not-first"};
  return names;
}

// ---------------------------------------------------------------------------
// witnesses

std::uint64_t budget_spec::f_of(std::uint64_t k) const {
  if (f_table.empty()) return 0;
  return f_table[std::min<std::size_t>(k, f_table.size() - 1)];
}

std::uint64_t budget_spec::bound(std::uint64_t n, std::uint64_t k) const {
  std::uint64_t base_v = base == shape::linear ? n : ceil_log2(n) + 1;
  return c * (base_v + f_of(k));
}

uniformity_witness builtin_witness(const std::string& name) {
  if (name == "sqrt-wire-fo") {
    // The output gate is numbered n = #len; its type word carries the or
    // code, its single edge word points at input floor(sqrt(n)).
    fo_term g = fo_term::cons("g"), a = fo_term::cons("a"), p = fo_term::cons("p");
    fo_term peps = fo_term::cons("peps"), len = fo_term::cons("len");
    using k = fo_formula::kind;
    fo_ptr is_output = fo_atom(k::eq, {g, len});
    fo_ptr type_word = fo_and(fo_atom(k::eq, {peps, fo_term::lit(1)}),
                              fo_atom(k::eq, {a, fo_term::lit(1)}));
    // a = floor(sqrt(#len)): a*a <= #len and no larger s has s*s <= #len
    fo_ptr a_sq = fo_exists("c", fo_and(fo_atom(k::times, {a, a, fo_term::var("c")}),
                                        fo_atom(k::le, {fo_term::var("c"), len})));
    fo_ptr no_bigger = fo_forall(
        "s", fo_implies(fo_not(fo_atom(k::le, {fo_term::var("s"), a})),
                        fo_not(fo_exists(
                            "c2", fo_and(fo_atom(k::times, {fo_term::var("s"),
                                                            fo_term::var("s"),
                                                            fo_term::var("c2")}),
                                         fo_atom(k::le, {fo_term::var("c2"), len}))))));
    fo_ptr edge_word = fo_and(fo_and(fo_atom(k::eq, {peps, fo_term::lit(0)}),
                                     fo_atom(k::eq, {p, fo_term::lit(0)})),
                              fo_and(a_sq, no_bigger));
    uniformity_witness w;
    w.kind = uniformity_witness::wkind::fo_d;
    w.name = name;
    w.sentence = fo_and(is_output, fo_or(type_word, edge_word));
    return w;
  }
  if (name == "accept-all-bd") {
    // negative control: accepts every string, so every fuzzed non-word is a
    // correctness violation
    uniformity_witness w;
    w.kind = uniformity_witness::wkind::machine_bd;
    w.name = name;
    w.machine = builtin_machine("accept-all");
    w.budget = budget_spec{budget_spec::shape::linear, 4, {4}};
    return w;
  }
  if (name == "reject-all-bd") {
    // correct witness for families with empty connection languages
    uniformity_witness w;
    w.kind = uniformity_witness::wkind::machine_bd;
    w.name = name;
    w.machine = builtin_machine("reject-all");
    w.budget = budget_spec{budget_spec::shape::linear, 4, {4}};
    return w;
  }
  if (name == "reject-all-zero-budget") {
    uniformity_witness w;
    w.kind = uniformity_witness::wkind::machine_bd;
    w.name = name;
    w.machine = builtin_machine("reject-all");
    w.budget = budget_spec{budget_spec::shape::linear, 0, {0}};
    return w;
  }
  if (name == "reject-all-d") {
    // random-access variant of the empty-language witness
    uniformity_witness w;
    w.kind = uniformity_witness::wkind::machine_d;
    w.name = name;
    w.machine = parse_machine(
        "tapes 3\nstart q0\naccept yes\nreject no\nquery qq 1 2\n"
        "q0 * * * -> no * * * S S S\n");
    w.budget = budget_spec{budget_spec::shape::logtime, 4, {4}};
    return w;
  }
  throw unknown_family("no builtin witness named '" + name + "'");
}

const std::vector<std::string>& builtin_witness_names() {
  static const std::vector<std::string> names = {"sqrt-wire-fo", "accept-all-bd",
                                                 "reject-all-bd", "reject-all-zero-budget",
                                                 "reject-all-d"};
  return names;
}

std::vector<bitstring> fuzz_words(const std::vector<connection_word>& words,
                                  std::uint64_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<bitstring> out;
  auto random_bits = [&](std::size_t len) {
    bitstring w(len, '0');
    for (auto& c : w) c = (rng() & 1) ? '1' : '0';
    return w;
  };
  for (std::uint64_t i = 0; i < count; ++i) {
    if (!words.empty() && rng() % 3 != 0) {
      bitstring w = words[rng() % words.size()].encode();
      switch (rng() % 3) {
        case 0:
          if (!w.empty()) w[rng() % w.size()] ^= 1;  // flip
          break;
        case 1:
          w.insert(w.begin() + std::ptrdiff_t(rng() % (w.size() + 1)),
                   (rng() & 1) ? '1' : '0');
          break;
        default:
          if (!w.empty()) w.erase(w.begin() + std::ptrdiff_t(rng() % w.size()));
      }
      out.push_back(std::move(w));
    } else {
      out.push_back(random_bits(1 + rng() % 40));
    }
  }
  return out;
}

namespace {

// Direct word -> binary-direct word (z, z' replaced by |z|, |z'| in binary).
bitstring to_binary_direct(const connection_word& w) {
  return encode_list({w.g, w.a, w.p, nat_to_bits(w.z.size()), nat_to_bits(w.zp.size())});
}

struct fo_word_view {
  fo_env consts;
  word_model model;
};

// FO witnesses see the parsed word: constants #g/#a/#p/#peps/#k over the word
// model of z. Words that do not parse as five canonical fields reject before
// the sentence is consulted.
std::optional<fo_word_view> fo_view(const bitstring& w) {
  auto cw = connection_word::decode(w);
  if (!cw) return std::nullopt;
  auto g = bits_to_nat(cw->g);
  auto a = bits_to_nat(cw->a);
  if (!g || !a) return std::nullopt;
  fo_word_view v;
  v.consts["g"] = *g;
  v.consts["a"] = *a;
  if (cw->p.empty()) {
    v.consts["p"] = 0;
    v.consts["peps"] = 1;
  } else {
    auto p = bits_to_nat(cw->p);
    if (!p) return std::nullopt;
    v.consts["p"] = *p;
    v.consts["peps"] = 0;
  }
  v.consts["k"] = cw->zp.size();
  v.model.w = cw->z;
  return v;
}

}  // namespace

witness_report check_witness(const family_oracle& o, const uniformity_witness& w,
                             const std::vector<std::pair<std::uint64_t, std::uint64_t>>& grid,
                             std::uint64_t fuzz_per_slice, std::uint64_t seed,
                             const materialize_limits& lim) {
  witness_report report;
  for (auto [n, k] : grid) {
    ++report.slices;
    auto words = enumerate_direct_words(o, n, k, lim);
    std::vector<bitstring> tests;
    for (const auto& cw : words) tests.push_back(cw.encode());
    for (auto& f : fuzz_words(words, fuzz_per_slice, seed ^ (n * 1315423911ull + k)))
      tests.push_back(std::move(f));

    for (const auto& word : tests) {
      bool expected = decide_direct(o, word);
      bool got = false;
      std::uint64_t steps = 0;
      switch (w.kind) {
        case uniformity_witness::wkind::machine_bd: {
          auto cw = connection_word::decode(word);
          // machine-bd runs on the binary-direct form of the same word
          bitstring input = cw ? to_binary_direct(*cw) : word;
          std::uint64_t cap = 1ull << 20;
          auto res = simulate_dtm(*w.machine, input, cap);
          got = res.v == verdict::accept;
          steps = res.steps;
          break;
        }
        case uniformity_witness::wkind::machine_d: {
          std::uint64_t cap = 1ull << 20;
          auto res = simulate_ratm(*w.machine, word, cap);
          got = res.v == verdict::accept;
          steps = res.steps;
          break;
        }
        case uniformity_witness::wkind::fo_d:
        case uniformity_witness::wkind::fo_e: {
          auto view = fo_view(word);
          got = view && eval_fo(w.sentence, view->model, view->consts);
          break;
        }
      }
      ++report.words_checked;
      if (got != expected) {
        report.violations.push_back({n, k, word,
                                     expected ? "rejects a word of the language"
                                              : "accepts a non-word",
                                     steps, 0});
      }
      if (w.budget) {
        std::uint64_t budget = w.budget->bound(n, k);
        if (steps > budget)
          report.violations.push_back({n, k, word, "step budget exceeded", steps, budget});
      }
    }
  }
  return report;
}

void witness_report::print(std::ostream& os) const {
  for (const auto& v : violations)
    os << "(" << v.n << "," << v.k << ") " << v.word << " " << v.what << " steps=" << v.steps
       << " budget=" << v.budget << "\n";
  os << (ok() ? "ok" : "FAIL") << ": " << words_checked << " words over " << slices
     << " slices, " << violations.size() << " violations\n";
}

}  // namespace paracirc
