#include "paracirc/transforms.hpp"

#include <algorithm>
#include <iterator>
#include <ostream>
#include <tuple>

namespace paracirc {

namespace {

gate_id pair_id(std::uint64_t x, std::uint64_t y) { return encode_tuple_id({x, y}); }

std::optional<std::pair<std::uint64_t, std::uint64_t>> unpair(gate_id id) {
  auto parts = decode_tuple_id(id);
  if (!parts || parts->size() != 2) return std::nullopt;
  return std::make_pair((*parts)[0], (*parts)[1]);
}

// bits one encoded numeral item occupies inside a list
std::uint64_t item_bits(std::uint64_t width) { return 3 * width + 2; }

}  // namespace

// ---------------------------------------------------------------------------
// substitution

namespace {

class substituted_oracle : public family_oracle {
 public:
  substituted_oracle(std::shared_ptr<const family_oracle> a,
                     std::shared_ptr<const family_oracle> b, substitution_plan plan)
      : a_(std::move(a)), b_(std::move(b)), plan_(std::move(plan)) {}

  std::optional<gate_type> type_of(gate_id g, std::uint64_t n, std::uint64_t k) const override {
    if (g < n) return a_->type_of(g, n, k);
    auto pr = unpair(g);
    if (!pr) return std::nullopt;
    auto [x, y] = *pr;
    if (x == 0) {
      if (y < n || plan_.marker(y, n, k)) return std::nullopt;
      return a_->type_of(y, n, k);
    }
    if (!a_->type_of(x, n, k) || !plan_.marker(x, n, k)) return std::nullopt;
    std::uint64_t fb = plan_.fanin(x, n, k);
    auto bt = b_->type_of(y, fb, k);
    if (!bt) return std::nullopt;
    return y <= fb ? gate_type::g_or : *bt;  // boundary gates become unary or
  }

  std::optional<gate_id> pth_input(gate_id g, std::uint64_t p, std::uint64_t n,
                                   std::uint64_t k) const override {
    if (g < n) return std::nullopt;
    auto pr = unpair(g);
    if (!pr) return std::nullopt;
    auto [x, y] = *pr;
    if (x == 0) {
      if (y < n || plan_.marker(y, n, k) || !a_->type_of(y, n, k)) return std::nullopt;
      auto h = a_->pth_input(y, p, n, k);
      if (!h) return std::nullopt;
      return image(*h, n, k);
    }
    if (!a_->type_of(x, n, k) || !plan_.marker(x, n, k)) return std::nullopt;
    std::uint64_t fb = plan_.fanin(x, n, k);
    if (y < fb) {
      // input gate of the copy: forwards the image of the y-th input of x
      if (p != 0) return std::nullopt;
      auto h = a_->pth_input(x, y, n, k);
      if (!h) return std::nullopt;
      return image(*h, n, k);
    }
    if (y == fb) {
      if (p != 0) return std::nullopt;
      auto u = b_->pth_input(fb, 0, fb, k);
      if (!u) return std::nullopt;
      return pair_id(x, *u);
    }
    auto u = b_->pth_input(y, p, fb, k);
    if (!u) return std::nullopt;
    return pair_id(x, *u);
  }

  std::uint64_t numbering_bound(std::uint64_t n, std::uint64_t k) const override {
    std::uint64_t ab = a_->numbering_bound(n, k);
    std::uint64_t bb = b_->numbering_bound(ab + n, k);
    std::uint64_t bits = item_bits(numeral_width(ab)) + item_bits(numeral_width(bb));
    return bits >= 62 ? (1ull << 62) : (1ull << bits);
  }

  std::uint64_t depth_bound(std::uint64_t k) const override {
    return a_->depth_bound(k) * (b_->depth_bound(k) + 2);
  }

  std::uint64_t output_count(std::uint64_t n, std::uint64_t k) const override {
    return a_->output_count(n, k);
  }

  std::vector<gate_id> output_ids(std::uint64_t n, std::uint64_t k) const override {
    std::vector<gate_id> out;
    for (gate_id o : a_->output_ids(n, k)) out.push_back(pair_id(0, o));
    return out;
  }

  bool admissible_numbering() const override { return false; }
  bool structured_ids() const override { return true; }

  std::optional<std::vector<gate_id>> gate_hint(std::uint64_t n, std::uint64_t k) const override {
    std::vector<gate_id> ids;
    for (gate_id i = 0; i < n; ++i) ids.push_back(i);
    for (gate_id g : oracle_gates(*a_, n, k)) {
      if (g < n) continue;
      if (plan_.marker(g, n, k)) {
        std::uint64_t fb = plan_.fanin(g, n, k);
        for (gate_id gb : oracle_gates(*b_, fb, k)) ids.push_back(pair_id(g, gb));
      } else {
        ids.push_back(pair_id(0, g));
      }
    }
    return ids;
  }

 private:
  gate_id image(gate_id h, std::uint64_t n, std::uint64_t k) const {
    if (h < n) return h;
    if (plan_.marker(h, n, k)) return pair_id(h, plan_.fanin(h, n, k));
    return pair_id(0, h);
  }

  std::shared_ptr<const family_oracle> a_, b_;
  substitution_plan plan_;
};

}  // namespace

std::shared_ptr<family_oracle> substitute(std::shared_ptr<const family_oracle> a,
                                          std::shared_ptr<const family_oracle> b,
                                          substitution_plan plan) {
  return std::make_shared<substituted_oracle>(std::move(a), std::move(b), std::move(plan));
}

void validate_plan(const family_oracle& a, const family_oracle& b,
                   const substitution_plan& plan, std::uint64_t n, std::uint64_t k,
                   const materialize_limits& lim) {
  if (!a.admissible_numbering())
    throw plan_violation("substitution needs an admissibly numbered outer family");
  if (n >= min_tuple_id)
    throw plan_violation("input count collides with the pair id range");
  auto outputs = a.output_ids(n, k);
  for (gate_id g : oracle_gates(a, n, k, lim)) {
    if (!plan.marker(g, n, k)) continue;
    if (g < n) throw plan_violation("marker set on input gate " + std::to_string(g));
    if (std::find(outputs.begin(), outputs.end(), g) != outputs.end())
      throw plan_violation("marker set on output gate " + std::to_string(g));
    std::uint64_t actual = oracle_preds(a, g, n, k, lim).size();
    if (plan.fanin(g, n, k) != actual)
      throw plan_violation("fanin(" + std::to_string(g) + ") = " +
                           std::to_string(plan.fanin(g, n, k)) + ", gate has " +
                           std::to_string(actual));
    std::uint64_t fb = actual;
    if (b.output_count(fb, k) != 1 || !b.admissible_numbering() ||
        b.output_ids(fb, k) != std::vector<gate_id>{fb})
      throw plan_violation("inner family must have the single output gate " +
                           std::to_string(fb));
    if (!b.pth_input(fb, 0, fb, k) || b.pth_input(fb, 1, fb, k))
      throw plan_violation("inner family's output gate must have fan-in 1");
  }
}

namespace {

// Case analysis on the pair ids, reduced to type and p-th-input queries
// against A and B.
bool decide_substituted_fields(const family_oracle& a, const family_oracle& b,
                               const substitution_plan& plan, const bitstring& g_bits,
                               const bitstring& a_bits, const bitstring& p_bits,
                               std::uint64_t n, std::uint64_t k, bool strict) {
  auto gv = bits_to_nat(g_bits, strict);
  auto av = bits_to_nat(a_bits, strict);
  if (!gv || !av) return false;
  if (*gv < n) return false;  // inputs: no type clause, no predecessors
  auto gpr = unpair(*gv);
  if (!gpr) return false;
  auto [x, y] = *gpr;

  std::uint64_t fb = 0;
  if (x == 0) {
    if (y < n || !a.type_of(y, n, k) || plan.marker(y, n, k)) return false;
  } else {
    if (!a.type_of(x, n, k) || !plan.marker(x, n, k)) return false;
    fb = plan.fanin(x, n, k);
  }

  if (p_bits.empty()) {
    // type query: unmarked gates keep A's type, copies keep B's, boundary
    // gates of a copy have become or gates
    std::optional<gate_type> t;
    if (x == 0)
      t = a.type_of(y, n, k);
    else if (y <= fb)
      t = b.type_of(y, fb, k) ? std::optional(gate_type::g_or) : std::nullopt;
    else
      t = b.type_of(y, fb, k);
    if (!t) return false;
    auto code = type_code(*t);
    return code && *code == *av;
  }

  auto pv = bits_to_nat(p_bits, strict);
  if (!pv) return false;

  // classify the target id: plain input, <0,H'> unmarked, or <H,H'> marked
  std::uint64_t hx = 0, hy = 0;
  if (*av < n) {
    hy = *av;
  } else {
    auto apr = unpair(*av);
    if (!apr) return false;
    hx = apr->first;
    hy = apr->second;
    if (hx == 0) {
      if (hy < n || !a.type_of(hy, n, k) || plan.marker(hy, n, k)) return false;
    } else {
      if (!a.type_of(hx, n, k) || !plan.marker(hx, n, k)) return false;
    }
  }

  if (x == 0 && hx == 0)  // both unmarked: an edge of A between their images
    return a.pth_input(y, *pv, n, k) == std::optional<gate_id>(hy);
  if (x == 0)  // unmarked gate fed by the output gate of H's copy
    return a.pth_input(y, *pv, n, k) == std::optional<gate_id>(hx) &&
           hy == plan.fanin(hx, n, k);
  if (hx == 0)  // input gate y of G's copy forwards the image of A's y-th input
    return *pv == 0 && y < fb && a.pth_input(x, y, n, k) == std::optional<gate_id>(hy);
  if (x == hx)  // inside one copy of B
    return b.pth_input(y, *pv, fb, k) == std::optional<gate_id>(hy);
  // input gate of G's copy fed by the output gate of H's copy
  return *pv == 0 && y < fb && a.pth_input(x, y, n, k) == std::optional<gate_id>(hx) &&
         hy == plan.fanin(hx, n, k);
}

}  // namespace

bool decide_substituted_direct(const family_oracle& a, const family_oracle& b,
                               const substitution_plan& plan, const bitstring& word,
                               bool strict) {
  auto cw = connection_word::decode(word);
  if (!cw) return false;
  return decide_substituted_fields(a, b, plan, cw->g, cw->a, cw->p, cw->z.size(),
                                   cw->zp.size(), strict);
}

bool decide_substituted_binary_direct(const family_oracle& a, const family_oracle& b,
                                      const substitution_plan& plan, const bitstring& word,
                                      bool strict) {
  auto cw = connection_word::decode(word);
  if (!cw) return false;
  auto n = bits_to_nat(cw->z, strict);
  auto k = bits_to_nat(cw->zp, strict);
  if (!n || !k) return false;
  return decide_substituted_fields(a, b, plan, cw->g, cw->a, cw->p, *n, *k, strict);
}

// ---------------------------------------------------------------------------
// renumbering

circuit canonical_renumber(const circuit& c) {
  std::map<gate_id, gate_id> to_new;
  for (gate_id i = 0; i < c.n_inputs; ++i) {
    auto it = c.gates.find(i);
    if (it == c.gates.end() || it->second.type != gate_type::input)
      throw circuit_error("renumbering needs input gates at 0..n-1");
    to_new[i] = i;
  }
  gate_id next = c.n_inputs;
  for (gate_id out : c.outputs) {
    if (out < c.n_inputs) throw circuit_error("output gate aliases an input gate");
    if (!c.has_gate(out)) throw circuit_error("output gate " + std::to_string(out) + " missing");
    if (!to_new.emplace(out, next).second)
      throw circuit_error("duplicate output gate " + std::to_string(out));
    ++next;
  }
  for (const auto& [g, _] : c.gates)
    if (to_new.emplace(g, next).second) ++next;

  circuit out;
  out.n_inputs = c.n_inputs;
  for (gate_id o : c.outputs) out.outputs.push_back(to_new.at(o));
  for (const auto& [g, gt] : c.gates) {
    std::vector<gate_id> preds;
    preds.reserve(gt.preds.size());
    for (gate_id p : gt.preds) {
      auto it = to_new.find(p);
      if (it == to_new.end())
        throw circuit_error("dangling predecessor " + std::to_string(p));
      preds.push_back(it->second);
    }
    out.add(to_new.at(g), gt.type, std::move(preds));
  }
  return out;
}

std::uint64_t required_layers(const circuit& c) {
  std::map<gate_id, std::uint64_t> memo;
  auto level = [&](auto&& self, gate_id g) -> std::uint64_t {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    const gate& gt = c.gates.at(g);
    std::uint64_t r = 0;
    if (gt.type != gate_type::input) {
      r = 1;
      for (gate_id p : gt.preds) r = std::max(r, 1 + self(self, p));
    }
    memo[g] = r;
    return r;
  };
  std::uint64_t d = 1;
  for (gate_id out : c.outputs) d = std::max(d, level(level, out));
  return d;
}

std::uint64_t min_step_bits(std::uint64_t bound) {
  std::uint64_t l = 1;
  while ((1ull << l) - 1 < bound) ++l;
  return l;
}

// ---------------------------------------------------------------------------
// simgate construction

namespace {

struct source_facts {
  std::vector<std::optional<gate_type>> type;  // by gate number < N
  std::vector<std::vector<gate_id>> preds;
  gate_id output = 0;
};

source_facts gather_facts(const family_oracle& c, std::uint64_t n, std::uint64_t k,
                          std::uint64_t big_n, const materialize_limits& lim) {
  if (!c.admissible_numbering())
    throw plan_violation("simgate construction needs an admissibly numbered family");
  if (n >= min_tuple_id)
    throw plan_violation("input count collides with the tuple id range");
  if (c.output_count(n, k) != 1)
    throw plan_violation("simgate construction handles single-output families");
  std::uint64_t bound = c.numbering_bound(n, k);
  if (big_n < bound)
    throw layout_too_small("layer width " + std::to_string(big_n) +
                           " below numbering bound " + std::to_string(bound));
  source_facts f;
  f.type.resize(big_n);
  f.preds.resize(big_n);
  for (gate_id g : oracle_gates(c, n, k, lim)) {
    if (g >= big_n) continue;
    f.type[g] = c.type_of(g, n, k);
    f.preds[g] = oracle_preds(c, g, n, k, lim);
  }
  f.output = c.output_ids(n, k).at(0);
  return f;
}

// Builder state shared by the plain and the extended variant.
struct simgate_builder {
  circuit d;
  const source_facts& f;
  std::uint64_t n, big_n, layers;
  bool extended;
  bool decider_stub;

  // Query blocks carry precomputed direct-connection answers. In
  // substituted-decider mode the constant sits behind a unary or gate, the
  // shape a substituted decider circuit would occupy.
  gate_id query_const(std::vector<std::uint64_t> parts, bool value) {
    if (!decider_stub) {
      d.add_structured(parts, value ? gate_type::const1 : gate_type::const0);
      return encode_tuple_id(parts);
    }
    auto inner = parts;
    inner.push_back(0);
    d.add_structured(inner, value ? gate_type::const1 : gate_type::const0);
    d.add_structured(parts, gate_type::g_or, {encode_tuple_id(inner)});
    return encode_tuple_id(parts);
  }

  // Constant gates in the source act like and/or gates with nothing
  // selected: an empty and is 1, an empty or is 0.
  bool is_and_like(gate_id q) const {
    return f.type[q] == gate_type::g_and || f.type[q] == gate_type::const1;
  }
  bool is_or_like(gate_id q) const {
    return f.type[q] == gate_type::g_or || f.type[q] == gate_type::const0;
  }
  bool takes(gate_id q, gate_id p) const {
    return std::find(f.preds[q].begin(), f.preds[q].end(), p) != f.preds[q].end();
  }

  gate_id v0() const { return pair_id(0, 0); }

  void build(std::uint64_t layer) {
    std::uint64_t m = layer;
    for (std::uint64_t q = 0; q < big_n; ++q) {
      bool is_gate = f.type[q].has_value();
      auto id = [&](std::uint64_t j) { return encode_tuple_id({m, q, j}); };
      auto id4 = [&](std::uint64_t j, std::uint64_t v) {
        return encode_tuple_id({m, q, j, v});
      };
      d.add_structured({m, q, 0}, gate_type::g_or, {id(1), id(2), id(3)});
      d.add_structured({m, q, 1}, gate_type::g_and, {id(4), id(8)});
      d.add_structured({m, q, 2}, gate_type::g_and, {id(5), id(6)});
      d.add_structured({m, q, 3}, gate_type::g_and, {id(9), id(7)});
      query_const({m, q, 4}, is_gate && is_or_like(q));
      d.add_structured({m, q, 5}, gate_type::g_not, {id(8)});
      query_const({m, q, 6}, is_gate && f.type[q] == gate_type::g_not);
      query_const({m, q, 7}, is_gate && is_and_like(q));

      std::vector<gate_id> or_in, and_in;
      for (std::uint64_t p = 0; p < big_n; ++p) {
        gate_id prev = m == 1 ? v0() : encode_tuple_id({m - 1, p, 0});
        bool sel = is_gate && p >= n && takes(q, p);
        gate_id sel_c = query_const({m, q, 15, p}, sel);
        d.add_structured({m, q, 12, p}, gate_type::g_and, {prev, sel_c});
        d.add_structured({m, q, 17, p}, gate_type::g_not, {sel_c});
        d.add_structured({m, q, 13, p}, gate_type::g_or, {prev, id4(17, p)});
        or_in.push_back(id4(12, p));
        and_in.push_back(id4(13, p));
      }
      if (extended) {
        // neutral fillers keep position N distinguishable by step length
        d.add_structured({m, q, 18}, gate_type::const0);
        d.add_structured({m, q, 19}, gate_type::const1);
        or_in.push_back(id(18));
        and_in.push_back(id(19));
      }
      for (std::uint64_t i = 0; i < n; ++i) {
        bool sel = is_gate && takes(q, i);
        gate_id sel_c = query_const({m, q, 14, i}, sel);
        d.add_structured({m, q, 10, i}, gate_type::g_and, {i, sel_c});
        d.add_structured({m, q, 16, i}, gate_type::g_not, {sel_c});
        d.add_structured({m, q, 11, i}, gate_type::g_or, {i, id4(16, i)});
        or_in.push_back(id4(10, i));
        and_in.push_back(id4(11, i));
      }
      d.add_structured({m, q, 8}, gate_type::g_or, std::move(or_in));
      d.add_structured({m, q, 9}, gate_type::g_and, std::move(and_in));
    }
  }

  void build_all() {
    d.n_inputs = n;
    for (gate_id i = 0; i < n; ++i) d.add(i, gate_type::input);
    d.add_structured({0, 0}, gate_type::const0);  // layer-1 stand-in
    for (std::uint64_t m = 1; m <= layers; ++m) build(m);
    std::vector<gate_id> prop;
    for (std::uint64_t q = 0; q < big_n; ++q) {
      gate_id flag = query_const({layers + 1, q, 2}, q == f.output);
      d.add_structured({layers + 1, q, 1}, gate_type::g_and,
                       {encode_tuple_id({layers, q, 0}), flag});
      prop.push_back(encode_tuple_id({layers + 1, q, 1}));
    }
    d.add_structured({layers + 1, 0, 0}, gate_type::g_or, std::move(prop));
    d.outputs = {encode_tuple_id({layers + 1, 0, 0})};
  }
};

std::uint64_t simgate_gate_count(std::uint64_t n, std::uint64_t big_n, std::uint64_t d,
                                 bool extended, bool stub) {
  std::uint64_t per_query = stub ? 2 : 1;
  std::uint64_t per_sim = 7 + 3 * per_query + big_n * (3 + per_query) +
                          n * (3 + per_query) + (extended ? 2 : 0);
  return n + 1 + d * big_n * per_sim + big_n * (1 + per_query) + 1;
}

}  // namespace

circuit build_simgate_family(const family_oracle& c, std::uint64_t n, std::uint64_t k,
                             const simgate_layout& layout, const materialize_limits& lim) {
  if (layout.d == 0) throw layout_too_small("at least one layer required");
  if (layout.extended && layout.n_simgates != (1ull << layout.step_bits) - 1)
    throw layout_too_small("extended mode needs exactly 2^L - 1 simgates per layer");
  bool stub = layout.mode == simgate_layout::query_mode::substituted_decider;
  if (simgate_gate_count(n, layout.n_simgates, layout.d, layout.extended, stub) >
      lim.max_gates)
    throw bound_exceeded("simgate circuit would exceed the gate limit");
  source_facts f = gather_facts(c, n, k, layout.n_simgates, lim);
  simgate_builder b{{}, f, n, layout.n_simgates, layout.d, layout.extended, stub};
  b.build_all();
  return std::move(b.d);
}

layered_family build_layered_e(const family_oracle& c, std::uint64_t n, std::uint64_t k,
                               std::uint64_t step_bits, const materialize_limits& lim) {
  layered_family fam;
  fam.n = n;
  fam.k = k;
  fam.d = std::max<std::uint64_t>(1, c.depth_bound(k));
  fam.step_bits = step_bits;
  fam.big_n = (1ull << step_bits) - 1;
  simgate_layout layout{fam.d, fam.big_n, step_bits, true,
                        simgate_layout::query_mode::oracle_constants};
  fam.circ = build_simgate_family(c, n, k, layout, lim);
  fam.output_gate = fam.circ.outputs.at(0);
  // D(k): longest directed path in the built circuit
  std::map<gate_id, std::uint64_t> memo;
  auto height = [&](auto&& self, gate_id g) -> std::uint64_t {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    std::uint64_t r = 0;
    for (gate_id p : fam.circ.gates.at(g).preds) r = std::max(r, 1 + self(self, p));
    memo[g] = r;
    return r;
  };
  for (const auto& [g, _] : fam.circ.gates) fam.path_cap = std::max(fam.path_cap, height(height, g));
  return fam;
}

namespace {

class layered_oracle : public family_oracle {
 public:
  explicit layered_oracle(std::shared_ptr<const layered_family> fam) : fam_(std::move(fam)) {}

  std::optional<gate_type> type_of(gate_id g, std::uint64_t n, std::uint64_t k) const override {
    if (n != fam_->n || k != fam_->k) return std::nullopt;
    auto it = fam_->circ.gates.find(g);
    if (it == fam_->circ.gates.end()) return std::nullopt;
    return it->second.type;
  }
  std::optional<gate_id> pth_input(gate_id g, std::uint64_t p, std::uint64_t n,
                                   std::uint64_t k) const override {
    if (n != fam_->n || k != fam_->k) return std::nullopt;
    auto it = fam_->circ.gates.find(g);
    if (it == fam_->circ.gates.end() || p >= it->second.preds.size()) return std::nullopt;
    return it->second.preds[p];
  }
  std::uint64_t numbering_bound(std::uint64_t, std::uint64_t) const override {
    return fam_->circ.gates.empty() ? 0 : std::prev(fam_->circ.gates.end())->first + 1;
  }
  std::uint64_t depth_bound(std::uint64_t) const override { return fam_->path_cap; }
  std::uint64_t output_count(std::uint64_t, std::uint64_t) const override { return 1; }
  std::vector<gate_id> output_ids(std::uint64_t, std::uint64_t) const override {
    return {fam_->output_gate};
  }
  bool admissible_numbering() const override { return false; }
  bool structured_ids() const override { return true; }
  std::optional<std::vector<gate_id>> gate_hint(std::uint64_t n, std::uint64_t k) const override {
    std::vector<gate_id> ids;
    if (n != fam_->n || k != fam_->k) return ids;
    for (const auto& [g, _] : fam_->circ.gates) ids.push_back(g);
    return ids;
  }

 private:
  std::shared_ptr<const layered_family> fam_;
};

}  // namespace

std::shared_ptr<family_oracle> layered_slice_oracle(std::shared_ptr<const layered_family> fam) {
  return std::make_shared<layered_oracle>(std::move(fam));
}

// ---------------------------------------------------------------------------
// the extended-word tracer

namespace {

// structural descriptor of a gate of the layered family
struct sim_pos {
  enum class kind { input, v0, sim3, sim4, prop_out, prop_and, prop_const } k;
  std::uint64_t m = 0, q = 0, j = 0, v = 0;
  gate_id id = 0;
};

std::optional<sim_pos> parse_pos(const layered_family& fam, gate_id id) {
  if (id < fam.n) return sim_pos{sim_pos::kind::input, 0, 0, 0, 0, id};
  auto parts = decode_tuple_id(id);
  if (!parts) return std::nullopt;
  const auto& t = *parts;
  if (t.size() == 2) {
    if (t[0] == 0 && t[1] == 0) return sim_pos{sim_pos::kind::v0, 0, 0, 0, 0, id};
    return std::nullopt;
  }
  if (t.size() == 3) {
    auto [m, q, j] = std::tuple(t[0], t[1], t[2]);
    if (m >= 1 && m <= fam.d && q < fam.big_n && (j <= 9 || j == 18 || j == 19))
      return sim_pos{sim_pos::kind::sim3, m, q, j, 0, id};
    if (m == fam.d + 1) {
      if (q == 0 && j == 0) return sim_pos{sim_pos::kind::prop_out, m, q, j, 0, id};
      if (q < fam.big_n && j == 1) return sim_pos{sim_pos::kind::prop_and, m, q, j, 0, id};
      if (q < fam.big_n && j == 2) return sim_pos{sim_pos::kind::prop_const, m, q, j, 0, id};
    }
    return std::nullopt;
  }
  if (t.size() == 4) {
    auto [m, q, j, v] = std::tuple(t[0], t[1], t[2], t[3]);
    if (m < 1 || m > fam.d || q >= fam.big_n) return std::nullopt;
    bool input_sel = (j == 10 || j == 11 || j == 14 || j == 16) && v < fam.n;
    bool gate_sel = (j == 12 || j == 13 || j == 15 || j == 17) && v < fam.big_n;
    if (input_sel || gate_sel) return sim_pos{sim_pos::kind::sim4, m, q, j, v, id};
  }
  return std::nullopt;
}

// the gate's type as the connection-language code, when it has one
std::optional<std::uint64_t> pos_type_code(const sim_pos& p) {
  switch (p.k) {
    case sim_pos::kind::input:
    case sim_pos::kind::v0:
    case sim_pos::kind::prop_const: return std::nullopt;
    case sim_pos::kind::prop_out: return 1;
    case sim_pos::kind::prop_and: return 0;
    case sim_pos::kind::sim3:
      switch (p.j) {
        case 0: case 8: return 1;
        case 1: case 2: case 3: case 9: return 0;
        case 5: return 2;
        default: return std::nullopt;  // 4, 6, 7, 18, 19: constants
      }
    case sim_pos::kind::sim4:
      switch (p.j) {
        case 10: case 12: return 0;
        case 11: case 13: return 1;
        case 16: case 17: return 2;
        default: return std::nullopt;  // 14, 15: constants
      }
  }
  return std::nullopt;
}

// gates without a type code are the inputs and constants, all fan-in 0
bool pos_is_terminal(const sim_pos& p) { return !pos_type_code(p).has_value(); }

}  // namespace

const char* trace_reject_name(trace_reject r) {
  switch (r) {
    case trace_reject::none: return "none";
    case trace_reject::malformed: return "malformed";
    case trace_reject::unknown_gate: return "unknown-gate";
    case trace_reject::type_mismatch: return "type-mismatch";
    case trace_reject::empty_path: return "empty-path";
    case trace_reject::step_too_long: return "step-too-long";
    case trace_reject::path_too_long: return "path-too-long";
    case trace_reject::bad_step: return "bad-step";
    case trace_reject::dead_end: return "dead-end";
    case trace_reject::wrong_target: return "wrong-target";
  }
  return "?";
}

trace_result trace_extended(const layered_family& fam, const bitstring& word, bool strict,
                            std::ostream* verbose) {
  auto fail = [](trace_reject r) { return trace_result{false, r}; };
  auto cw = connection_word::decode(word);
  if (!cw) return fail(trace_reject::malformed);
  if (cw->z.size() != fam.n || cw->zp.size() != fam.k)
    return fail(trace_reject::unknown_gate);  // word talks about another slice
  auto gv = bits_to_nat(cw->g, strict);
  if (!gv) return fail(trace_reject::malformed);
  auto start = parse_pos(fam, *gv);
  if (!start) return fail(trace_reject::unknown_gate);
  auto av = bits_to_nat(cw->a, strict);
  if (!av) return fail(trace_reject::malformed);

  if (cw->p.empty()) {
    auto code = pos_type_code(*start);
    if (code && *code == *av) return {true, trace_reject::none};
    return fail(trace_reject::type_mismatch);
  }

  auto target = parse_pos(fam, *av);
  if (!target) return fail(trace_reject::unknown_gate);

  auto steps = decode_list(cw->p);
  if (!steps || steps->empty()) return fail(trace_reject::empty_path);

  // lengths first: the cap is checked before any step value is read
  const std::uint64_t len_cap = fam.step_bits + ceil_log2(fam.n) + 1;
  for (const auto& s : *steps)
    if (s.size() > len_cap) return fail(trace_reject::step_too_long);
  if (steps->size() > fam.path_cap) return fail(trace_reject::path_too_long);

  const std::uint64_t big_n = fam.big_n;
  sim_pos cur = *start;
  auto log_state = [&](const bitstring& step) {
    if (!verbose) return;
    *verbose << "step " << step << " -> m=" << cur.m << " aq=" << cur.q
             << " aq'=" << cur.v << " H=" << cur.j << '\n';
  };

  for (const auto& step_bits_str : *steps) {
    if (pos_is_terminal(cur)) return fail(trace_reject::dead_end);
    auto sv = bits_to_nat(step_bits_str, strict);
    if (!sv) return fail(trace_reject::malformed);
    std::uint64_t s = *sv;
    switch (cur.k) {
      case sim_pos::kind::input:
      case sim_pos::kind::v0:
      case sim_pos::kind::prop_const:
        return fail(trace_reject::dead_end);
      case sim_pos::kind::prop_out:
        if (s >= big_n) return fail(trace_reject::bad_step);
        cur = {sim_pos::kind::prop_and, fam.d + 1, s, 1, 0,
               encode_tuple_id({fam.d + 1, s, 1})};
        break;
      case sim_pos::kind::prop_and:
        if (s == 0)
          cur = {sim_pos::kind::sim3, fam.d, cur.q, 0, 0,
                 encode_tuple_id({fam.d, cur.q, 0})};
        else if (s == 1)
          cur = {sim_pos::kind::prop_const, fam.d + 1, cur.q, 2, 0,
                 encode_tuple_id({fam.d + 1, cur.q, 2})};
        else
          return fail(trace_reject::bad_step);
        break;
      case sim_pos::kind::sim3: {
        std::uint64_t m = cur.m, q = cur.q;
        auto go3 = [&](std::uint64_t j) {
          cur = {sim_pos::kind::sim3, m, q, j, 0, encode_tuple_id({m, q, j})};
        };
        auto go4 = [&](std::uint64_t j, std::uint64_t v) {
          cur = {sim_pos::kind::sim4, m, q, j, v, encode_tuple_id({m, q, j, v})};
        };
        switch (cur.j) {
          case 0:
            if (s > 2) return fail(trace_reject::bad_step);
            go3(s + 1);
            break;
          case 1:
            if (s > 1) return fail(trace_reject::bad_step);
            go3(s == 0 ? 4 : 8);
            break;
          case 2:
            if (s > 1) return fail(trace_reject::bad_step);
            go3(s == 0 ? 5 : 6);
            break;
          case 3:
            if (s > 1) return fail(trace_reject::bad_step);
            go3(s == 0 ? 9 : 7);
            break;
          case 5:
            if (s != 0) return fail(trace_reject::bad_step);
            go3(8);
            break;
          case 8:
          case 9: {
            // short steps land in the selector block, the single long step
            // names an input selector
            bool or_side = cur.j == 8;
            if (step_bits_str.size() <= fam.step_bits) {
              if (s < big_n)
                go4(or_side ? 12 : 13, s);
              else if (s == big_n)
                go3(or_side ? 18 : 19);  // filler constant
              else
                return fail(trace_reject::bad_step);
            } else {
              if (s < big_n + 1 || s >= big_n + 1 + fam.n)
                return fail(trace_reject::bad_step);
              go4(or_side ? 10 : 11, s - big_n - 1);
            }
            break;
          }
          default:
            return fail(trace_reject::dead_end);
        }
        break;
      }
      case sim_pos::kind::sim4: {
        std::uint64_t m = cur.m, q = cur.q, v = cur.v;
        switch (cur.j) {
          case 10:
          case 11:
            if (s == 0)
              cur = {sim_pos::kind::input, 0, 0, 0, 0, v};
            else if (s == 1)
              cur = {sim_pos::kind::sim4, m, q, cur.j == 10 ? 14ull : 16ull, v,
                     encode_tuple_id({m, q, cur.j == 10 ? 14ull : 16ull, v})};
            else
              return fail(trace_reject::bad_step);
            break;
          case 12:
          case 13:
            if (s == 0) {
              // leaving the simgate: the pending index v becomes the simgate
              if (m == 1)
                cur = {sim_pos::kind::v0, 0, 0, 0, 0, pair_id(0, 0)};
              else
                cur = {sim_pos::kind::sim3, m - 1, v, 0, 0,
                       encode_tuple_id({m - 1, v, 0})};
            } else if (s == 1) {
              std::uint64_t j = cur.j == 12 ? 15ull : 17ull;
              cur = {sim_pos::kind::sim4, m, q, j, v, encode_tuple_id({m, q, j, v})};
            } else {
              return fail(trace_reject::bad_step);
            }
            break;
          case 16:
          case 17: {
            if (s != 0) return fail(trace_reject::bad_step);
            std::uint64_t j = cur.j == 16 ? 14ull : 15ull;
            cur = {sim_pos::kind::sim4, m, q, j, v, encode_tuple_id({m, q, j, v})};
            break;
          }
          default:
            return fail(trace_reject::dead_end);
        }
        break;
      }
    }
    log_state(step_bits_str);
  }
  if (cur.id != *av) return fail(trace_reject::wrong_target);
  return {true, trace_reject::none};
}

}  // namespace paracirc
