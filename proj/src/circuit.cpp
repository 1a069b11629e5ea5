#include "paracirc/circuit.hpp"

#include <algorithm>

#include "paracirc/codec.hpp"

namespace paracirc {

const char* gate_type_name(gate_type t) {
  switch (t) {
    case gate_type::input: return "input";
    case gate_type::g_and: return "and";
    case gate_type::g_or: return "or";
    case gate_type::g_not: return "not";
    case gate_type::const0: return "const0";
    case gate_type::const1: return "const1";
  }
  return "?";
}

std::optional<gate_type> gate_type_from_name(std::string_view name) {
  for (gate_type t : {gate_type::input, gate_type::g_and, gate_type::g_or,
                      gate_type::g_not, gate_type::const0, gate_type::const1})
    if (name == gate_type_name(t)) return t;
  return std::nullopt;
}

std::optional<std::uint64_t> type_code(gate_type t) {
  switch (t) {
    case gate_type::g_and: return 0;
    case gate_type::g_or: return 1;
    case gate_type::g_not: return 2;
    default: return std::nullopt;
  }
}

std::optional<gate_type> type_from_code(std::uint64_t code) {
  switch (code) {
    case 0: return gate_type::g_and;
    case 1: return gate_type::g_or;
    case 2: return gate_type::g_not;
    default: return std::nullopt;
  }
}

void circuit::add(gate_id g, gate_type t, std::vector<gate_id> preds) {
  if (gates.count(g)) throw circuit_error("duplicate gate id " + std::to_string(g));
  gates.emplace(g, gate{t, std::move(preds)});
}

void circuit::add_structured(const std::vector<std::uint64_t>& parts, gate_type t,
                             std::vector<gate_id> preds) {
  gate_id g = encode_tuple_id(parts);
  add(g, t, std::move(preds));
  structured.emplace(g, parts);
}

evaluator::evaluator(const circuit& c) : n_inputs_(c.n_inputs) {
  std::map<gate_id, std::uint32_t> index;
  std::uint32_t next = 0;
  for (const auto& [g, _] : c.gates) index.emplace(g, next++);

  const std::size_t n = c.gates.size();
  std::vector<std::uint8_t> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
  std::vector<std::uint32_t> order;
  order.reserve(n);

  // iterative DFS producing a topological order (preds before gate)
  std::vector<std::pair<std::uint32_t, std::size_t>> stack;
  std::vector<const gate*> by_index(n);
  std::vector<gate_id> id_of(n);
  for (const auto& [g, gt] : c.gates) {
    by_index[index[g]] = &gt;
    id_of[index[g]] = g;
  }
  for (std::uint32_t root = 0; root < n; ++root) {
    if (state[root]) continue;
    stack.emplace_back(root, 0);
    state[root] = 1;
    while (!stack.empty()) {
      auto& [v, pi] = stack.back();
      const gate& gt = *by_index[v];
      if (pi < gt.preds.size()) {
        gate_id pred = gt.preds[pi++];
        auto it = index.find(pred);
        if (it == index.end())
          throw circuit_error("gate " + std::to_string(id_of[v]) +
                              " references missing gate " + std::to_string(pred));
        std::uint32_t p = it->second;
        if (state[p] == 1) throw circuit_error("cycle through gate " + std::to_string(pred));
        if (state[p] == 0) {
          state[p] = 1;
          stack.emplace_back(p, 0);
        }
      } else {
        state[v] = 2;
        order.push_back(v);
        stack.pop_back();
      }
    }
  }

  std::vector<std::uint32_t> pos(n);
  for (std::uint32_t i = 0; i < order.size(); ++i) pos[order[i]] = i;

  types_.resize(n);
  pred_off_.assign(n + 1, 0);
  input_pos_.assign(n_inputs_, std::uint32_t(-1));
  for (std::uint32_t i = 0; i < n; ++i) {
    const gate& gt = *by_index[order[i]];
    types_[i] = gt.type;
    pred_off_[i + 1] = pred_off_[i] + std::uint32_t(gt.preds.size());
    if (gt.type == gate_type::g_not && gt.preds.size() != 1)
      throw circuit_error("not gate " + std::to_string(id_of[order[i]]) +
                          " must have exactly one predecessor");
    if ((gt.type == gate_type::input || gt.type == gate_type::const0 ||
         gt.type == gate_type::const1) &&
        !gt.preds.empty())
      throw circuit_error("gate " + std::to_string(id_of[order[i]]) +
                          " must have fan-in 0");
    if (gt.type == gate_type::input) {
      gate_id g = id_of[order[i]];
      if (g >= n_inputs_)
        throw circuit_error("input gate " + std::to_string(g) + " out of range");
      input_pos_[g] = i;
    }
  }
  for (std::uint64_t i = 0; i < n_inputs_; ++i)
    if (input_pos_[i] == std::uint32_t(-1))
      throw circuit_error("missing input gate " + std::to_string(i));
  preds_.resize(pred_off_[n]);
  for (std::uint32_t i = 0; i < n; ++i) {
    const gate& gt = *by_index[order[i]];
    for (std::size_t j = 0; j < gt.preds.size(); ++j)
      preds_[pred_off_[i] + j] = pos[index[gt.preds[j]]];
  }
  for (gate_id out : c.outputs) {
    auto it = index.find(out);
    if (it == index.end())
      throw circuit_error("output references missing gate " + std::to_string(out));
    output_pos_.push_back(pos[it->second]);
  }
}

void evaluator::eval_into(std::vector<std::uint8_t>& v) const {
  const std::size_t n = types_.size();
  for (std::size_t i = 0; i < n; ++i) {
    switch (types_[i]) {
      case gate_type::input:
        break;  // preloaded
      case gate_type::const0:
        v[i] = 0;
        break;
      case gate_type::const1:
        v[i] = 1;
        break;
      case gate_type::g_not:
        v[i] = !v[preds_[pred_off_[i]]];
        break;
      case gate_type::g_and: {
        std::uint8_t r = 1;  // empty and = 1
        for (std::uint32_t j = pred_off_[i]; j < pred_off_[i + 1] && r; ++j)
          r = v[preds_[j]];
        v[i] = r;
        break;
      }
      case gate_type::g_or: {
        std::uint8_t r = 0;  // empty or = 0
        for (std::uint32_t j = pred_off_[i]; j < pred_off_[i + 1] && !r; ++j)
          r = v[preds_[j]];
        v[i] = r;
        break;
      }
    }
  }
}

void evaluator::run(const bitstring& x, std::vector<std::uint8_t>& scratch,
                    bitstring& out) const {
  if (x.size() != n_inputs_)
    throw input_length_mismatch("expected " + std::to_string(n_inputs_) +
                                " input bits, got " + std::to_string(x.size()));
  scratch.assign(types_.size(), 0);
  for (std::uint64_t i = 0; i < n_inputs_; ++i) scratch[input_pos_[i]] = x[i] == '1';
  eval_into(scratch);
  out.clear();
  for (auto p : output_pos_) out.push_back(scratch[p] ? '1' : '0');
}

bitstring evaluator::run(const bitstring& x) const {
  std::vector<std::uint8_t> scratch;
  bitstring out;
  run(x, scratch, out);
  return out;
}

bool evaluator::run_mask(std::uint64_t x, std::vector<std::uint8_t>& scratch) const {
  scratch.assign(types_.size(), 0);
  for (std::uint64_t i = 0; i < n_inputs_; ++i) scratch[input_pos_[i]] = x >> i & 1;
  eval_into(scratch);
  return scratch[output_pos_.at(0)];
}

bitstring evaluate(const circuit& c, const bitstring& x) { return evaluator(c).run(x); }

circuit_stats_t stats(const circuit& c) {
  circuit_stats_t st;
  st.size = c.gates.size();
  // level via DFS over the (validated) DAG; only input-reaching paths count
  evaluator check(c);  // DAG validation
  (void)check;
  std::map<gate_id, std::pair<bool, std::uint64_t>> memo;  // reaches-input, level
  auto level = [&](auto&& self, gate_id g) -> std::pair<bool, std::uint64_t> {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    const gate& gt = c.gates.at(g);
    std::pair<bool, std::uint64_t> r{gt.type == gate_type::input, 0};
    for (gate_id p : gt.preds) {
      auto sub = self(self, p);
      if (sub.first) {
        r.first = true;
        r.second = std::max(r.second, sub.second + 1);
      }
    }
    memo[g] = r;
    return r;
  };
  for (const auto& [g, _] : c.gates) st.levels[g] = level(level, g).second;
  for (gate_id out : c.outputs) st.depth = std::max(st.depth, st.levels.at(out));
  return st;
}

std::vector<std::string> validate_numbering(const circuit& c, const numbering_bound& b) {
  std::vector<std::string> report;
  if (b.bound < b.n + c.outputs.size())
    report.push_back("bound " + std::to_string(b.bound) + " below n + output count");
  if (c.n_inputs != b.n)
    report.push_back("circuit has " + std::to_string(c.n_inputs) +
                     " inputs, bound says " + std::to_string(b.n));
  for (gate_id i = 0; i < c.n_inputs; ++i) {
    auto it = c.gates.find(i);
    if (it == c.gates.end())
      report.push_back("missing input gate " + std::to_string(i));
    else if (it->second.type != gate_type::input)
      report.push_back("gate " + std::to_string(i) + " must have type input");
  }
  for (const auto& [g, gt] : c.gates) {
    if (gt.type == gate_type::input && g >= c.n_inputs)
      report.push_back("input gate " + std::to_string(g) + " beyond n-1");
    if (g >= b.bound)
      report.push_back("gate " + std::to_string(g) + " not below bound " +
                       std::to_string(b.bound));
  }
  for (std::size_t i = 0; i < c.outputs.size(); ++i) {
    if (c.outputs[i] != c.n_inputs + i)
      report.push_back("outputs must start at n: output " + std::to_string(i) +
                       " is numbered " + std::to_string(c.outputs[i]) +
                       ", expected " + std::to_string(c.n_inputs + i));
    if (!c.has_gate(c.outputs[i]))
      report.push_back("output gate " + std::to_string(c.outputs[i]) + " missing");
  }
  return report;
}

}  // namespace paracirc
