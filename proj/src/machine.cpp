#include "paracirc/machine.hpp"

#include <map>
#include <ostream>
#include <sstream>

namespace paracirc {

namespace {

constexpr char blank = '_';

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) {
    if (tok[0] == '#') break;
    out.push_back(tok);
  }
  return out;
}

}  // namespace

machine_desc parse_machine(const std::string& text) {
  machine_desc m;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool tapes_seen = false;
  auto fail = [&](const std::string& what) {
    throw machine_parse_error("line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = tokens(line);
    if (tok.empty()) continue;
    if (tok[0] == "tapes") {
      if (tok.size() != 2) fail("expected: tapes <count>");
      m.tapes = std::stoi(tok[1]);
      if (m.tapes < 1 || m.tapes > 16) fail("tape count out of range");
      tapes_seen = true;
    } else if (tok[0] == "start" || tok[0] == "accept" || tok[0] == "reject") {
      if (tok.size() != 2) fail("expected: " + tok[0] + " <state>");
      (tok[0] == "start" ? m.start : tok[0] == "accept" ? m.accept : m.reject) = tok[1];
    } else if (tok[0] == "query") {
      if (tok.size() != 4) fail("expected: query <state> <query-tape> <response-tape>");
      m.query = tok[1];
      m.query_tape = std::stoi(tok[2]);
      m.response_tape = std::stoi(tok[3]);
    } else {
      // transition: from read... -> to write... moves...
      if (!tapes_seen) fail("transition before tapes directive");
      std::size_t t = std::size_t(m.tapes);
      if (tok.size() != 3 * t + 3 || tok[1 + t] != "->") fail("malformed transition");
      machine_desc::transition tr;
      tr.from = tok[0];
      tr.to = tok[2 + t];
      for (std::size_t i = 0; i < t; ++i) {
        if (tok[1 + i].size() != 1 || tok[3 + t + i].size() != 1 ||
            tok[3 + 2 * t + i].size() != 1)
          fail("symbols and moves must be single characters");
        tr.read.push_back(tok[1 + i][0]);
        tr.write.push_back(tok[3 + t + i][0]);
        char mv = tok[3 + 2 * t + i][0];
        if (mv != 'L' && mv != 'R' && mv != 'S') fail("moves must be L, R or S");
        tr.moves.push_back(mv);
      }
      m.rules.push_back(std::move(tr));
    }
  }
  if (m.start.empty() || m.accept.empty() || m.reject.empty())
    throw machine_parse_error("start, accept and reject states are required");
  if (!m.query.empty()) {
    if (m.query_tape < 1 || m.query_tape >= m.tapes || m.response_tape < 0 ||
        m.response_tape >= m.tapes || m.response_tape == m.query_tape)
      throw machine_parse_error("query/response tape indices out of range");
  }
  std::map<std::pair<std::string, std::string>, int> seen;
  for (const auto& r : m.rules) {
    if (r.from == m.accept || r.from == m.reject)
      throw machine_parse_error("accept/reject states must be halting");
    if (!seen.emplace(std::make_pair(r.from, r.read), 1).second)
      throw machine_parse_error("duplicate transition for state " + r.from +
                                " on reads " + r.read);
    if (m.is_ratm() && r.write[0] != r.read[0] && r.write[0] != '*')
      throw machine_parse_error("input tape is read-only on random-access machines");
  }
  return m;
}

const char* verdict_name(verdict v) {
  switch (v) {
    case verdict::accept: return "accept";
    case verdict::reject: return "reject";
    case verdict::timeout: return "timeout";
  }
  return "?";
}

unsigned response_code(qresponse r) {
  switch (r) {
    case qresponse::zero: return 0;
    case qresponse::one: return 1;
    case qresponse::out_of_range: return 2;
  }
  return 3;
}

std::optional<qresponse> response_from_code(unsigned code) {
  switch (code) {
    case 0: return qresponse::zero;
    case 1: return qresponse::one;
    case 2: return qresponse::out_of_range;
    default: return std::nullopt;  // 11 is the invalid code
  }
}

bitstring encode_responses(const std::vector<qresponse>& rs) {
  bitstring out;
  out.reserve(2 * rs.size());
  for (qresponse r : rs) {
    unsigned code = response_code(r);
    out.push_back(char('0' + (code >> 1)));
    out.push_back(char('0' + (code & 1)));
  }
  return out;
}

std::optional<std::vector<qresponse>> decode_responses(const bitstring& bits) {
  if (bits.size() % 2 != 0 || !is_bits(bits)) return std::nullopt;
  std::vector<qresponse> rs;
  for (std::size_t i = 0; i < bits.size(); i += 2) {
    auto r = response_from_code(unsigned(bits[i] - '0') << 1 | unsigned(bits[i + 1] - '0'));
    if (!r) return std::nullopt;
    rs.push_back(*r);
  }
  return rs;
}

namespace {

struct tape {
  std::map<std::int64_t, char> cells;
  std::int64_t head = 0;

  char read() const {
    auto it = cells.find(head);
    return it == cells.end() ? blank : it->second;
  }
  void write(char c) {
    if (c == blank)
      cells.erase(head);
    else
      cells[head] = c;
  }
  void move(char m) { head += m == 'L' ? -1 : m == 'R' ? 1 : 0; }
};

// The binary address on the query tape: the non-blank cells must be
// contiguous and all 0/1, read most significant first.
std::optional<std::uint64_t> tape_address(const tape& t) {
  if (t.cells.empty()) return std::nullopt;
  std::int64_t lo = t.cells.begin()->first, hi = t.cells.rbegin()->first;
  if (hi - lo + 1 != std::int64_t(t.cells.size())) return std::nullopt;
  if (hi - lo + 1 > 64) return std::nullopt;
  std::uint64_t v = 0;
  for (auto pos = lo; pos <= hi; ++pos) {
    char c = t.cells.at(pos);
    if (c != '0' && c != '1') return std::nullopt;
    v = v << 1 | (c == '1');
  }
  return v;
}

const machine_desc::transition* match(const machine_desc& m, const std::string& state,
                                      const std::string& reads) {
  for (const auto& r : m.rules) {
    if (r.from != state) continue;
    bool ok = true;
    for (std::size_t i = 0; i < reads.size() && ok; ++i)
      ok = r.read[i] == '*' || r.read[i] == reads[i];
    if (ok) return &r;
  }
  return nullptr;
}

char response_symbol(qresponse r) {
  switch (r) {
    case qresponse::zero: return '0';
    case qresponse::one: return '1';
    case qresponse::out_of_range: return 'x';
  }
  return 'x';
}

// answer(query_index, address) -> response, or nullopt to halt rejecting.
template <typename Answer>
run_result simulate_core(const machine_desc& m, const bitstring& x, std::uint64_t cap,
                         Answer&& answer, bool random_access, std::ostream* trace) {
  std::vector<tape> tapes(m.tapes);
  for (std::size_t i = 0; i < x.size(); ++i) tapes[0].cells[std::int64_t(i)] = x[i];

  run_result res;
  std::string state = m.start;
  std::string reads(std::size_t(m.tapes), blank);
  while (res.steps < cap) {
    if (state == m.accept) {
      res.v = verdict::accept;
      return res;
    }
    if (state == m.reject) {
      res.v = verdict::reject;
      return res;
    }
    for (int i = 0; i < m.tapes; ++i) reads[std::size_t(i)] = tapes[std::size_t(i)].read();
    const auto* rule = match(m, state, reads);
    if (!rule) {
      res.v = verdict::reject;  // stuck configurations reject
      return res;
    }
    for (int i = 0; i < m.tapes; ++i) {
      char w = rule->write[std::size_t(i)];
      if (w != '*') tapes[std::size_t(i)].write(w);
    }
    for (int i = 0; i < m.tapes; ++i) tapes[std::size_t(i)].move(rule->moves[std::size_t(i)]);
    state = rule->to;
    ++res.steps;
    if (trace) {
      *trace << "step " << res.steps << " state " << state << " heads";
      for (const auto& t : tapes) *trace << ' ' << t.head;
      *trace << '\n';
    }
    if (random_access && state == m.query) {
      auto addr = tape_address(tapes[std::size_t(m.query_tape)]);
      auto resp = answer(res.query_log.size(), addr);
      if (!resp) {
        res.v = verdict::reject;
        return res;
      }
      res.query_log.push_back({addr, *resp});
      tapes[std::size_t(m.response_tape)].write(response_symbol(*resp));
      if (trace)
        *trace << "  query #" << res.query_log.size() << " addr "
               << (addr ? std::to_string(*addr) : std::string("none")) << " -> "
               << response_symbol(*resp) << '\n';
    }
  }
  if (state == m.accept)
    res.v = verdict::accept;
  else if (state == m.reject)
    res.v = verdict::reject;
  else
    res.v = verdict::timeout;
  return res;
}

}  // namespace

run_result simulate_dtm(const machine_desc& m, const bitstring& x, std::uint64_t cap) {
  if (m.is_ratm()) throw std::invalid_argument("simulate_dtm on a random-access machine");
  return simulate_core(
      m, x, cap,
      [](std::size_t, std::optional<std::uint64_t>) -> std::optional<qresponse> {
        return std::nullopt;
      },
      false, nullptr);
}

run_result simulate_ratm(const machine_desc& m, const bitstring& x, std::uint64_t cap,
                         std::ostream* trace) {
  if (!m.is_ratm()) throw std::invalid_argument("simulate_ratm needs a query state");
  return simulate_core(
      m, x, cap,
      [&x](std::size_t, std::optional<std::uint64_t> addr) -> std::optional<qresponse> {
        if (!addr || *addr >= x.size()) return qresponse::out_of_range;
        return x[*addr] == '1' ? qresponse::one : qresponse::zero;
      },
      true, trace);
}

scripted_result simulate_ratm_scripted(const machine_desc& m,
                                       const std::vector<qresponse>& responses,
                                       std::uint64_t cap) {
  if (!m.is_ratm()) throw std::invalid_argument("scripted run needs a query state");
  scripted_result out;
  auto res = simulate_core(
      m, "", cap,
      [&](std::size_t idx, std::optional<std::uint64_t> addr) -> std::optional<qresponse> {
        if (idx >= responses.size()) return std::nullopt;
        out.addresses.push_back(addr);
        return responses[idx];
      },
      true, nullptr);
  out.v = res.v;
  out.steps = res.steps;
  return out;
}

namespace {

const std::map<std::string, const char*>& machine_texts() {
  static const std::map<std::string, const char*> reg = {
      {"always-accept",
       "tapes 3\nstart q0\naccept yes\nreject no\nquery qq 1 2\n"
       "q0 * * * -> yes * * * S S S\n"},
      {"query-zero",
       "tapes 3\nstart q0\naccept yes\nreject no\nquery qq 1 2\n"
       "q0 * * * -> qq * 0 * S S S\n"
       "qq * * 1 -> yes * * * S S S\n"
       "qq * * 0 -> no * * * S S S\n"
       "qq * * x -> no * * * S S S\n"},
      {"two-query-and",
       "tapes 4\nstart q0\naccept yes\nreject no\nquery qq 1 2\n"
       "q0 * * * _ -> qq * 0 * _ S S S S\n"
       "qq * * 1 _ -> qq * 1 * m S S S S\n"
       "qq * * 0 _ -> no * * * * S S S S\n"
       "qq * * x _ -> no * * * * S S S S\n"
       "qq * * 1 m -> yes * * * * S S S S\n"
       "qq * * 0 m -> no * * * * S S S S\n"
       "qq * * x m -> no * * * * S S S S\n"},
      {"garbage-query",
       "tapes 3\nstart q0\naccept yes\nreject no\nquery qq 1 2\n"
       "q0 * * * -> qq * z * S S S\n"
       "qq * * x -> yes * * * S S S\n"
       "qq * * 0 -> no * * * S S S\n"
       "qq * * 1 -> no * * * S S S\n"},
      {"first-bit",
       "tapes 1\nstart q0\naccept yes\nreject no\n"
       "q0 1 -> yes 1 S\n"
       "q0 0 -> no 0 S\n"
       "q0 _ -> no _ S\n"},
      {"accept-all",
       "tapes 1\nstart q0\naccept yes\nreject no\n"
       "q0 * -> yes * S\n"},
      {"reject-all",
       "tapes 1\nstart q0\naccept yes\nreject no\n"
       "q0 * -> no * S\n"},
      {"parity",
       "tapes 1\nstart even\naccept yes\nreject no\n"
       "even 0 -> even 0 R\n"
       "even 1 -> odd 1 R\n"
       "odd 0 -> odd 0 R\n"
       "odd 1 -> even 1 R\n"
       "even _ -> no _ S\n"
       "odd _ -> yes _ S\n"},
  };
  return reg;
}

}  // namespace

const std::vector<std::string>& builtin_machine_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, _] : machine_texts()) v.push_back(name);
    return v;
  }();
  return names;
}

machine_desc builtin_machine(const std::string& name) {
  return parse_machine(machine_texts().at(name));
}

}  // namespace paracirc
