#include "paracirc/fologic.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace paracirc {

using kind = fo_formula::kind;

namespace {

fo_ptr node(fo_formula f) { return std::make_shared<const fo_formula>(std::move(f)); }

std::size_t atom_arity(kind k) {
  switch (k) {
    case kind::le:
    case kind::eq:
    case kind::bit: return 2;
    case kind::plus:
    case kind::times: return 3;
    case kind::x_pred: return 1;
    case kind::times2: return 6;
    default: return 0;
  }
}

}  // namespace

fo_ptr fo_forall(std::string v, fo_ptr body) {
  return node({kind::forall, std::move(v), std::move(body), nullptr, {}});
}
fo_ptr fo_exists(std::string v, fo_ptr body) {
  return node({kind::exists, std::move(v), std::move(body), nullptr, {}});
}
fo_ptr fo_and(fo_ptr a, fo_ptr b) {
  return node({kind::conj, {}, std::move(a), std::move(b), {}});
}
fo_ptr fo_or(fo_ptr a, fo_ptr b) {
  return node({kind::disj, {}, std::move(a), std::move(b), {}});
}
fo_ptr fo_not(fo_ptr a) { return node({kind::neg, {}, std::move(a), nullptr, {}}); }
fo_ptr fo_implies(fo_ptr a, fo_ptr b) {
  return node({kind::impl, {}, std::move(a), std::move(b), {}});
}
fo_ptr fo_atom(kind k, std::vector<fo_term> args) {
  if (args.size() != atom_arity(k)) throw fo_error("wrong atom arity");
  return node({k, {}, nullptr, nullptr, std::move(args)});
}

namespace {

struct eval_ctx {
  const word_model& m;
  const fo_env& assignment;
  fo_env env;

  std::uint64_t term(const fo_term& t) const {
    switch (t.k) {
      case fo_term::kind::literal: return t.value;
      case fo_term::kind::constant: {
        if (t.name == "len") return m.w.size();
        auto it = assignment.find(t.name);
        if (it == assignment.end()) throw unbound_variable("constant #" + t.name);
        return it->second;
      }
      case fo_term::kind::variable: {
        auto it = env.find(t.name);
        if (it != env.end()) return it->second;
        auto fallback = assignment.find(t.name);
        if (fallback == assignment.end())
          throw unbound_variable("variable " + t.name);
        return fallback->second;
      }
    }
    throw fo_error("bad term");
  }
};

bool eval_node(const fo_ptr& s, eval_ctx& ctx) {
  switch (s->k) {
    case kind::forall:
    case kind::exists: {
      const bool all = s->k == kind::forall;
      auto saved = ctx.env.find(s->var) != ctx.env.end()
                       ? std::optional<std::uint64_t>(ctx.env[s->var])
                       : std::nullopt;
      bool result = all;
      for (std::uint64_t v = 0; v < ctx.m.domain_size(); ++v) {
        ctx.env[s->var] = v;
        bool sub = eval_node(s->a, ctx);
        if (sub != all) {
          result = !all;
          break;
        }
      }
      if (saved)
        ctx.env[s->var] = *saved;
      else
        ctx.env.erase(s->var);
      return result;
    }
    case kind::conj: return eval_node(s->a, ctx) && eval_node(s->b, ctx);
    case kind::disj: return eval_node(s->a, ctx) || eval_node(s->b, ctx);
    case kind::neg: return !eval_node(s->a, ctx);
    case kind::impl: return !eval_node(s->a, ctx) || eval_node(s->b, ctx);
    case kind::le: return ctx.term(s->args[0]) <= ctx.term(s->args[1]);
    case kind::eq: return ctx.term(s->args[0]) == ctx.term(s->args[1]);
    case kind::bit: {
      std::uint64_t i = ctx.term(s->args[0]), j = ctx.term(s->args[1]);
      return i < 64 && (j >> i & 1);
    }
    case kind::plus: {
      unsigned __int128 a = ctx.term(s->args[0]), b = ctx.term(s->args[1]);
      return a + b == ctx.term(s->args[2]);
    }
    case kind::times: {
      unsigned __int128 a = ctx.term(s->args[0]), b = ctx.term(s->args[1]);
      return a * b == ctx.term(s->args[2]);
    }
    case kind::x_pred: {
      std::uint64_t i = ctx.term(s->args[0]);
      return i < ctx.m.w.size() && ctx.m.w[i] == '1';
    }
    case kind::times2: {
      // pair-represented product: V(h, l) = l + h * 2^B over the squared
      // domain; low components are kept below 2^B by the quantifier guards
      std::uint64_t n = ctx.m.w.size();
      std::uint64_t B = n == 0 ? 0 : numeral_width(n) - 1;
      auto value = [&](std::size_t hi) -> unsigned __int128 {
        return ((unsigned __int128)ctx.term(s->args[hi]) << B) + ctx.term(s->args[hi + 1]);
      };
      return value(0) * value(2) == value(4);
    }
  }
  throw fo_error("bad formula node");
}

}  // namespace

bool eval_fo(const fo_ptr& s, const word_model& m, const fo_env& assignment) {
  if (!s) throw fo_error("null formula");
  eval_ctx ctx{m, assignment, {}};
  return eval_node(s, ctx);
}

namespace {

void collect_free(const fo_ptr& s, std::set<std::string>& bound,
                  std::vector<std::string>& out) {
  if (!s) return;
  if (s->k == kind::forall || s->k == kind::exists) {
    bool was_bound = bound.count(s->var) != 0;
    bound.insert(s->var);
    collect_free(s->a, bound, out);
    if (!was_bound) bound.erase(s->var);
    return;
  }
  for (const auto& t : s->args)
    if (t.k == fo_term::kind::variable && !bound.count(t.name) &&
        std::find(out.begin(), out.end(), t.name) == out.end())
      out.push_back(t.name);
  collect_free(s->a, bound, out);
  collect_free(s->b, bound, out);
}

}  // namespace

std::vector<std::string> free_variables(const fo_ptr& s) {
  std::set<std::string> bound;
  std::vector<std::string> out;
  collect_free(s, bound, out);
  return out;
}

std::optional<std::uint64_t> define_value(const fo_ptr& s, const word_model& m,
                                          const fo_env& assignment) {
  auto free = free_variables(s);
  std::vector<std::string> unassigned;
  for (const auto& v : free)
    if (!assignment.count(v)) unassigned.push_back(v);
  if (unassigned.size() != 1)
    throw fo_error("define_value needs exactly one free variable, got " +
                   std::to_string(unassigned.size()));
  std::optional<std::uint64_t> found;
  fo_env env = assignment;
  for (std::uint64_t v = 0; v < m.domain_size(); ++v) {
    env[unassigned[0]] = v;
    if (eval_fo(s, m, env)) {
      if (found) return std::nullopt;  // not unique
      found = v;
    }
  }
  return found;
}

namespace {

bool has_quantifier(const fo_ptr& s) {
  if (!s) return false;
  if (s->k == kind::forall || s->k == kind::exists) return true;
  return has_quantifier(s->a) || has_quantifier(s->b);
}

}  // namespace

fo_ptr iterate_block(const quantifier_block& block, fo_ptr psi, std::uint64_t t) {
  for (const auto& step : block)
    if (has_quantifier(step.guard))
      throw fo_error("block guards must be quantifier-free");
  fo_ptr f = std::move(psi);
  for (std::uint64_t copy = 0; copy < t; ++copy) {
    for (auto it = block.rbegin(); it != block.rend(); ++it) {
      fo_ptr body = it->universal ? fo_implies(it->guard, f) : fo_and(it->guard, f);
      f = it->universal ? fo_forall(it->var, body) : fo_exists(it->var, body);
    }
  }
  return f;
}

bool eval_fo_iterated(const quantifier_block& block, const fo_ptr& psi, std::uint64_t t,
                      const word_model& m, const fo_env& assignment) {
  return eval_fo(iterate_block(block, psi, t), m, assignment);
}

// ---------------------------------------------------------------------------
// domain squaring

namespace {

struct squarer {
  std::set<std::string> used;
  std::map<std::string, std::pair<std::string, std::string>> pairs;
  std::string b_var, p_var;
  bool needs_helpers = false;

  std::string fresh(const std::string& base) {
    std::string name = base;
    for (int i = 2; used.count(name); ++i) name = base + "_" + std::to_string(i);
    used.insert(name);
    return name;
  }

  const std::pair<std::string, std::string>& pair_of(const std::string& v) {
    auto it = pairs.find(v);
    if (it != pairs.end()) return it->second;
    std::string h = fresh(v + "_h"), l = fresh(v + "_l");
    return pairs.emplace(v, std::make_pair(h, l)).first->second;
  }

  // a term's (high, low) component terms
  std::pair<fo_term, fo_term> lift(const fo_term& t) {
    switch (t.k) {
      case fo_term::kind::variable: {
        const auto& [h, l] = pair_of(t.name);
        return {fo_term::var(h), fo_term::var(l)};
      }
      case fo_term::kind::literal:
        // small literals live in the low window; see the header contract
        return {fo_term::lit(0), t};
      case fo_term::kind::constant:
        throw unsupported_atom("constant symbols cannot be squared");
    }
    throw fo_error("bad term");
  }

  fo_ptr lt(fo_term a, fo_term b) {
    return fo_and(fo_atom(kind::le, {a, b}), fo_not(fo_atom(kind::eq, {a, b})));
  }

  fo_ptr go(const fo_ptr& s) {
    switch (s->k) {
      case kind::forall:
      case kind::exists: {
        const auto& [h, l] = pair_of(s->var);
        needs_helpers = true;
        fo_ptr body = go(s->a);
        fo_ptr guard = fo_not(fo_atom(kind::le, {fo_term::var(p_var), fo_term::var(l)}));
        if (s->k == kind::forall)
          return fo_forall(h, fo_forall(l, fo_implies(guard, body)));
        return fo_exists(h, fo_exists(l, fo_and(guard, body)));
      }
      case kind::conj: return fo_and(go(s->a), go(s->b));
      case kind::disj: return fo_or(go(s->a), go(s->b));
      case kind::neg: return fo_not(go(s->a));
      case kind::impl: return fo_implies(go(s->a), go(s->b));
      case kind::eq: {
        auto [ah, al] = lift(s->args[0]);
        auto [bh, bl] = lift(s->args[1]);
        return fo_and(fo_atom(kind::eq, {ah, bh}), fo_atom(kind::eq, {al, bl}));
      }
      case kind::le: {
        // lexicographic on (high, low) = numeric order of the pair values
        auto [ah, al] = lift(s->args[0]);
        auto [bh, bl] = lift(s->args[1]);
        return fo_or(lt(ah, bh), fo_and(fo_atom(kind::eq, {ah, bh}),
                                        fo_atom(kind::le, {al, bl})));
      }
      case kind::x_pred: {
        // letters exist only for values with high part 0
        auto [ih, il] = lift(s->args[0]);
        return fo_and(fo_atom(kind::eq, {ih, fo_term::lit(0)}),
                      fo_atom(kind::x_pred, {il}));
      }
      case kind::bit: {
        // bit'(i_h, i_l, j_h, j_l): the first B bits of the composite value
        // are stored in j_l, the bits from B upward in j_h
        needs_helpers = true;
        auto [ih, il] = lift(s->args[0]);
        auto [jh, jl] = lift(s->args[1]);
        std::string v = fresh("v"), tt = fresh("t"), dd = fresh("d");
        fo_term vt = fo_term::var(v), bt = fo_term::var(b_var), pt = fo_term::var(p_var);
        fo_ptr index_value = fo_exists(
            tt, fo_and(fo_atom(kind::times, {ih, pt, fo_term::var(tt)}),
                       fo_atom(kind::plus, {il, fo_term::var(tt), vt})));
        fo_ptr low_window =
            fo_and(fo_not(fo_atom(kind::le, {bt, vt})), fo_atom(kind::bit, {vt, jl}));
        fo_ptr high_window = fo_and(
            fo_atom(kind::le, {bt, vt}),
            fo_exists(dd, fo_and(fo_atom(kind::plus, {fo_term::var(dd), bt, vt}),
                                 fo_atom(kind::bit, {fo_term::var(dd), jh}))));
        return fo_exists(v, fo_and(index_value, fo_or(low_window, high_window)));
      }
      case kind::plus: {
        needs_helpers = true;
        auto [ah, al] = lift(s->args[0]);
        auto [bh, bl] = lift(s->args[1]);
        auto [ch, cl] = lift(s->args[2]);
        fo_term pt = fo_term::var(p_var);
        fo_ptr no_carry =
            fo_and(fo_atom(kind::plus, {al, bl, cl}), fo_atom(kind::plus, {ah, bh, ch}));
        std::string w = fresh("w"), hs = fresh("s");
        // carry: a_l + b_l = c_l + P  and  a_h + b_h + 1 = c_h
        fo_ptr low_carry = fo_exists(
            w, fo_and(fo_atom(kind::plus, {bl, fo_term::var(w), pt}),
                      fo_atom(kind::plus, {cl, fo_term::var(w), al})));
        fo_ptr high_carry = fo_exists(
            hs, fo_and(fo_atom(kind::plus, {ah, bh, fo_term::var(hs)}),
                       fo_atom(kind::plus, {fo_term::var(hs), fo_term::lit(1), ch})));
        return fo_or(no_carry, fo_and(low_carry, high_carry));
      }
      case kind::times: {
        auto [ah, al] = lift(s->args[0]);
        auto [bh, bl] = lift(s->args[1]);
        auto [ch, cl] = lift(s->args[2]);
        return fo_atom(kind::times2, {ah, al, bh, bl, ch, cl});
      }
      case kind::times2:
        throw unsupported_atom("formula is already squared");
    }
    throw fo_error("bad formula node");
  }
};

void collect_names(const fo_ptr& s, std::set<std::string>& names) {
  if (!s) return;
  if (!s->var.empty()) names.insert(s->var);
  for (const auto& t : s->args)
    if (t.k == fo_term::kind::variable) names.insert(t.name);
  collect_names(s->a, names);
  collect_names(s->b, names);
}

}  // namespace

fo_ptr square_domain(const fo_ptr& s) {
  if (!s) throw fo_error("null formula");
  squarer sq;
  collect_names(s, sq.used);
  sq.b_var = sq.fresh("b");
  sq.p_var = sq.fresh("p2");
  fo_ptr core = sq.go(s);
  if (!sq.needs_helpers) return core;
  // bind b = position of the top bit of #len and P = 2^b
  fo_term bt = fo_term::var(sq.b_var), pt = fo_term::var(sq.p_var);
  fo_term len = fo_term::cons("len");
  std::string c1 = sq.fresh("c"), c2 = sq.fresh("c");
  fo_ptr top_bit = fo_and(
      fo_atom(kind::bit, {bt, len}),
      fo_forall(c1, fo_implies(fo_atom(kind::bit, {fo_term::var(c1), len}),
                               fo_atom(kind::le, {fo_term::var(c1), bt}))));
  fo_ptr pow = fo_and(
      fo_atom(kind::bit, {bt, pt}),
      fo_forall(c2, fo_implies(fo_atom(kind::bit, {fo_term::var(c2), pt}),
                               fo_atom(kind::eq, {fo_term::var(c2), bt}))));
  return fo_exists(sq.b_var,
                   fo_and(top_bit, fo_exists(sq.p_var, fo_and(pow, core))));
}

// ---------------------------------------------------------------------------
// parser and printer

namespace {

struct parser {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool eat(const std::string& s) {
    skip_ws();
    if (text.compare(pos, s.size(), s) == 0) {
      pos += s.size();
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw fo_parse_error(std::string("expected '") + c + "'", pos);
  }

  std::optional<std::string> ident() {
    skip_ws();
    std::size_t start = pos;
    if (pos < text.size() &&
        (std::isalpha((unsigned char)text[pos]) || text[pos] == '_')) {
      ++pos;
      while (pos < text.size() &&
             (std::isalnum((unsigned char)text[pos]) || text[pos] == '_'))
        ++pos;
      return text.substr(start, pos - start);
    }
    return std::nullopt;
  }

  fo_term term() {
    skip_ws();
    if (pos < text.size() && std::isdigit((unsigned char)text[pos])) {
      std::uint64_t v = 0;
      while (pos < text.size() && std::isdigit((unsigned char)text[pos]))
        v = v * 10 + std::uint64_t(text[pos++] - '0');
      return fo_term::lit(v);
    }
    if (eat('#')) {
      auto name = ident();
      if (!name) throw fo_parse_error("expected constant name after '#'", pos);
      return fo_term::cons(*name);
    }
    auto name = ident();
    if (!name) throw fo_parse_error("expected term", pos);
    return fo_term::var(*name);
  }

  std::vector<fo_term> term_list(std::size_t arity) {
    expect('(');
    std::vector<fo_term> args;
    for (std::size_t i = 0; i < arity; ++i) {
      if (i) expect(',');
      args.push_back(term());
    }
    expect(')');
    return args;
  }

  fo_ptr sentence() {
    fo_ptr lhs = disjunction();
    skip_ws();
    if (eat("->")) return fo_implies(std::move(lhs), sentence());
    return lhs;
  }

  fo_ptr disjunction() {
    fo_ptr lhs = conjunction();
    while (true) {
      skip_ws();
      if (pos < text.size() && text[pos] == '|') {
        ++pos;
        lhs = fo_or(std::move(lhs), conjunction());
      } else {
        return lhs;
      }
    }
  }

  fo_ptr conjunction() {
    fo_ptr lhs = unary();
    while (eat('&')) lhs = fo_and(std::move(lhs), unary());
    return lhs;
  }

  fo_ptr unary() {
    skip_ws();
    if (eat('!')) return fo_not(unary());
    std::size_t save = pos;
    if (auto name = ident()) {
      if (*name == "forall" || *name == "exists") {
        auto v = ident();
        if (!v) throw fo_parse_error("expected variable after " + *name, pos);
        expect('.');
        fo_ptr body = sentence();
        return *name == "forall" ? fo_forall(*v, std::move(body))
                                 : fo_exists(*v, std::move(body));
      }
      static const std::map<std::string, kind> atoms = {
          {"le", kind::le},     {"eq", kind::eq},       {"bit", kind::bit},
          {"plus", kind::plus}, {"times", kind::times}, {"X", kind::x_pred},
          {"times2", kind::times2}};
      auto it = atoms.find(*name);
      if (it != atoms.end()) return fo_atom(it->second, term_list(atom_arity(it->second)));
      pos = save;
      throw fo_parse_error("unknown predicate '" + *name + "'", pos);
    }
    if (eat('(')) {
      fo_ptr inner = sentence();
      expect(')');
      return inner;
    }
    throw fo_parse_error("expected formula", pos);
  }
};

const char* atom_name(kind k) {
  switch (k) {
    case kind::le: return "le";
    case kind::eq: return "eq";
    case kind::bit: return "bit";
    case kind::plus: return "plus";
    case kind::times: return "times";
    case kind::x_pred: return "X";
    case kind::times2: return "times2";
    default: return "?";
  }
}

void print(const fo_ptr& s, std::ostream& os) {
  switch (s->k) {
    case kind::forall:
    case kind::exists:
      os << (s->k == kind::forall ? "forall " : "exists ") << s->var << ". ";
      print(s->a, os);
      return;
    case kind::conj:
    case kind::disj:
    case kind::impl: {
      const char* op = s->k == kind::conj ? " & " : s->k == kind::disj ? " | " : " -> ";
      os << '(';
      print(s->a, os);
      os << op;
      print(s->b, os);
      os << ')';
      return;
    }
    case kind::neg:
      os << '!';
      if (s->a->k == kind::forall || s->a->k == kind::exists) {
        os << '(';
        print(s->a, os);
        os << ')';
      } else {
        print(s->a, os);
      }
      return;
    default: {
      os << atom_name(s->k) << '(';
      for (std::size_t i = 0; i < s->args.size(); ++i) {
        if (i) os << ", ";
        const auto& t = s->args[i];
        if (t.k == fo_term::kind::literal)
          os << t.value;
        else if (t.k == fo_term::kind::constant)
          os << '#' << t.name;
        else
          os << t.name;
      }
      os << ')';
    }
  }
}

}  // namespace

fo_ptr parse_sentence(const std::string& text) {
  parser p{text};
  fo_ptr s = p.sentence();
  p.skip_ws();
  if (p.pos != text.size()) throw fo_parse_error("trailing input", p.pos);
  return s;
}

std::string to_string(const fo_ptr& s) {
  std::ostringstream os;
  print(s, os);
  return os.str();
}

fo_ptr sqrt_formula(const std::string& var) {
  fo_term r = fo_term::var(var), len = fo_term::cons("len");
  fo_ptr lower = fo_exists(
      "c", fo_and(fo_atom(kind::times, {r, r, fo_term::var("c")}),
                  fo_atom(kind::le, {fo_term::var("c"), len})));
  // forall s: s > r -> not exists c2 (s*s = c2 and c2 <= #len)
  fo_term s = fo_term::var("s");
  fo_ptr s_sq_small = fo_exists(
      "c2", fo_and(fo_atom(kind::times, {s, s, fo_term::var("c2")}),
                   fo_atom(kind::le, {fo_term::var("c2"), len})));
  fo_ptr upper =
      fo_forall("s", fo_implies(fo_not(fo_atom(kind::le, {s, r})), fo_not(s_sq_small)));
  return fo_and(lower, upper);
}

quantifier_block reachability_block() {
  // One edge step x -> y over 2-node adjacency words (bit 2u + v of the word
  // is the edge u -> v). The helper values 2x and 2x + y get their own block
  // positions so every guard stays quantifier-free.
  auto v = [](const char* n) { return fo_term::var(n); };
  quantifier_block block;
  block.push_back({false, "y", fo_atom(kind::le, {v("y"), fo_term::lit(1)})});
  block.push_back({false, "t2", fo_and(fo_atom(kind::le, {v("x"), fo_term::lit(1)}),
                                       fo_atom(kind::times, {v("x"), fo_term::lit(2), v("t2")}))});
  block.push_back({false, "e", fo_and(fo_atom(kind::plus, {v("t2"), v("y"), v("e")}),
                                      fo_atom(kind::x_pred, {v("e")}))});
  block.push_back({false, "x", fo_atom(kind::eq, {v("x"), v("y")})});
  return block;
}

}  // namespace paracirc
