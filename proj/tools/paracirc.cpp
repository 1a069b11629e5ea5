// paracirc: connection languages, circuit materialization and transformations
// for parameterized circuit families.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "paracirc/circuit_io.hpp"
#include "paracirc/counting.hpp"
#include "paracirc/families.hpp"
#include "paracirc/fologic.hpp"
#include "paracirc/kernels.hpp"
#include "paracirc/ratm_compile.hpp"
#include "paracirc/transforms.hpp"

using namespace paracirc;

namespace {

struct cli_failure {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) {
  throw cli_failure{code, message};
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) fail(2, "cannot open " + path);
  out << content;
}

std::string read_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(2, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bitstring checked_bits(const std::string& s, const char* what) {
  if (!is_bits(s)) fail(2, std::string(what) + " must be a string over 0/1");
  return s;
}

builtin_family family_or_fail(const std::string& name) {
  try {
    return builtin(name);
  } catch (const unknown_family& e) {
    fail(2, e.what());
  }
}

machine_desc machine_arg(const std::string& spec) {
  std::string text;
  if (spec.rfind("builtin:", 0) == 0) {
    std::string name = spec.substr(8);
    auto names = builtin_machine_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
      fail(2, "unknown builtin machine '" + name + "'");
    return builtin_machine(name);
  }
  return parse_machine(read_input(spec));
}

substitution_plan plan_arg(const std::shared_ptr<const family_oracle>& a,
                           const std::string& mark) {
  substitution_plan plan;
  plan.fanin = [a](gate_id g, std::uint64_t n, std::uint64_t k) {
    return oracle_preds(*a, g, n, k).size();
  };
  auto internal = [a](gate_id g, std::uint64_t n, std::uint64_t k) {
    if (g < n) return false;
    auto outs = a->output_ids(n, k);
    return std::find(outs.begin(), outs.end(), g) == outs.end();
  };
  if (mark == "none") {
    plan.marker = [](gate_id, std::uint64_t, std::uint64_t) { return false; };
  } else if (mark == "and" || mark == "or" || mark == "not") {
    gate_type want = mark == "and"   ? gate_type::g_and
                     : mark == "or" ? gate_type::g_or
                                    : gate_type::g_not;
    plan.marker = [a, want, internal](gate_id g, std::uint64_t n, std::uint64_t k) {
      return internal(g, n, k) && a->type_of(g, n, k) == want;
    };
  } else if (mark.rfind("gate:", 0) == 0) {
    gate_id target = std::stoull(mark.substr(5));
    plan.marker = [target, internal](gate_id g, std::uint64_t n, std::uint64_t k) {
      return g == target && internal(g, n, k);
    };
  } else {
    fail(2, "--mark must be one of and, or, not, none, gate:<num>");
  }
  return plan;
}

fo_env consts_arg(const std::vector<std::string>& pairs) {
  fo_env env;
  for (const auto& p : pairs) {
    auto eq = p.find('=');
    if (eq == std::string::npos) fail(2, "--const expects name=value");
    env[p.substr(0, eq)] = std::stoull(p.substr(eq + 1));
  }
  return env;
}

quantifier_block block_arg(const std::vector<std::string>& steps) {
  quantifier_block block;
  for (const auto& s : steps) {
    std::istringstream ss(s);
    std::string quant, var, dot;
    ss >> quant >> var >> dot;
    if ((quant != "forall" && quant != "exists") || dot != ".")
      fail(2, "--step expects 'forall|exists <var> . <guard>'");
    std::string guard;
    std::getline(ss, guard);
    block.push_back({quant == "forall", var, parse_sentence(guard)});
  }
  return block;
}

int run(int argc, char** argv) {
  CLI::App app{"connection-language toolkit for parameterized circuit families"};
  app.require_subcommand(1);
  argv = app.ensure_utf8(argv);

  // ----- codec ------------------------------------------------------------
  auto* codec = app.add_subcommand("codec", "self-delimiting list encoding");
  codec->require_subcommand(1);
  std::vector<std::string> codec_items;
  auto* enc = codec->add_subcommand("encode", "encode items into one word");
  enc->add_option("items", codec_items, "items (ASCII bitstrings, possibly empty)");

  std::string codec_word;
  auto* dec = codec->add_subcommand("decode", "split a word into its items");
  dec->add_option("word", codec_word)->required();

  std::string proj_word;
  std::uint64_t proj_index = 0;
  auto* proj = codec->add_subcommand("project", "total projection onto item i");
  proj->add_option("word", proj_word)->required();
  proj->add_option("index", proj_index)->required();

  // ----- family -----------------------------------------------------------
  auto* family = app.add_subcommand("family", "built-in parameterized families");
  family->require_subcommand(1);
  std::string fam_name, fam_input, fam_out, fam_circuit, fam_witness;
  std::uint64_t fam_n = 0, fam_k = 0, fam_nmax = 0, fam_fuzz = 50, fam_seed = 1;
  std::uint64_t max_gates = 1ull << 14, exhaustive_cap = 12;
  bool fam_dot = false;

  auto* fmat = family->add_subcommand("materialize", "build one circuit slice");
  fmat->add_option("name", fam_name)->required();
  fmat->add_option("--n", fam_n)->required();
  fmat->add_option("--k", fam_k)->required();
  fmat->add_flag("--dot", fam_dot, "emit graphviz instead of json");
  fmat->add_option("-o,--out", fam_out);
  fmat->add_option("--max-gates", max_gates);

  auto* fev = family->add_subcommand("eval", "evaluate a slice on an input");
  fev->add_option("name", fam_name)->required();
  fev->add_option("--input", fam_input)->required();
  fev->add_option("--n", fam_n, "defaults to the input length");
  fev->add_option("--k", fam_k, "defaults to kappa(input)");

  auto* fwords = family->add_subcommand("words", "enumerate direct connection words");
  fwords->add_option("name", fam_name)->required();
  fwords->add_option("--n", fam_n)->required();
  fwords->add_option("--k", fam_k)->required();
  fwords->add_option("-o,--out", fam_out);
  fwords->add_option("--max-gates", max_gates);

  auto* fchk = family->add_subcommand("check", "coherence, consistency and witness checks");
  fchk->add_option("name", fam_name)->required();
  fchk->add_option("--n", fam_n);
  fchk->add_option("--k", fam_k);
  fchk->add_option("--nmax", fam_nmax, "check all n up to this, k from kappa");
  fchk->add_option("--circuit", fam_circuit, "json circuit to compare against the oracle");
  fchk->add_option("--witness", fam_witness, "built-in uniformity witness to run");
  fchk->add_option("--fuzz", fam_fuzz, "non-words sampled per slice");
  fchk->add_option("--seed", fam_seed);
  fchk->add_option("--exhaustive-cap", exhaustive_cap, "largest n checked exhaustively");
  fchk->add_option("--max-gates", max_gates);

  // ----- machine ----------------------------------------------------------
  auto* machine = app.add_subcommand("machine", "multitape and random-access machines");
  machine->require_subcommand(1);
  std::string m_spec, m_input, m_out;
  std::uint64_t m_cap = 1ull << 16, m_t = 1, m_n = 0, m_from = 0, m_count = 0;
  bool m_trace = false;

  auto* mrun = machine->add_subcommand("run", "simulate on an input");
  mrun->add_option("machine", m_spec, "description file or builtin:<name>")->required();
  mrun->add_option("--input", m_input)->required();
  mrun->add_option("--cap", m_cap);
  mrun->add_flag("--trace", m_trace);

  auto* mcomp = machine->add_subcommand("compile", "branch a capped run into a circuit");
  mcomp->add_option("machine", m_spec)->required();
  mcomp->add_option("--t", m_t, "step budget")->required();
  mcomp->add_option("--n", m_n, "input length")->required();
  mcomp->add_option("-o,--out", m_out);
  mcomp->add_option("--max-gates", max_gates);

  auto* mcount = machine->add_subcommand("count", "tape operations of binary counting");
  mcount->add_option("--from", m_from)->required();
  mcount->add_option("--count", m_count)->required();

  // ----- transform ----------------------------------------------------------
  auto* transform = app.add_subcommand("transform", "family constructions");
  transform->require_subcommand(1);
  std::string t_family, t_inner, t_mark = "none", t_out, t_in, t_decide, t_mode = "oracle";
  std::uint64_t t_n = 0, t_k = 0, t_layers = 0, t_width = 0, t_bits = 0;
  bool t_renumber = false, t_verbose = false, t_dot = false;

  auto* tsub = transform->add_subcommand("substitute", "replace marked gates by a family");
  tsub->add_option("--family", t_family)->required();
  tsub->add_option("--inner", t_inner)->required();
  tsub->add_option("--mark", t_mark, "and | or | not | none | gate:<num>");
  tsub->add_option("--n", t_n)->required();
  tsub->add_option("--k", t_k)->required();
  tsub->add_flag("--renumber", t_renumber);
  tsub->add_flag("--dot", t_dot);
  tsub->add_option("-o,--out", t_out);
  tsub->add_option("--max-gates", max_gates);

  auto* tsim = transform->add_subcommand("simgate", "layered simulation of a family");
  tsim->add_option("--family", t_family)->required();
  tsim->add_option("--n", t_n)->required();
  tsim->add_option("--k", t_k)->required();
  tsim->add_option("--layers", t_layers, "defaults to the family's layer requirement");
  tsim->add_option("--width", t_width, "simgates per layer, defaults to the bound");
  tsim->add_option("--mode", t_mode, "oracle | decider");
  tsim->add_flag("--renumber", t_renumber);
  tsim->add_flag("--dot", t_dot);
  tsim->add_option("-o,--out", t_out);
  tsim->add_option("--max-gates", max_gates);

  std::uint64_t t_pathcap = 0;
  auto* tlay = transform->add_subcommand("layered-e", "path-traceable layered family");
  tlay->add_option("--family", t_family)->required();
  tlay->add_option("--n", t_n)->required();
  tlay->add_option("--k", t_k)->required();
  tlay->add_option("--step-bits", t_bits, "L, defaults to the smallest that fits");
  tlay->add_option("--path-cap", t_pathcap, "override the derived path-length cap");
  tlay->add_option("--decide", t_decide, "extended connection word to trace");
  tlay->add_flag("--verbose", t_verbose, "log tracked variables while tracing");
  tlay->add_flag("--dot", t_dot);
  tlay->add_option("-o,--out", t_out);
  tlay->add_option("--max-gates", max_gates);

  auto* tren = transform->add_subcommand("renumber", "flatten to an admissible numbering");
  tren->add_option("--in", t_in, "json circuit")->required();
  tren->add_option("-o,--out", t_out);

  // ----- fo ---------------------------------------------------------------
  auto* fo = app.add_subcommand("fo", "first-order logic on word models");
  fo->require_subcommand(1);
  std::string fo_sentence, fo_word, fo_psi, fo_name;
  std::vector<std::string> fo_consts, fo_steps;
  std::uint64_t fo_len = 0, fo_t = 0;

  auto* foev = fo->add_subcommand("eval", "evaluate a sentence");
  foev->add_option("--sentence", fo_sentence)->required();
  foev->add_option("--word", fo_word)->required();
  foev->add_option("--const", fo_consts, "name=value bindings");

  auto* fodef = fo->add_subcommand("define", "unique defined value of a formula");
  fodef->add_option("formula", fo_name, "'sqrt' or a formula with one free variable")
      ->required();
  fodef->add_option("--len", fo_len, "evaluate on the all-ones word of this length");
  fodef->add_option("--word", fo_word);
  fodef->add_option("--const", fo_consts);

  auto* foit = fo->add_subcommand("iterate", "evaluate an iterated quantifier block");
  foit->add_option("--step", fo_steps, "'forall|exists <var> . <guard>' per copy entry");
  foit->add_option("--block", fo_name, "builtin block name: reachability");
  foit->add_option("--psi", fo_psi)->required();
  foit->add_option("--t", fo_t)->required();
  foit->add_option("--word", fo_word)->required();
  foit->add_option("--const", fo_consts);

  auto* fosq = fo->add_subcommand("square", "two-variable domain squaring");
  fosq->add_option("--sentence", fo_sentence)->required();
  fosq->add_option("--word", fo_word, "also evaluate the squared sentence");
  fosq->add_option("--const", fo_consts);

  // ----- export -------------------------------------------------------------
  auto* exp = app.add_subcommand("export", "emit circuits as json or dot");
  exp->require_subcommand(1);
  std::string e_family, e_in, e_out;
  std::uint64_t e_n = 0, e_k = 0;
  for (const char* fmt : {"json", "dot"}) {
    auto* sub = exp->add_subcommand(fmt, std::string("write ") + fmt);
    sub->add_option("--family", e_family);
    sub->add_option("--in", e_in, "re-export an existing json circuit");
    sub->add_option("--n", e_n);
    sub->add_option("--k", e_k);
    sub->add_option("-o,--out", e_out);
    sub->add_option("--max-gates", max_gates);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  materialize_limits lim;
  lim.max_gates = max_gates;

  // ----- dispatch -----------------------------------------------------------
  if (enc->parsed()) {
    for (const auto& item : codec_items) checked_bits(item, "item");
    std::cout << encode_list({codec_items.begin(), codec_items.end()}) << "\n";
    return 0;
  }
  if (dec->parsed()) {
    auto items = decode_list(checked_bits(codec_word, "word"));
    if (!items) fail(1, "not a list encoding");
    std::cout << items->size() << " items\n";
    for (const auto& item : *items) std::cout << item << "\n";
    return 0;
  }
  if (proj->parsed()) {
    std::cout << project(checked_bits(proj_word, "word"), proj_index) << "\n";
    return 0;
  }

  if (fmat->parsed()) {
    auto fam = family_or_fail(fam_name);
    circuit c = materialize(*fam.oracle, fam_n, fam_k, lim);
    write_output(fam_out, fam_dot ? circuit_to_dot(c) : circuit_to_json(c));
    return 0;
  }
  if (fev->parsed()) {
    auto fam = family_or_fail(fam_name);
    bitstring x = checked_bits(fam_input, "input");
    std::uint64_t n = fev->count("--n") ? fam_n : x.size();
    std::uint64_t k = fev->count("--k") ? fam_k : fam.problem.kappa(x);
    std::cout << evaluate(materialize(*fam.oracle, n, k, lim), x) << "\n";
    return 0;
  }
  if (fwords->parsed()) {
    auto fam = family_or_fail(fam_name);
    std::ostringstream ss;
    for (const auto& w : enumerate_direct_words(*fam.oracle, fam_n, fam_k, lim))
      ss << w.encode() << "\n";
    write_output(fam_out, ss.str());
    return 0;
  }
  if (fchk->parsed()) {
    auto fam = family_or_fail(fam_name);
    if (!fam_circuit.empty()) {
      circuit c = circuit_from_json(read_input(fam_circuit));
      auto report = consistency_check(c, *fam.oracle, fam_n, fam_k, lim);
      for (const auto& r : report) std::cout << r << "\n";
      std::cout << (report.empty() ? "ok" : "FAIL") << "\n";
      return report.empty() ? 0 : 1;
    }
    if (!fam_witness.empty()) {
      uniformity_witness w;
      try {
        w = builtin_witness(fam_witness);
      } catch (const unknown_family& e) {
        fail(2, e.what());
      }
      std::vector<std::pair<std::uint64_t, std::uint64_t>> grid;
      if (fam_nmax)
        for (std::uint64_t n = 1; n <= fam_nmax; ++n)
          grid.emplace_back(n, fam.problem.kappa(bitstring(n, '1')));
      else
        grid.emplace_back(fam_n, fam_k);
      auto report = check_witness(*fam.oracle, w, grid, fam_fuzz, fam_seed, lim);
      report.print(std::cout);
      return report.ok() ? 0 : 1;
    }
    // predicate/oracle coherence over a kappa-consistent range
    std::uint64_t lo = fam_nmax ? 1 : fam_n, hi = fam_nmax ? fam_nmax : fam_n;
    std::uint64_t violations = 0, slices = 0;
    for (std::uint64_t n = lo; n <= hi; ++n) {
      std::uint64_t k = fchk->count("--k") ? fam_k : fam.problem.kappa(bitstring(n, '1'));
      circuit c = materialize(*fam.oracle, n, k, lim);
      ++slices;
      if (n > exhaustive_cap) fail(2, "exhaustive check capped at n = " +
                                          std::to_string(exhaustive_cap));
      auto table = kernels::truth_table(c);
      for (std::uint64_t x = 0; x < table.size(); ++x) {
        bitstring w(n, '0');
        for (std::uint64_t i = 0; i < n; ++i) w[i] = (x >> i & 1) ? '1' : '0';
        if (bool(table[x]) != fam.problem.membership(w)) {
          std::cout << "(" << n << "," << k << ") " << w << " circuit disagrees\n";
          ++violations;
        }
      }
    }
    std::cout << (violations ? "FAIL" : "ok") << ": " << slices << " slices\n";
    return violations ? 1 : 0;
  }

  if (mrun->parsed()) {
    machine_desc m = machine_arg(m_spec);
    bitstring x = checked_bits(m_input, "input");
    run_result r = m.is_ratm()
                       ? simulate_ratm(m, x, m_cap, m_trace ? &std::cerr : nullptr)
                       : simulate_dtm(m, x, m_cap);
    std::cout << verdict_name(r.v) << " steps=" << r.steps;
    if (m.is_ratm()) {
      std::cout << " queries=";
      for (const auto& q : r.query_log) {
        std::cout << "(" << (q.address ? std::to_string(*q.address) : "none") << ","
                  << (q.response == qresponse::zero  ? "0"
                      : q.response == qresponse::one ? "1"
                                                     : "_")
                  << ")";
      }
    }
    std::cout << "\n";
    return 0;
  }
  if (mcomp->parsed()) {
    circuit c = compile_ratm(machine_arg(m_spec), m_t, m_n, max_gates);
    write_output(m_out, circuit_to_json(c));
    return 0;
  }
  if (mcount->parsed()) {
    auto trace = count_binary_trace(m_from, m_count);
    std::cout << trace.total() << " (writes=" << trace.writes << " moves=" << trace.moves
              << ")\n";
    return 0;
  }

  if (tsub->parsed()) {
    auto fam = family_or_fail(t_family);
    auto inner = family_or_fail(t_inner);
    auto plan = plan_arg(fam.oracle, t_mark);
    validate_plan(*fam.oracle, *inner.oracle, plan, t_n, t_k, lim);
    auto sub = substitute(fam.oracle, inner.oracle, plan);
    circuit c = materialize(*sub, t_n, t_k, lim);
    if (t_renumber) c = canonical_renumber(c);
    write_output(t_out, t_dot ? circuit_to_dot(c) : circuit_to_json(c));
    return 0;
  }
  if (tsim->parsed()) {
    auto fam = family_or_fail(t_family);
    simgate_layout layout;
    layout.d = t_layers ? t_layers : required_layers(materialize(*fam.oracle, t_n, t_k, lim));
    layout.n_simgates = t_width ? t_width : fam.oracle->numbering_bound(t_n, t_k);
    if (t_mode == "decider")
      layout.mode = simgate_layout::query_mode::substituted_decider;
    else if (t_mode != "oracle")
      fail(2, "--mode must be oracle or decider");
    circuit c = build_simgate_family(*fam.oracle, t_n, t_k, layout, lim);
    if (t_renumber) c = canonical_renumber(c);
    write_output(t_out, t_dot ? circuit_to_dot(c) : circuit_to_json(c));
    return 0;
  }
  if (tlay->parsed()) {
    auto fam = family_or_fail(t_family);
    std::uint64_t bits =
        t_bits ? t_bits : min_step_bits(fam.oracle->numbering_bound(t_n, t_k));
    auto layered = build_layered_e(*fam.oracle, t_n, t_k, bits, lim);
    if (t_pathcap) layered.path_cap = t_pathcap;
    if (!t_decide.empty()) {
      auto r = trace_extended(layered, checked_bits(t_decide, "word"), true,
                              t_verbose ? &std::cerr : nullptr);
      if (r.accept)
        std::cout << "accept\n";
      else
        std::cout << "reject (" << trace_reject_name(r.reject) << ")\n";
      return 0;
    }
    write_output(t_out, t_dot ? circuit_to_dot(layered.circ) : circuit_to_json(layered.circ));
    return 0;
  }
  if (tren->parsed()) {
    circuit c = canonical_renumber(circuit_from_json(read_input(t_in)));
    write_output(t_out, circuit_to_json(c));
    return 0;
  }

  if (foev->parsed()) {
    bool r = eval_fo(parse_sentence(fo_sentence), {checked_bits(fo_word, "word")},
                     consts_arg(fo_consts));
    std::cout << (r ? "1" : "0") << "\n";
    return 0;
  }
  if (fodef->parsed()) {
    fo_ptr s = fo_name == "sqrt" ? sqrt_formula() : parse_sentence(fo_name);
    word_model m{fodef->count("--word") ? checked_bits(fo_word, "word")
                                        : bitstring(fo_len, '1')};
    auto v = define_value(s, m, consts_arg(fo_consts));
    if (!v) {
      std::cout << "none\n";
      return 1;
    }
    std::cout << *v << "\n";
    return 0;
  }
  if (foit->parsed()) {
    quantifier_block block;
    if (!fo_steps.empty())
      block = block_arg(fo_steps);
    else if (fo_name == "reachability")
      block = reachability_block();
    else
      fail(2, "provide --step entries or --block reachability");
    bool r = eval_fo_iterated(block, parse_sentence(fo_psi), fo_t,
                              {checked_bits(fo_word, "word")}, consts_arg(fo_consts));
    std::cout << (r ? "1" : "0") << "\n";
    return 0;
  }
  if (fosq->parsed()) {
    fo_ptr squared = square_domain(parse_sentence(fo_sentence));
    std::cout << to_string(squared) << "\n";
    if (fosq->count("--word")) {
      bool r = eval_fo(squared, {checked_bits(fo_word, "word")}, consts_arg(fo_consts));
      std::cout << (r ? "1" : "0") << "\n";
    }
    return 0;
  }

  for (auto* sub : exp->get_subcommands()) {
    if (!sub->parsed()) continue;
    circuit c;
    if (!e_in.empty())
      c = circuit_from_json(read_input(e_in));
    else if (!e_family.empty())
      c = materialize(*family_or_fail(e_family).oracle, e_n, e_k, lim);
    else
      fail(2, "export needs --family or --in");
    write_output(e_out, sub->get_name() == "dot" ? circuit_to_dot(c) : circuit_to_json(c));
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const cli_failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const fo_parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const machine_parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
