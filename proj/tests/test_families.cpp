#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "paracirc/families.hpp"
#include "paracirc/kernels.hpp"
#include "paracirc/transforms.hpp"

using namespace paracirc;

namespace {

bitstring to_bits(std::uint64_t x, std::size_t n) {
  bitstring w(n, '0');
  for (std::size_t i = 0; i < n; ++i) w[i] = (x >> i & 1) ? '1' : '0';
  return w;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> kappa_grid(const builtin_family& fam,
                                                                std::uint64_t max_n) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> grid;
  for (std::uint64_t n = 1; n <= max_n; ++n)
    grid.emplace_back(n, fam.problem.kappa(bitstring(n, '1')));
  return grid;
}

}  // namespace

TEST_CASE("unknown names are reported") {
  CHECK_THROWS_AS(builtin("no-such-family"), unknown_family);
  CHECK_THROWS_AS(builtin_witness("no-such-witness"), unknown_family);
}

TEST_CASE("oracles and membership predicates agree on every builtin") {
  for (const auto& name : builtin_family_names()) {
    auto fam = builtin(name);
    for (std::uint64_t n = 0; n <= 8; ++n) {
      std::uint64_t k = fam.problem.kappa(bitstring(n, '1'));
      circuit c = materialize(*fam.oracle, n, k);
      CHECK(validate_numbering(c, {n, k, fam.oracle->numbering_bound(n, k)}).empty());
      for (std::uint64_t x = 0; x < (1ull << n); ++x) {
        bitstring w = to_bits(x, n);
        CHECK((evaluate(c, w) == "1") == fam.problem.membership(w));
      }
    }
  }
}

TEST_CASE("specific slices") {
  auto fig1 = builtin("fig1-equality");
  CHECK(fig1.problem.membership("11011"));
  CHECK(!fig1.problem.membership("10011"));

  auto sqrt_fam = builtin("sqrt-wire");
  bitstring w(9, '0');
  w[3] = '1';  // floor(sqrt(9)) = 3
  CHECK(sqrt_fam.problem.membership(w));
  CHECK(evaluate(materialize(*sqrt_fam.oracle, 9, 3), w) == "1");
  w[3] = '0';
  CHECK(!sqrt_fam.problem.membership(w));

  auto one = builtin("const1");
  CHECK(one.problem.membership(""));
  CHECK(one.problem.membership("0101"));
}

TEST_CASE("kappa matches the integer square root") {
  auto fig1 = builtin("fig1-equality");
  for (std::uint64_t n = 0; n <= 256; ++n) {
    std::uint64_t k = fig1.problem.kappa(bitstring(n, '0'));
    CHECK(k * k <= n);
    CHECK((k + 1) * (k + 1) > n);
  }
}

TEST_CASE("simgate pipeline preserves membership for every builtin") {
  for (const auto& name : builtin_family_names()) {
    auto fam = builtin(name);
    for (std::uint64_t n : {1, 3, 5}) {
      std::uint64_t k = fam.problem.kappa(bitstring(n, '1'));
      simgate_layout layout;
      layout.d = required_layers(materialize(*fam.oracle, n, k));
      layout.n_simgates = fam.oracle->numbering_bound(n, k);
      circuit d = build_simgate_family(*fam.oracle, n, k, layout);
      for (std::uint64_t x = 0; x < (1ull << n); ++x) {
        bitstring w = to_bits(x, n);
        CHECK((evaluate(d, w) == "1") == fam.problem.membership(w));
      }
    }
  }
}

TEST_CASE("budget bounds") {
  budget_spec linear{budget_spec::shape::linear, 3, {2, 5}};
  CHECK(linear.bound(10, 0) == 36);
  CHECK(linear.bound(10, 1) == 45);
  CHECK(linear.bound(10, 9) == 45);  // table end reused
  budget_spec logt{budget_spec::shape::logtime, 2, {1}};
  CHECK(logt.bound(16, 0) == 2 * (4 + 1 + 1));
}

TEST_CASE("the sqrt-wire fo witness is correct on the full grid") {
  auto fam = builtin("sqrt-wire");
  auto witness = builtin_witness("sqrt-wire-fo");
  auto report = check_witness(*fam.oracle, witness, kappa_grid(fam, 36), 30, 17);
  if (!report.ok()) {
    std::ostringstream ss;
    report.print(ss);
    INFO(ss.str());
  }
  CHECK(report.ok());
  CHECK(report.slices == 36);
  CHECK(report.words_checked > 36 * 30);
}

TEST_CASE("negative control: accept-everything witness fails") {
  auto fam = builtin("fig1-equality");
  auto witness = builtin_witness("accept-all-bd");
  auto report = check_witness(*fam.oracle, witness, {{5, 2}, {6, 2}}, 40, 3);
  CHECK(!report.ok());
  bool correctness = false;
  for (const auto& v : report.violations)
    if (v.what.find("non-word") != std::string::npos) correctness = true;
  CHECK(correctness);
}

TEST_CASE("negative control: zero budget fails on every word") {
  auto fam = builtin("const1");
  auto witness = builtin_witness("reject-all-zero-budget");
  auto report = check_witness(*fam.oracle, witness, {{4, 0}}, 25, 5);
  CHECK(!report.ok());
  for (const auto& v : report.violations) {
    CHECK(v.what == "step budget exceeded");
    CHECK(v.budget == 0);
    CHECK(v.steps > 0);
  }
}

TEST_CASE("reject-all is a correct witness for empty connection languages") {
  auto fam = builtin("const1");
  auto witness = builtin_witness("reject-all-bd");
  auto report = check_witness(*fam.oracle, witness, {{3, 0}, {5, 0}}, 40, 9);
  std::ostringstream ss;
  report.print(ss);
  CHECK(report.ok());
  CHECK(ss.str().find("ok:") != std::string::npos);

  // the random-access variant runs under a logtime-shaped budget
  auto ratm = builtin_witness("reject-all-d");
  auto report_d = check_witness(*fam.oracle, ratm, {{3, 0}, {16, 0}}, 40, 9);
  CHECK(report_d.ok());
  // and fails against a family whose language is nonempty
  auto fig1 = builtin("fig1-equality");
  CHECK(!check_witness(*fig1.oracle, ratm, {{5, 2}}, 10, 9).ok());
}

TEST_CASE("the sqrt wire goes to the right input") {
  auto fam = builtin("sqrt-wire");
  circuit c = materialize(*fam.oracle, 9, 3);
  REQUIRE(c.outputs == std::vector<gate_id>{9});
  CHECK(c.gates.at(9).type == gate_type::g_or);
  CHECK(c.gates.at(9).preds == std::vector<gate_id>{3});
}

TEST_CASE("report format lists slice, word and budget") {
  auto fam = builtin("const1");
  auto report = check_witness(*fam.oracle, builtin_witness("reject-all-zero-budget"),
                              {{2, 0}}, 5, 1);
  std::ostringstream ss;
  report.print(ss);
  CHECK(ss.str().find("(2,0) ") != std::string::npos);
  CHECK(ss.str().find("budget=0") != std::string::npos);
  CHECK(ss.str().find("FAIL") != std::string::npos);
}

TEST_CASE("fuzzed words are deterministic per seed") {
  auto fam = builtin("fig1-equality");
  auto words = enumerate_direct_words(*fam.oracle, 5, 2);
  CHECK(fuzz_words(words, 20, 7) == fuzz_words(words, 20, 7));
  CHECK(fuzz_words(words, 20, 7) != fuzz_words(words, 20, 8));
}
