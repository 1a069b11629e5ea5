#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "paracirc/codec.hpp"

using namespace paracirc;

namespace {

// Test-only oracle: enumerate every parse of w as a list by brute force,
// independently of the decoder's single left-to-right pass.
void all_parses(const bitstring& w, std::size_t pos, std::vector<bitstring>& acc,
                std::vector<std::vector<bitstring>>& out) {
  if (pos == w.size()) {
    out.push_back(acc);
    return;
  }
  // try every possible delta block length (in digit pairs) at pos
  for (std::size_t digits = 0;; ++digits) {
    std::size_t sep = pos + 2 * digits;
    if (sep + 2 > w.size()) break;
    bool ok = true;
    bitstring len_bits;
    for (std::size_t d = 0; d < digits; ++d) {
      char a = w[pos + 2 * d], b = w[pos + 2 * d + 1];
      if (a != b) { ok = false; break; }
      len_bits.push_back(a);
    }
    if (!ok) break;  // a mismatched pair also blocks longer delta blocks
    if (w[sep] != '0' || w[sep + 1] != '1') continue;
    if (!is_canonical_numeral(len_bits)) continue;
    auto len = bits_to_nat(len_bits);
    if (!len || *len > w.size() - sep - 2) continue;
    acc.push_back(w.substr(sep + 2, *len));
    all_parses(w, sep + 2 + *len, acc, out);
    acc.pop_back();
  }
}

std::vector<std::vector<bitstring>> parses(const bitstring& w) {
  std::vector<std::vector<bitstring>> out;
  std::vector<bitstring> acc;
  all_parses(w, 0, acc, out);
  return out;
}

bitstring random_bits(std::mt19937_64& rng, std::size_t len) {
  bitstring w(len, '0');
  for (auto& c : w) c = (rng() & 1) ? '1' : '0';
  return w;
}

}  // namespace

TEST_CASE("worked example is bit-exact") {
  // <0, 00, 000> => 11 01 0 1100 01 00 1111 01 000
  CHECK(encode_list({"0", "00", "000"}) == "1101011000100111101000");
  auto dec = decode_list("1101011000100111101000");
  REQUIRE(dec);
  CHECK(*dec == std::vector<bitstring>{"0", "00", "000"});
}

TEST_CASE("empty list and empty item") {
  CHECK(encode_list({}) == "");
  auto dec = decode_list("");
  REQUIRE(dec);
  CHECK(dec->empty());
  // delta(0) = "00": doubled canonical numeral of zero
  CHECK(encode_list({""}) == "0001");
  auto one = decode_list("0001");
  REQUIRE(one);
  CHECK(*one == std::vector<bitstring>{""});
}

TEST_CASE("malformed strings are rejected") {
  CHECK(!decode_list("10"));
  CHECK(parses("10").empty());  // oracle agrees: nothing encodes to "10"
  CHECK(!decode_list("11"));    // separator missing
  CHECK(!decode_list("1101"));  // truncated payload (delta says 1 bit)
  CHECK(!decode_list("01"));    // empty delta block is not a numeral
  CHECK(!decode_list("0000110100"));  // leading-zero delta "001"
  CHECK(!decode_list("110100"));      // trailing garbage after item
  CHECK(!decode_list("1z01"));        // non-binary characters
}

TEST_CASE("projection is total") {
  bitstring w = encode_list({"0", "00", "000"});
  CHECK(project(w, 0) == "0");
  CHECK(project(w, 1) == "00");
  CHECK(project(w, 2) == "000");
  CHECK(project(w, 3) == "0");
  CHECK(project(w, 7) == "0");
  CHECK(project("10", 0) == "0");
  CHECK(project("", 5) == "0");
}

TEST_CASE("numerals") {
  CHECK(nat_to_bits(0) == "0");
  CHECK(nat_to_bits(5) == "101");
  CHECK(nat_to_bits(1) == "1");
  CHECK(bits_to_nat("101") == 5);
  CHECK(bits_to_nat("0") == 0);
  CHECK(!bits_to_nat("0101"));             // strict: leading zero
  CHECK(bits_to_nat("0101", false) == 5);  // lenient normalizes
  CHECK(bits_to_nat("000", false) == 0);
  CHECK(!bits_to_nat(""));
  CHECK(!bits_to_nat("", false));
  for (std::uint64_t v : {0ull, 1ull, 2ull, 7ull, 8ull, 12345ull, (1ull << 40) + 17}) {
    CHECK(bits_to_nat(nat_to_bits(v)) == v);
    CHECK(nat_to_bits(v).size() == numeral_width(v));
  }
}

TEST_CASE("round trip on random item sequences") {
  std::mt19937_64 rng(20240811);
  for (int it = 0; it < 2000; ++it) {
    std::vector<bitstring> items;
    std::size_t total = 0;
    std::size_t n_items = rng() % 6;
    for (std::size_t j = 0; j < n_items && total < 64; ++j) {
      std::size_t len = rng() % 9;
      len = std::min(len, 64 - total);
      items.push_back(random_bits(rng, len));
      total += len;
    }
    auto dec = decode_list(encode_list(items));
    REQUIRE(dec);
    CHECK(*dec == items);
    // projection totality over the same samples
    bitstring enc = encode_list(items);
    for (std::size_t i = 0; i < items.size(); ++i) CHECK(project(enc, i) == items[i]);
    CHECK(project(enc, items.size()) == "0");
  }
}

TEST_CASE("decoding is unambiguous") {
  // exhaustive over all strings up to length 12, plus longer random ones
  for (std::size_t len = 0; len <= 12; ++len) {
    for (std::uint64_t m = 0; m < (1ull << len); ++m) {
      bitstring w;
      for (std::size_t i = 0; i < len; ++i) w.push_back(char('0' + (m >> i & 1)));
      auto ps = parses(w);
      CHECK(ps.size() <= 1);
      auto dec = decode_list(w);
      if (dec) {
        REQUIRE(ps.size() == 1);
        CHECK(ps[0] == *dec);
      } else {
        CHECK(ps.empty());
      }
    }
  }
  std::mt19937_64 rng(7);
  for (int it = 0; it < 500; ++it) {
    bitstring w = random_bits(rng, 8 + rng() % 24);
    auto ps = parses(w);
    auto dec = decode_list(w);
    CHECK(ps.size() <= 1);
    CHECK((dec ? ps.size() == 1 : ps.empty()));
  }
}

TEST_CASE("nested lists embed verbatim") {
  bitstring inner = encode_list({"1", "0"});
  bitstring outer = encode_list({inner, "11"});
  auto dec = decode_list(outer);
  REQUIRE(dec);
  REQUIRE(dec->size() == 2);
  CHECK((*dec)[0] == inner);
  auto inner_dec = decode_list((*dec)[0]);
  REQUIRE(inner_dec);
  CHECK(*inner_dec == std::vector<bitstring>{"1", "0"});
}

TEST_CASE("tuple ids") {
  CHECK(encode_tuple_id({0, 0}) == min_tuple_id);
  for (auto parts : std::vector<std::vector<std::uint64_t>>{
           {0}, {1}, {3, 7}, {0, 5}, {4, 15, 12, 14}, {1, 2, 3}}) {
    auto id = encode_tuple_id(parts);
    auto back = decode_tuple_id(id);
    REQUIRE(back);
    CHECK(*back == parts);
  }
  // every tuple of two or more components clears min_tuple_id
  for (std::uint64_t x : {0ull, 1ull, 13ull})
    for (std::uint64_t y : {0ull, 7ull, 100ull})
      CHECK(encode_tuple_id({x, y}) >= min_tuple_id);
  CHECK(!decode_tuple_id(0));
  CHECK(!decode_tuple_id(857));
}
