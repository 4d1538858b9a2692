#include <random>

#include "doctest.h"
#include "shapecode/framing.hpp"
#include "shapecode/v2f.hpp"
#include "shapecode/v2v.hpp"

using namespace shapecode;

namespace {

std::vector<Bit> random_bits(std::mt19937_64& rng, int k) {
  std::vector<Bit> bits(static_cast<std::size_t>(k));
  for (auto& b : bits) b = static_cast<Bit>(rng() & 1);
  return bits;
}

std::vector<Bit> bits_of(const std::string& s) {
  std::vector<Bit> out;
  for (char c : s) out.push_back(c == '1' ? 1 : 0);
  return out;
}

}  // namespace

TEST_SUITE("framing") {
  TEST_CASE("switch check on a short frame") {
    const FrameConfig cfg(canonical_table1c(), 9, 24);
    CHECK(cfg.max_codeword_length() == 7);
    CHECK(cfg.min_info_length() == 1);
    CHECK(switch_check(FramingState{}, cfg));
    CHECK_FALSE(switch_check(FramingState{2, 14, false}, cfg));
    CHECK(switch_check(FramingState{1, 7, false}, cfg));
  }

  TEST_CASE("all-zero input switches after two shaping words") {
    const FrameConfig cfg(canonical_table1c(), 9, 24);
    const std::vector<Bit> bits(9, 0);
    FrameTrace trace;
    const auto symbols = encode_frame(cfg, bits, &trace);
    CHECK(symbols == std::vector<Amplitude>(24, 1));
    CHECK(trace.switch_symbol == 14);
    CHECK(trace.end_symbol == 21);
    int shaping = 0;
    for (const auto& s : trace.steps) shaping += s.shaping ? 1 : 0;
    CHECK(shaping == 2);
    FrameTrace dtrace;
    CHECK(decode_frame(cfg, symbols, &dtrace) == bits);
    CHECK(dtrace.steps == trace.steps);
  }

  TEST_CASE("input ending inside the dictionary takes the leftmost completion") {
    const ParseTables tables(canonical_table1c());
    const auto bits = bits_of("11");
    const std::size_t entry = tables.parse_info(bits, 0);
    CHECK(canonical_table1c()[entry].info.str() == "110");
    const auto full = bits_of("1110");
    CHECK(canonical_table1c()[tables.parse_info(full, 0)].info.str() == "1110");
    const std::vector<Amplitude> syms = {1, 1, 3, 1};
    CHECK(tables.parse_codeword(syms, 0) == 5);
    CHECK(tables.parse_codeword(syms, 3) == ParseTables::npos);
  }

  TEST_CASE("round trip on random frames across codes and sizes") {
    std::mt19937_64 rng(2024);
    std::vector<PrefixFreeCode> codes = {canonical_table1c(), build_f2v(2, 2, 0.9).code, build_f2v(4, 3, 1.2).code,
                                         build_v2f(8, 1, 2.2)->code, build_v2f(16, 1, 3.1)->code};
    for (const auto& code : codes) {
      const int r = code.alphabet().bits_per_symbol();
      for (int n : {1, 5, 24, 200}) {
        for (int k : {1, n * r / 3 + 1, n * r - 1}) {
          if (k < 1 || k >= n * r) continue;
          const FrameConfig cfg(code, k, n);
          for (int f = 0; f < 30; ++f) {
            const auto bits = random_bits(rng, k);
            FrameTrace et, dt;
            const auto symbols = encode_frame(cfg, bits, &et);
            REQUIRE(symbols.size() == static_cast<std::size_t>(n));
            const auto back = decode_frame(cfg, symbols, &dt);
            CAPTURE(k);
            CAPTURE(n);
            CHECK(back == bits);
            CHECK(et.steps == dt.steps);
            CHECK(et.end_symbol <= n);
          }
        }
      }
    }
  }

  TEST_CASE("short input never overruns a frame when l_min exceeds the remaining bits") {
    // F2V with 3-bit words: after one word only one bit is left, so C1 must not run again.
    const FrameConfig cfg(build_f2v(4, 3, 1.2).code, 4, 5);
    REQUIRE(cfg.min_info_length() == 3);
    CHECK_FALSE(switch_check(FramingState{3, 2, false}, cfg));
    for (int v = 0; v < 16; ++v) {
      std::vector<Bit> bits = {Bit(v >> 3 & 1), Bit(v >> 2 & 1), Bit(v >> 1 & 1), Bit(v & 1)};
      const auto symbols = encode_frame(cfg, bits);
      CHECK(symbols.size() == 5);
      CHECK(decode_frame(cfg, symbols) == bits);
    }
  }

  TEST_CASE("decoder rejects symbols a code cannot produce") {
    const FrameConfig cfg(canonical_table1c(), 9, 24);
    std::vector<Amplitude> bad(24, 1);
    bad[0] = 5;
    CHECK_THROWS_AS(decode_frame(cfg, bad), CorruptFrame);
    CHECK_THROWS_AS(decode_frame(cfg, std::vector<Amplitude>(23, 1)), std::invalid_argument);
  }

  TEST_CASE("frame parameter guards") {
    CHECK_THROWS_AS(FrameConfig(canonical_table1c(), 0, 10), std::invalid_argument);
    CHECK_THROWS_AS(FrameConfig(canonical_table1c(), 10, 10), std::invalid_argument);
    CHECK_THROWS_AS(FrameConfig(canonical_table1c(), 1, 0), std::invalid_argument);
    // The example code runs at 142/393 = 0.3613 bits per symbol.
    const FrameConfig cfg(canonical_table1c(), 3600, 10000);
    CHECK_FALSE(cfg.shaping_rate_below_frame_rate());
    CHECK(FrameConfig(canonical_table1c(), 3700, 10000).shaping_rate_below_frame_rate());
    CHECK_THROWS_AS(encode_frame(cfg, std::vector<Bit>(10, 0)), std::invalid_argument);
  }

  TEST_CASE("unframed stream concatenates codewords") {
    const auto code = canonical_table1c();
    const auto symbols = encode_stream(code, bits_of("0111111"));
    std::vector<Amplitude> expected(7, 1);
    expected.push_back(3);
    CHECK(symbols == expected);
  }

  TEST_CASE("bit packing is MSB first") {
    const auto bits = bits_of("1000000011");
    const auto bytes = pack_bits(bits);
    REQUIRE(bytes.size() == 2);
    CHECK(bytes[0] == 0x80);
    CHECK(bytes[1] == 0xC0);
    const auto back = unpack_bits(bytes);
    CHECK(back.size() == 16);
    CHECK(std::equal(bits.begin(), bits.end(), back.begin()));
  }
}
