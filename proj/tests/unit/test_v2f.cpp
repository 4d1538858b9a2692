#include <set>

#include "doctest.h"
#include "shapecode/mbdist.hpp"
#include "shapecode/v2f.hpp"

using namespace shapecode;

TEST_SUITE("v2f") {
  TEST_CASE("balanced codebook lists all words lexicographically") {
    const auto book = balanced_codebook(AskAlphabet(4), 2);
    REQUIRE(book.size() == 16);
    CHECK(book.front() == SymbolWord{1, 1});
    CHECK(book[1] == SymbolWord{1, 3});
    CHECK(book[4] == SymbolWord{3, 1});
    CHECK(book.back() == SymbolWord{7, 7});
    CHECK_THROWS_AS(balanced_codebook(AskAlphabet(16), 4), std::invalid_argument);
    CHECK_THROWS_AS(balanced_codebook(AskAlphabet(2), 0), std::invalid_argument);
    CHECK(balanced_codebook(AskAlphabet(2), 12).size() == 4096);
  }

  TEST_CASE("binary length-3 codebook reaches only five rates") {
    std::set<double> rates;
    for (int i = 1; i <= 1000; ++i) {
      const auto built = build_v2f(2, 3, i / 1000.0);
      if (built) rates.insert(built->metrics.rate);
    }
    CHECK(rates.size() == 5);
    const std::set<double> expected = {35.0 / 48.0, 0.75, 11.0 / 12.0, 23.0 / 24.0, 1.0};
    auto it = expected.begin();
    for (double r : rates) CHECK(r == doctest::Approx(*it++).epsilon(1e-14));
  }

  TEST_CASE("built codes are valid and report consistent metrics") {
    for (int m : {2, 4, 8, 16}) {
      for (int v = 1; v <= 2; ++v) {
        for (double frac = 0.1; frac < 1.0; frac += 0.2) {
          const double target = frac * std::log2(m);
          const auto built = build_v2f(m, v, target);
          if (!built) continue;
          CHECK(validate_code(built->code).ok());
          CHECK(built->code.kind() == CodeKind::V2F);
          CHECK(built->size_param == v);
          for (const auto& e : built->code.entries()) CHECK(e.codeword.length() == v);
          const auto again = code_metrics(built->code);
          CHECK(again.energy == built->metrics.energy);
          CHECK(built->gap_db == energy_gap_db(again.energy, again.rate, AskAlphabet(m)));
          CHECK(built->gap_db >= -1e-12);
        }
      }
    }
  }

  TEST_CASE("dictionary order follows length then energy") {
    const auto built = build_v2f(4, 2, 1.2);
    REQUIRE(built);
    const auto entries = built->code.entries();
    for (std::size_t i = 1; i < entries.size(); ++i) {
      const auto& a = entries[i - 1];
      const auto& b = entries[i];
      CHECK(a.info.length() <= b.info.length());
      if (a.info.length() == b.info.length()) CHECK(a.codeword.energy() <= b.codeword.energy());
      CHECK(a.info < b.info);
    }
  }

  TEST_CASE("sweep keeps codes inside the window above each target") {
    const auto grid = RateGrid::range(0.2, 0.05, 1.0);
    const auto lib = sweep_v2f(2, 4, grid, 0.05);
    REQUIRE(lib.size() == grid.targets.size());
    int achieved = 0;
    for (const auto& entry : lib) {
      if (!entry.code) continue;
      ++achieved;
      CHECK(entry.code->metrics.rate >= entry.target);
      CHECK(entry.code->metrics.rate < entry.target + 0.05);
    }
    CHECK(achieved > 0);
  }

  TEST_CASE("builder guards") {
    CHECK_THROWS_AS(build_v2f(3, 2, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(build_v2f(2, 13, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(build_v2f(2, 3, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(sweep_v2f(2, 0, RateGrid::range(0.1, 0.1, 0.5)), std::invalid_argument);
  }
}
