#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "shapecode/codebook_json.hpp"
#include "shapecode/library.hpp"
#include "shapecode/mbdist.hpp"
#include "shapecode/v2f.hpp"

using namespace shapecode;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) : path(fs::temp_directory_path() / ("shapecode_test_" + tag)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_SUITE("library") {
  TEST_CASE("rate grid construction and parsing") {
    const auto g = RateGrid::range(0.001, 0.001, 1.0);
    CHECK(g.targets.size() == 1000);
    CHECK(g.targets.back() == 1.0);
    const auto p = RateGrid::parse("0.5:0.25:1");
    CHECK(p.targets == std::vector<double>{0.5, 0.75, 1.0});
    CHECK(RateGrid::parse("0.7").targets == std::vector<double>{0.7});
    CHECK(RateGrid::parse("0.7").step == 0.0);
    CHECK_THROWS_AS(RateGrid::parse("1:2"), std::invalid_argument);
    CHECK_THROWS_AS(RateGrid::parse("x"), std::invalid_argument);
    CHECK_THROWS_AS(RateGrid::range(0.5, 0.0, 1.0), std::invalid_argument);
  }

  TEST_CASE("written codebooks reload and reproduce their index row exactly") {
    TempDir tmp("reload");
    const auto grid = RateGrid::range(0.2, 0.1, 2.0);
    const auto lib = sweep_v2f(4, 2, grid, 0.1);
    write_library(tmp.path, lib, {{"tool", "test"}});
    const auto rows = read_library_index(tmp.path);
    REQUIRE(rows.size() == lib.size());
    int achieved = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].target_rate == lib[i].target);
      CHECK(rows[i].achieved == lib[i].code.has_value());
      if (!rows[i].achieved) continue;
      ++achieved;
      const auto code = read_codebook(tmp.path / rows[i].file);
      CHECK(validate_code(code).ok());
      CHECK(code == lib[i].code->code);
      const auto m = code_metrics(code);
      CHECK(m.rate == rows[i].realized_rate);
      CHECK(m.energy == rows[i].energy);
      CHECK(energy_gap_db(m.energy, m.rate, code.alphabet()) == rows[i].gap_db);
      CHECK(rows[i].cardinality == code.size());
      CHECK(rows[i].kind == "V2F");
    }
    CHECK(achieved > 5);
  }

  TEST_CASE("index reader rejects foreign files") {
    TempDir tmp("bad");
    CHECK_THROWS_AS(read_library_index(tmp.path), std::runtime_error);
    {
      std::ofstream(tmp.path / "index.csv") << "a,b,c\n";
    }
    CHECK_THROWS_AS(read_library_index(tmp.path), std::invalid_argument);
  }

  TEST_CASE("curated selection picks the lowest gap within the window") {
    IndexRow a{1.0, true, 1.01, 3.0, 0.10, "V2V", 2, 8, 8, "a.json"};
    IndexRow b{1.0, true, 0.99, 3.0, 0.05, "V2F", 4, 1, 4, "b.json"};
    IndexRow c{1.5, true, 1.50, 3.0, 0.01, "V2F", 4, 1, 4, "c.json"};
    IndexRow miss{2.0, false};
    const std::vector<LibraryRows> libs = {{"one", {a, miss}}, {"two", {b, c}}};
    const std::vector<double> targets = {1.0, 1.5, 3.0};
    const auto out = select_curated(libs, targets, 0.02);
    REQUIRE(out.size() == 3);
    REQUIRE(out[0].best);
    CHECK(out[0].best->file == "b.json");
    CHECK(out[0].library == "two");
    CHECK(out[1].best->file == "c.json");
    CHECK_FALSE(out[2].best.has_value());
  }

  TEST_CASE("uniform code at full rate has zero gap") {
    const AskAlphabet a(8);
    const auto m = code_metrics(uniform_code(a));
    CHECK(energy_gap_db(m.energy, m.rate, a) == doctest::Approx(0.0).epsilon(1e-12));
  }
}
