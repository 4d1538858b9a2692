#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "shapecode/ghc.hpp"
#include "shapecode/mbdist.hpp"

using namespace shapecode;

namespace {

double divergence(const DyadicPmf& d, const std::vector<double>& p) {
  double sum = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.pruned(i)) continue;
    sum += d.probability(i) * std::log2(d.probability(i) / p[i]);
  }
  return sum;
}

}  // namespace

TEST_SUITE("ghc") {
  TEST_CASE("dominant mass absorbs the whole distribution") {
    const auto d = ghc_dyadic(std::vector<double>{0.9, 0.1});
    CHECK(d.lengths[0] == 0);
    CHECK(d.pruned(1));
    CHECK(d.survivors() == 1);
    CHECK(d.to_vector() == std::vector<double>{1.0, 0.0});
  }

  TEST_CASE("four-point example") {
    const std::vector<double> p = {0.4, 0.3, 0.2, 0.1};
    const auto d = ghc_dyadic(p);
    CHECK(d.to_vector() == std::vector<double>{0.5, 0.25, 0.125, 0.125});
    CHECK(divergence(d, p) == doctest::Approx(0.05068746970707331).epsilon(1e-12));
  }

  TEST_CASE("unnormalized weights give the same lengths") {
    const std::vector<double> p = {0.4, 0.3, 0.2, 0.1};
    const std::vector<double> scaled = {4.0, 3.0, 2.0, 1.0};
    CHECK(ghc_dyadic(p).lengths == ghc_dyadic(scaled).lengths);
  }

  TEST_CASE("matches exhaustive search over dyadic PMFs") {
    std::mt19937_64 rng(17);
    std::gamma_distribution<double> g(0.6, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
      std::vector<double> p(n);
      double z = 0.0;
      // Bounded dynamic range keeps every useful length within the search depth.
      for (auto& x : p) z += (x = g(rng) + 0.05);
      for (auto& x : p) x /= z;
      const auto d = ghc_dyadic(p);
      CAPTURE(trial);
      CHECK(divergence(d, p) == doctest::Approx(oracle::best_dyadic_divergence(p, 10)).epsilon(1e-9));
    }
  }

  TEST_CASE("output is a complete dyadic PMF") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> p(1 + static_cast<std::size_t>(trial % 40));
      for (auto& x : p) x = u(rng) * u(rng);
      const auto d = ghc_dyadic(p);
      std::vector<int> kept;
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (!d.pruned(i)) kept.push_back(d.lengths[i]);
      }
      CHECK(kraft_equals_one(kept));
    }
  }

  TEST_CASE("zero-weight entries are always pruned") {
    const auto d = ghc_dyadic(std::vector<double>{0.0, 0.5, 0.0, 0.5});
    CHECK(d.pruned(0));
    CHECK(d.pruned(2));
    CHECK(d.lengths[1] == 1);
    CHECK(d.lengths[3] == 1);
  }

  TEST_CASE("invalid targets") {
    CHECK_THROWS_AS(ghc_dyadic(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(ghc_dyadic(std::vector<double>{0.5, -0.1}), std::invalid_argument);
    CHECK_THROWS_AS(ghc_dyadic(std::vector<double>{0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(ghc_dyadic(std::vector<double>{0.5, std::nan("")}), std::invalid_argument);
  }

  TEST_CASE("dictionary is canonical and prefix-free") {
    DyadicPmf d;
    d.lengths = {3, 1, DyadicPmf::kPruned, 3, 2};
    const auto dict = dyadic_to_dictionary(d);
    REQUIRE(dict.size() == 5);
    CHECK_FALSE(dict[2].has_value());
    CHECK(dict[1]->str() == "0");
    CHECK(dict[4]->str() == "10");
    CHECK(dict[0]->str() == "110");
    CHECK(dict[3]->str() == "111");

    DyadicPmf bad;
    bad.lengths = {1, 2};
    CHECK_THROWS_AS(dyadic_to_dictionary(bad), std::invalid_argument);
  }
}
