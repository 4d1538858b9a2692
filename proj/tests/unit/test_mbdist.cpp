#include <cmath>
#include <random>

#include "doctest.h"
#include "shapecode/mbdist.hpp"

using namespace shapecode;

TEST_SUITE("mbdist") {
  TEST_CASE("binary alphabet at half a bit") {
    const AskAlphabet a(2);
    const double lambda = lambda_for_rate(a, 0.5);
    CHECK(lambda == doctest::Approx(0.26130706338603615).epsilon(1e-10));
    const auto model = mb_scalar(a, lambda);
    CHECK(model.pmf[0] == doctest::Approx(0.88997).epsilon(1e-5));
    CHECK(model.entropy == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(model.mean_energy == doctest::Approx(1.8802229155068764).epsilon(1e-10));
  }

  TEST_CASE("quaternary alphabet at 1.5 bits") {
    const AskAlphabet a(4);
    CHECK(lambda_for_rate(a, 1.5) == doctest::Approx(0.06405477337713947).epsilon(1e-10));
    CHECK(mb_energy_at_rate(a, 1.5) == doctest::Approx(7.541870923303574).epsilon(1e-10));
  }

  TEST_CASE("entropy and energy fall as lambda grows") {
    for (int m : {2, 4, 8, 16}) {
      const AskAlphabet a(m);
      double prev_h = std::log2(m) + 1e-12;
      double prev_e = a.uniform_energy() + 1e-9;
      for (double lambda = 0.0; lambda < 3.0; lambda += 0.05) {
        const auto model = mb_scalar(a, lambda);
        CHECK(model.entropy < prev_h);
        CHECK(model.mean_energy < prev_e);
        prev_h = model.entropy;
        prev_e = model.mean_energy;
      }
    }
  }

  TEST_CASE("lambda solves the entropy target across the range") {
    for (int m : {2, 4, 8, 16}) {
      const AskAlphabet a(m);
      for (double h = 0.05; h < std::log2(m); h += 0.05) {
        CHECK(mb_scalar(a, lambda_for_rate(a, h)).entropy == doctest::Approx(h).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("uniform rate has zero gap") {
    for (int m : {2, 4, 8, 16}) {
      const AskAlphabet a(m);
      const double r = std::log2(m);
      CHECK(lambda_for_rate(a, r) == 0.0);
      CHECK(energy_gap_db(a.uniform_energy(), r, a) == doctest::Approx(0.0).epsilon(1e-12));
    }
  }

  TEST_CASE("targets outside (0, log2 M] are rejected") {
    const AskAlphabet a(4);
    CHECK_THROWS_AS(lambda_for_rate(a, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(lambda_for_rate(a, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(lambda_for_rate(a, 2.1), std::invalid_argument);
    CHECK_THROWS_AS(mb_scalar(a, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(energy_gap_db(0.0, 1.0, a), std::invalid_argument);
  }

  TEST_CASE("no PMF with at least the MB entropy has lower energy") {
    std::mt19937_64 rng(5);
    std::gamma_distribution<double> g(0.5, 1.0);
    for (int m : {2, 4, 8}) {
      const AskAlphabet a(m);
      for (int trial = 0; trial < 3000; ++trial) {
        std::vector<double> p(static_cast<std::size_t>(m));
        double z = 0.0;
        for (auto& x : p) z += (x = g(rng));
        double e = 0.0;
        for (int i = 0; i < m; ++i) e += (p[static_cast<std::size_t>(i)] /= z) * a.energy(i);
        const double h = entropy_bits(p);
        if (h < 1e-3) continue;
        CHECK(e >= mb_energy_at_rate(a, std::min(h, std::log2(m))) - 1e-9);
      }
    }
  }

  TEST_CASE("codeword PMF is proportional to exp(-lambda * energy)") {
    const std::vector<SymbolWord> book = {{1}, {3}, {1, 1}, {3, 3}};
    const auto p = mb_codeword_pmf(book, 0.2);
    double sum = 0.0;
    for (double x : p) sum += x;
    CHECK(sum == doctest::Approx(1.0));
    CHECK(p[1] / p[0] == doctest::Approx(std::exp(-0.2 * 8)));
    CHECK(p[3] / p[2] == doctest::Approx(std::exp(-0.2 * 16)));
    CHECK_THROWS_AS(mb_codeword_pmf({}, 0.2), std::invalid_argument);
  }

  TEST_CASE("divergence helpers") {
    const std::vector<double> p = {0.5, 0.5, 0.0};
    const std::vector<double> q = {0.25, 0.25, 0.5};
    CHECK(entropy_bits(p) == doctest::Approx(1.0));
    CHECK(kl_divergence_bits(p, q) == doctest::Approx(1.0));
    CHECK(kl_divergence_bits(q, q) == 0.0);
    CHECK_THROWS_AS(kl_divergence_bits(p, std::vector<double>{1.0}), std::invalid_argument);
  }
}
