#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "shapecode/mbdist.hpp"
#include "shapecode/trees.hpp"
#include "shapecode/v2v.hpp"

using namespace shapecode;

namespace {

double dot(const Pmf& p, const std::vector<double>& c) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * c[i];
  return s;
}

double divergence_to_q(const Pmf& p, const RateConstraint& rc) {
  return kl_divergence_bits(p, rc.q);
}

}  // namespace

TEST_SUITE("v2v") {
  TEST_CASE("rate constraint totals") {
    const std::vector<int> lengths = {1, 2, 2};
    const auto rc = rate_constraint(lengths, 1.0);
    CHECK(rc.total == doctest::Approx(1.0));
    CHECK(rc.feasible());
    CHECK_FALSE(rate_constraint(lengths, 1.1).feasible());
    CHECK(rate_constraint(lengths, 0.5).total > 1.0);
  }

  TEST_CASE("normalized q sits at divergence -log2 Q") {
    const std::vector<int> lengths = {1, 2, 3, 3, 4};
    const auto rc = rate_constraint(lengths, 0.4);
    Pmf p(rc.q.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = rc.q[i] / rc.total;
    CHECK(divergence_to_q(p, rc) == doctest::Approx(-std::log2(rc.total)).epsilon(1e-12));
  }

  TEST_CASE("inner solution is feasible and beats sampled PMFs") {
    const auto set = enumerate_optimal_trees(2, 8);
    const auto& tree = set.optimal(8)[2];
    const auto book = tree_to_codebook(set, tree);
    std::vector<int> lengths;
    std::vector<double> costs;
    for (const auto& w : book) {
      lengths.push_back(w.length());
      costs.push_back(static_cast<double>(w.energy()) - 2.0 * w.length());
    }
    for (double rate : {0.3, 0.45, 0.6}) {
      const auto rc = rate_constraint(lengths, rate);
      REQUIRE(rc.feasible());
      const auto p = solve_inner(costs, rc);
      double sum = 0.0;
      for (double x : p) sum += x;
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(divergence_to_q(p, rc) <= kDivergenceTolerance);
      const double sampled = oracle::kl_ball_min_by_sampling(costs, rc.q, 20000, 99);
      CHECK(dot(p, costs) <= sampled + 1e-4);
    }
  }

  TEST_CASE("inner solution matches a grid search on three points") {
    const std::vector<double> costs = {0.0, 2.0, 5.0};
    const std::vector<int> lengths = {1, 2, 2};
    const auto rc = rate_constraint(lengths, 0.6);
    const auto p = solve_inner(costs, rc);
    double best = std::numeric_limits<double>::infinity();
    const int steps = 2000;
    for (int i = 0; i <= steps; ++i) {
      for (int j = 0; i + j <= steps; ++j) {
        const Pmf g = {double(i) / steps, double(j) / steps, double(steps - i - j) / steps};
        if (kl_divergence_bits(g, rc.q) <= 0.0) best = std::min(best, dot(g, costs));
      }
    }
    CHECK(dot(p, costs) <= best + 1e-9);
    CHECK(dot(p, costs) == doctest::Approx(best).epsilon(1e-3));
  }

  TEST_CASE("argmin set with enough mass is returned directly") {
    const std::vector<double> costs = {1.0, 1.0, 4.0};
    RateConstraint rc;
    rc.q = {0.6, 0.6, 0.1};
    rc.total = 1.3;
    const auto p = solve_inner(costs, rc);
    CHECK(p[0] == doctest::Approx(0.5));
    CHECK(p[1] == doctest::Approx(0.5));
    CHECK(p[2] == 0.0);
  }

  TEST_CASE("Q equal to one leaves only q") {
    const std::vector<int> lengths = {1, 2, 2};
    const auto rc = rate_constraint(lengths, 1.0);
    const auto p = solve_inner(std::vector<double>{3.0, 1.0, 0.0}, rc);
    CHECK(p[0] == doctest::Approx(0.5));
    CHECK(p[1] == doctest::Approx(0.25));
    CHECK(p[2] == doctest::Approx(0.25));
  }

  TEST_CASE("two-leaf tree at full rate") {
    const std::vector<SymbolWord> book = {{1}, {3}};
    const auto r = optimal_pmf(book, 1.0);
    CHECK(r.energy == doctest::Approx(5.0));
    CHECK_THROWS_AS(optimal_pmf(book, 1.01), InfeasibleRate);
  }

  TEST_CASE("relaxed optimum on the example codebook bounds its energy") {
    const auto code = canonical_table1c();
    std::vector<SymbolWord> book;
    for (const auto& e : code.entries()) book.push_back(e.codeword);
    const auto r = optimal_pmf(book, 0.36);
    CHECK(r.energy <= 1.65140);
    CHECK(r.energy >= mb_energy_at_rate(AskAlphabet(2), 0.36) - 1e-9);
    CHECK(r.monotone);
    CHECK(r.iterations <= 10);
    for (std::size_t i = 1; i < r.energies.size(); ++i) CHECK(r.energies[i] <= r.energies[i - 1] + 1e-12);
    // The relaxed optimum meets the rate constraint.
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < book.size(); ++i) {
      num -= r.pmf[i] > 0 ? r.pmf[i] * std::log2(r.pmf[i]) : 0.0;
      den += r.pmf[i] * book[i].length();
    }
    CHECK(num / den >= 0.36 - 1e-9);
  }

  TEST_CASE("outer iteration is monotone across trees and rates") {
    const auto set = enumerate_optimal_trees(4, 12);
    for (int n = 2; n <= 12; ++n) {
      for (const auto& tree : set.optimal(n)) {
        const auto book = tree_to_codebook(set, tree);
        for (double rate = 0.2; rate < 2.0; rate += 0.3) {
          try {
            const auto r = optimal_pmf(book, rate);
            CHECK(r.monotone);
          } catch (const InfeasibleRate&) {
          }
        }
      }
    }
  }

  TEST_CASE("fixed-to-variable examples") {
    const auto one = build_f2v(2, 1, 1.0);
    REQUIRE(one.code.size() == 2);
    CHECK(one.code[0].info.str() == "0");
    CHECK(one.code[0].codeword == SymbolWord{1});
    CHECK(one.code[1].codeword == SymbolWord{3});
    CHECK(one.metrics.energy == doctest::Approx(5.0));

    const auto near = build_f2v(2, 2, 0.9);
    CHECK(near.sum_depth == 9);
    CHECK(near.metrics.rate == doctest::Approx(8.0 / 9.0));
    CHECK(near.metrics.energy == doctest::Approx(33.0 / 9.0));
    CHECK(near.code.kind() == CodeKind::F2V);

    CHECK(build_f2v(2, 2, 1.0).sum_depth == 8);
    CHECK_THROWS_AS(build_f2v(2, 7, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(build_f2v(4, 6, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(build_f2v(8, 2, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(build_f2v(2, 2, 1.5), std::invalid_argument);
  }

  TEST_CASE("small binary library yields valid codes within delta") {
    V2vOptions opt;
    opt.m = 2;
    opt.n_max = 8;
    opt.rate_step = 0.01;
    opt.delta = 0.005;
    const auto lib = build_v2v(opt);
    CHECK(lib.stats.nonmonotone == 0);
    CHECK(lib.stats.solves > 0);
    int achieved = 0;
    for (const auto& e : lib.library) {
      if (!e.code) continue;
      ++achieved;
      CHECK(validate_code(e.code->code).ok());
      CHECK(std::abs(e.code->metrics.rate - e.target) <= opt.delta + 1e-12);
      CHECK(e.code->gap_db >= -1e-9);
      CHECK(e.code->size_param <= 8);
    }
    CHECK(achieved >= 5);
  }

  TEST_CASE("the example codebook is the deepest optimal eight-leaf tree") {
    const auto set = enumerate_optimal_trees(2, 8);
    const TreeRecord* comb = set.find(8, 35);
    REQUIRE(comb != nullptr);
    std::int64_t omega = 0;
    int nu = 0;
    const auto code = canonical_table1c();
    for (const auto& e : code.entries()) {
      omega += e.codeword.energy();
      nu += e.codeword.length();
    }
    CHECK(nu == 35);
    CHECK(comb->sum_energy == omega);
  }

  TEST_CASE("library guards") {
    V2vOptions opt;
    opt.m = 8;
    CHECK_THROWS_AS(build_v2v(opt), std::invalid_argument);
  }
}
