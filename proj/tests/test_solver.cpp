#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "classopt/solver.hpp"

using namespace classopt;
using Catch::Approx;

TEST_CASE("brute force reproduces the documented optima") {
  SECTION("Z=5, p=0.77, W=1.2") {
    const SolveResult r = solve_bruteforce(Instance(5, 0.77, 1.2));
    CHECK(r.best.sizes() == std::vector<int>{2, 3});
    CHECK(r.profit == Approx(0.155399).margin(1e-6));
    CHECK(r.profitable);
  }
  SECTION("Z=5, W=0.673 flips from (2,3) to (1,2,2) as p grows") {
    CHECK(solve_bruteforce(Instance(5, 0.60, 0.673)).best.sizes() ==
          std::vector<int>{2, 3});
    CHECK(solve_bruteforce(Instance(5, 0.62, 0.673)).best.sizes() ==
          std::vector<int>{1, 2, 2});
  }
}

TEST_CASE("brute force capacity cap") {
  CHECK_THROWS_AS(solve_bruteforce(Instance(61, 0.9, 0.5)), CapacityError);
  CHECK_NOTHROW(solve_bruteforce(Instance(21, 0.9, 0.5), 21));
  CHECK_THROWS_AS(solve_bruteforce(Instance(21, 0.9, 0.5), 20), CapacityError);
}

TEST_CASE("balanced solver equals the oracle on the documented optima") {
  for (auto [p, w] : {std::pair{0.77, 1.2}, {0.60, 0.673}, {0.62, 0.673}}) {
    const Instance inst(5, p, w);
    const SolveResult oracle = solve_bruteforce(inst);
    const SolveResult fast = solve_balanced(inst);
    CHECK(fast.best == oracle.best);
    CHECK(fast.profit == oracle.profit);
  }
}

TEST_CASE("small p with cheap teachers gives all singletons") {
  for (int z : {3, 9, 24}) {
    const SolveResult r = solve_balanced(Instance(z, 0.45, 0.2));
    REQUIRE(r.profitable);
    CHECK(r.best.class_count() == z);
    CHECK(r.best.spread() == 0);
  }
}

TEST_CASE("balanced solver equals oracle on random profitable instances") {
  std::mt19937_64 rng(987654321);
  std::uniform_int_distribution<int> z_dist(2, 40);
  std::uniform_real_distribution<double> p_dist(0.05, 0.99);
  std::uniform_real_distribution<double> w_dist(0.05, 2.0);
  int profitable_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Instance inst(z_dist(rng), p_dist(rng), w_dist(rng));
    const SolveResult oracle = solve_bruteforce(inst);
    if (!oracle.profitable) continue;
    ++profitable_seen;
    const SolveResult fast = solve_balanced(inst);
    CHECK(fast.best == oracle.best);
    CHECK(fast.profit == oracle.profit);
    CHECK(oracle.best.spread() <= 1);
  }
  CHECK(profitable_seen > 10);
}

TEST_CASE("two-class restriction at Z=100 prefers unequal classes") {
  const Instance inst(100, 0.95, 0.5);
  const ClassSizeVector best = fixed_class_count_best(inst, 2);
  CHECK(best.sizes() == std::vector<int>{23, 77});
  CHECK(evaluate_output(best, 0.95) == Approx(8.55).margin(0.01));
  const ClassSizeVector even({50, 50});
  CHECK(evaluate_output(even, 0.95) == Approx(7.69).margin(0.01));
  CHECK(evaluate_profit(inst, even) < evaluate_profit(inst, best));
}

TEST_CASE("fixed class count edge cases") {
  const Instance inst(9, 0.8, 0.4);
  CHECK(fixed_class_count_best(inst, 1).sizes() == std::vector<int>{9});
  CHECK(fixed_class_count_best(inst, 9).sizes() ==
        std::vector<int>(9, 1));
  CHECK_THROWS_AS(fixed_class_count_best(inst, 0), std::invalid_argument);
  CHECK_THROWS_AS(fixed_class_count_best(inst, 10), std::invalid_argument);
  CHECK_THROWS_AS(fixed_class_count_best(Instance(80, 0.9, 0.4), 3),
                  CapacityError);
  CHECK_NOTHROW(fixed_class_count_best(Instance(80, 0.9, 0.4), 2));
}

TEST_CASE("fixed three-class restriction agrees with filtered enumeration") {
  const Instance inst(11, 0.82, 0.6);
  const ClassSizeVector best3 = fixed_class_count_best(inst, 3);
  double best_profit = -1e300;
  std::vector<int> best_sizes;
  for_each_partition_into(11, 3, [&](const std::vector<int>& part) {
    const double profit = evaluate_profit(inst, ClassSizeVector(part));
    if (profit > best_profit) {
      best_profit = profit;
      best_sizes = part;
    }
  });
  CHECK(best3.sizes() == best_sizes);
}

TEST_CASE("gap check: branches and applicability") {
  SECTION("documented Z=5 optimum uses the odd branch") {
    const GapReport rep = gap_check(Instance(5, 0.77, 1.2));
    REQUIRE(rep.applicable);
    CHECK(rep.m == 2);
    CHECK(rep.ok);
    CHECK(rep.branch == GapReport::Branch::half_odd);
  }
  SECTION("Z=10 profitable optima stay inside {1..5} u {10}") {
    for (double w : {0.1, 0.4, 0.8, 1.2}) {
      const GapReport rep = gap_check(Instance(10, 0.9, w));
      if (!rep.applicable) continue;
      CHECK(rep.ok);
      const bool in_set = rep.m == 10 || rep.m <= 5;
      CHECK(in_set);
    }
  }
  SECTION("unprofitable school is not applicable") {
    const GapReport rep = gap_check(Instance(10, 0.3, 1.5));
    CHECK_FALSE(rep.applicable);
  }
}

TEST_CASE("near-equality report") {
  const NearEqualReport rep = near_equal_check(Instance(12, 0.88, 0.7));
  REQUIRE(rep.oracle.profitable);
  CHECK(rep.spread <= 1);
  CHECK(rep.pass);
  // Unprofitable instances pass vacuously.
  CHECK(near_equal_check(Instance(12, 0.2, 1.9)).pass);
}

// The (1, Z-1) split is never globally optimal for Z >= 4.
TEST_CASE("one-versus-rest split never wins") {
  for (int z = 4; z <= 16; ++z) {
    for (int pi = 1; pi <= 19; ++pi) {
      for (int wi = 1; wi <= 15; ++wi) {
        const Instance inst(z, double(pi) / 20.0, double(wi) / 10.0);
        const SolveResult oracle = solve_bruteforce(inst);
        const std::vector<int> lop = {1, z - 1};
        CHECK(oracle.best.sizes() != lop);
        // Spelled per the two-class restriction: if the restricted optimum
        // is also the global optimum, it is not (1, Z-1).
        const ClassSizeVector best2 = fixed_class_count_best(inst, 2);
        if (best2 == oracle.best) CHECK(best2.sizes() != lop);
      }
    }
  }
}

TEST_CASE("singleton bound and small-p structure on a sweep") {
  for (int z = 2; z <= 14; ++z) {
    for (int pi = 1; pi <= 19; ++pi) {
      const double p = double(pi) / 20.0;
      for (int wi = 1; wi <= 15; ++wi) {
        const double w = double(wi) / 10.0;
        const SolveResult oracle = solve_bruteforce(Instance(z, p, w));
        if (w >= 2.0 * p * (1.0 - p))
          CHECK(oracle.best.singleton_count() <= 1);
        // Grid points with p == w have true optimum profit exactly zero;
        // strict profitability is not decidable there in doubles.
        if (std::abs(oracle.profit) <= 1e-12) continue;
        if (p <= 0.5 && oracle.profitable) {
          CHECK(oracle.best.class_count() == z);
          CHECK(p > w);
        }
      }
    }
  }
}

// For any profitable optimum with at least two classes, the smallest and
// largest classes form an optimal two-class solution of their own subschool.
TEST_CASE("subschool closure of optima") {
  for (int z = 4; z <= 16; ++z) {
    for (int pi = 2; pi <= 19; pi += 3) {
      for (int wi = 1; wi <= 15; wi += 2) {
        const Instance inst(z, double(pi) / 20.0, double(wi) / 10.0);
        const SolveResult oracle = solve_bruteforce(inst);
        if (!oracle.profitable || oracle.best.class_count() < 2) continue;
        const int lo = oracle.best.sizes().front();
        const int hi = oracle.best.sizes().back();
        const Instance sub(lo + hi, inst.p, inst.w);
        const ClassSizeVector pair_best = fixed_class_count_best(sub, 2);
        const double pair_profit =
            evaluate_profit(sub, ClassSizeVector({lo, hi}));
        CHECK(pair_profit == evaluate_profit(sub, pair_best));
      }
    }
  }
}
