#pragma once

// Exact solvers for the single-type problem: a brute-force partition oracle
// and a fast solver that searches only balanced vectors, justified by the
// near-equal-classes and class-count-gap structure of profitable optima.

#include <optional>
#include <vector>

#include "classopt/balanced.hpp"
#include "classopt/core.hpp"
#include "classopt/partitions.hpp"

namespace classopt {

inline constexpr int kDefaultBruteforceCap = 60;

namespace detail {

// Argmax accumulator with the fixed tie-break: higher profit, then fewer
// classes, then lexicographically smallest canonical vector. Profit
// comparisons are exact float comparisons; all candidates are evaluated by
// the same kernel so ties are deterministic.
struct BestTracker {
  std::vector<int> sizes;
  double profit = 0.0;
  bool has = false;

  void offer(const std::vector<int>& cand, double cand_profit) {
    if (!has) {
      sizes = cand;
      profit = cand_profit;
      has = true;
      return;
    }
    if (cand_profit > profit) {
      sizes = cand;
      profit = cand_profit;
      return;
    }
    if (cand_profit == profit) {
      if (cand.size() < sizes.size() ||
          (cand.size() == sizes.size() && cand < sizes)) {
        sizes = cand;
      }
    }
  }

  SolveResult result() const {
    SolveResult r;
    r.best = ClassSizeVector::from_sorted(sizes);
    r.profit = profit;
    r.profitable = profit > 0.0;
    return r;
  }
};

}  // namespace detail

/// Globally optimal class size vector over all partitions of z.
/// Throws CapacityError when z exceeds the enumeration cap.
inline SolveResult solve_bruteforce(const Instance& inst,
                                    int cap = kDefaultBruteforceCap) {
  if (inst.z > cap)
    throw CapacityError("solve_bruteforce: z exceeds enumeration cap");
  detail::BestTracker best;
  for_each_partition(inst.z, [&](const std::vector<int>& part) {
    best.offer(part, detail::profit_of_sorted(inst, part));
  });
  return best.result();
}

/// Fast solver: searches only the balanced vectors Q_k. When the restricted
/// candidate set {k <= m_upper(z)} u {z} contains a profitable vector, that
/// is the global optimum; otherwise the school is unprofitable and all
/// k = 1..z are scanned for the least-bad balanced vector.
inline SolveResult solve_balanced(const Instance& inst) {
  detail::BestTracker best;
  auto offer_k = [&](int k) {
    const ClassSizeVector cand = BalancedVector::of(inst.z, k).expand();
    best.offer(cand.sizes(), detail::profit_of_sorted(inst, cand.sizes()));
  };
  const int hi = m_upper(inst.z);
  for (int k = 1; k <= hi; ++k) offer_k(k);
  if (inst.z > hi) offer_k(inst.z);
  if (best.profit > 0.0) return best.result();
  // Unprofitable school: the gap theorem does not apply, scan every k.
  for (int k = hi + 1; k < inst.z; ++k) offer_k(k);
  return best.result();
}

/// Best vector among partitions of z into exactly m parts. Two-part
/// restrictions are scanned directly (z/2 candidates, no cap); general m
/// uses exhaustive enumeration subject to the cap.
inline ClassSizeVector fixed_class_count_best(const Instance& inst, int m,
                                              int cap = kDefaultBruteforceCap) {
  detail::require(m >= 1 && m <= inst.z,
                  "fixed_class_count_best: m must be in [1, z]");
  if (m == 1) return ClassSizeVector({inst.z});
  if (m == inst.z)
    return ClassSizeVector(std::vector<int>(inst.z, 1));
  detail::BestTracker best;
  if (m == 2) {
    for (int k = 1; 2 * k <= inst.z; ++k) {
      const std::vector<int> cand = {k, inst.z - k};
      best.offer(cand, detail::profit_of_sorted(inst, cand));
    }
    return best.result().best;
  }
  if (inst.z > cap)
    throw CapacityError("fixed_class_count_best: z exceeds enumeration cap");
  for_each_partition_into(inst.z, m, [&](const std::vector<int>& part) {
    best.offer(part, detail::profit_of_sorted(inst, part));
  });
  return best.result().best;
}

/// Outcome of checking the class-count gap on an oracle optimum.
struct GapReport {
  bool applicable = false;  ///< false when the school is unprofitable
  int m = 0;
  bool ok = false;
  enum class Branch { none, all_classes, half_even, half_odd } branch =
      Branch::none;
  SolveResult oracle;
};

/// Verifies that the oracle optimum of a profitable instance respects the
/// class-count gap. Unprofitable instances yield applicable = false.
inline GapReport gap_check(const Instance& inst,
                           int cap = kDefaultBruteforceCap) {
  GapReport rep;
  rep.oracle = solve_bruteforce(inst, cap);
  if (!rep.oracle.profitable) return rep;
  rep.applicable = true;
  rep.m = rep.oracle.best.class_count();
  rep.ok = class_count_gap_ok(inst.z, rep.m);
  if (rep.m == inst.z)
    rep.branch = GapReport::Branch::all_classes;
  else if (inst.z % 2 == 0)
    rep.branch = GapReport::Branch::half_even;
  else
    rep.branch = GapReport::Branch::half_odd;
  return rep;
}

/// Near-equality verdict for one instance: the oracle optimum of a
/// profitable school must have size spread <= 1.
struct NearEqualReport {
  Instance instance;
  SolveResult oracle;
  int spread = 0;
  bool pass = false;
};

inline NearEqualReport near_equal_check(const Instance& inst,
                                        int cap = kDefaultBruteforceCap) {
  NearEqualReport rep{inst, solve_bruteforce(inst, cap), 0, false};
  rep.spread = rep.oracle.best.spread();
  rep.pass = !rep.oracle.profitable || rep.spread <= 1;
  return rep;
}

}  // namespace classopt
