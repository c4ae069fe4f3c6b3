#pragma once

// Parameter-plane analysis: classification of (p, W) points by optimal class
// count, the inequality-defined regions L(k) that tile the profitable
// operating region, boundary curves, and the numeric exploration of the
// root-ordering conjecture.

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "classopt/families.hpp"
#include "classopt/solver.hpp"

namespace classopt {

/// One classified point of the (p, W) plane.
struct RegionCell {
  double p = 0.0;
  double w = 0.0;
  int optimal_m = 0;
  std::optional<int> l_label;
  bool profitable = false;
  double profit = 0.0;
};

/// Membership in L(k):
///   L(k) = { f_{k+1}(p) <= W < f_k(p), W < V(Q_k, p)/k }  for 2 <= k <= M,
///   L(1) = { f_2(p) <= W < V(Q_1, p) },
///   L(Z) = { W < 2p(1-p), W < p },
/// where M = m_upper(z). Boundaries follow the least-m convention by
/// construction of the inequalities.
inline bool in_L(int k, double p, double w, int z) {
  detail::require(p > 0.0 && p < 1.0 && w > 0.0, "in_L: need p in (0,1), w > 0");
  detail::require((k >= 1 && k <= m_upper(z)) || k == z, "in_L: k out of range");
  if (k == z) return w < 2.0 * p * (1.0 - p) && w < p;
  if (k == 1) {
    const double f2 = marginal_output_poly(z, 2).eval(p);
    return f2 <= w && w < balanced_output_poly(z, 1).eval(p);
  }
  const double fk = marginal_output_poly(z, k).eval(p);
  const double fk1 = marginal_output_poly(z, k + 1).eval(p);
  const double per_class = balanced_output_poly(z, k).eval(p) / double(k);
  return fk1 <= w && w < fk && w < per_class;
}

/// Classifies one point: solves the instance (oracle when within the cap,
/// balanced solver above it) and attaches the least L-label that matches.
inline RegionCell classify_point(double p, double w, int z,
                                 int cap = kDefaultBruteforceCap) {
  detail::require(p > 0.0 && p < 1.0 && w > 0.0,
                  "classify_point: need p in (0,1), w > 0");
  const Instance inst(z, p, w, 1.0);
  const SolveResult sol =
      (z <= cap) ? solve_bruteforce(inst, cap) : solve_balanced(inst);
  RegionCell cell;
  cell.p = p;
  cell.w = w;
  cell.optimal_m = sol.best.class_count();
  cell.profitable = sol.profitable;
  cell.profit = sol.profit;
  for (int k = 1; k <= m_upper(z); ++k) {
    if (k == z) break;
    if (in_L(k, p, w, z)) {
      cell.l_label = k;
      return cell;
    }
  }
  if (in_L(z, p, w, z)) cell.l_label = z;
  return cell;
}

/// Profitability boundary C(p) = max_k V(Q_k, p)/k over the admissible class
/// counts; the school is profitable at (p, W) exactly when W < C(p).
inline double profitability_constraint(int z, double p) {
  double best = balanced_output_poly(z, 1).eval(p);
  for (int k = 2; k <= m_upper(z); ++k)
    best = std::max(best, balanced_output_poly(z, k).eval(p) / double(k));
  if (z > 1) best = std::max(best, p);  // k = Z gives exactly p
  return best;
}

/// Junction of the per-class value curve W = V(Q_k, p)/k with the marginal
/// curve W = f_k(p). At the junction the k-1 per-class value curve passes
/// through the same point.
inline RootEstimate class_value_junction(int z, int k) {
  detail::require(k >= 2 && k <= m_upper(z), "class_value_junction: k range");
  const SparsePolynomial diff =
      balanced_output_poly(z, k) - marginal_output_poly(z, k).scaled(k);
  const double lo = detail::low_end_sample(diff);
  return isolate_root(diff, lo, 1.0, 1e-15);
}

/// Per-k data for the trimmed regions L'(k): L(k) minus the small corner
/// left of the next peak and below its level, removed only when the
/// per-class value curve meets the next marginal curve left of that peak.
struct TrimInfo {
  int k = 0;
  bool trimmed = false;
  double s_next = 0.0;       ///< s_{k+1}
  double level = 0.0;        ///< f_{k+1}(s_{k+1})
};

inline TrimInfo trim_info(int z, int k) {
  detail::require(k >= 1 && k <= m_upper(z), "trim_info: k range");
  TrimInfo t;
  t.k = k;
  const PeakPoint peak = peak_point(z, k + 1, false);
  t.s_next = peak.s;
  t.level = peak.value;
  const SparsePolynomial diff =
      balanced_output_poly(z, k) -
      marginal_output_poly(z, k + 1).scaled(k);
  try {
    const double lo = detail::low_end_sample(diff);
    const double hi = detail::near_one_sample(diff, true);
    const RootEstimate junction = isolate_root(diff, lo, hi, 1e-12);
    t.trimmed = junction.value < t.s_next;
  } catch (const RootNotBracketed&) {
    t.trimmed = false;  // curves do not meet inside (0, 1): nothing to trim
  }
  return t;
}

inline bool in_L_prime(double p, double w, int z, const TrimInfo& t) {
  if (!in_L(t.k, p, w, z)) return false;
  if (t.trimmed && p < t.s_next && w < t.level) return false;
  return true;
}

/// Checks that the optimal class count is non-decreasing along a strictly
/// decreasing W sequence at fixed p. All points must be profitable.
struct MonotoneWReport {
  bool applicable = false;  ///< false when an unprofitable point was hit
  bool monotone = false;
  std::vector<int> m_sequence;
};

inline MonotoneWReport monotonic_in_W(double p,
                                      const std::vector<double>& decreasing_w,
                                      int z, int cap = kDefaultBruteforceCap) {
  MonotoneWReport rep;
  for (double w : decreasing_w) {
    const RegionCell cell = classify_point(p, w, z, cap);
    if (!cell.profitable) return rep;  // hypothesis unmet
    rep.m_sequence.push_back(cell.optimal_m);
  }
  rep.applicable = true;
  rep.monotone = true;
  for (size_t i = 1; i < rep.m_sequence.size(); ++i)
    if (rep.m_sequence[i] < rep.m_sequence[i - 1]) rep.monotone = false;
  return rep;
}

/// The documented Z = 5 counterexample to monotonicity in p: at W = 0.673
/// the optimal class count rises from 2 (p = 0.60) to 3 (p = 0.62), with
/// both points profitable.
struct IncreasingPWitness {
  RegionCell low;
  RegionCell high;
  bool confirmed = false;
};

inline IncreasingPWitness increasing_p_counterexample(int z = 5) {
  IncreasingPWitness wit;
  wit.low = classify_point(0.60, 0.673, z);
  wit.high = classify_point(0.62, 0.673, z);
  wit.confirmed = wit.low.profitable && wit.high.profitable &&
                  wit.low.optimal_m == 2 && wit.high.optimal_m == 3;
  return wit;
}

/// Witness that the optimal class count can rise from 1 to 2 as p grows:
/// a W with some (p1, W) in L(1) and p2 > p1 with (p2, W) in L(2). Exists
/// whenever the single-class crossing point sits left of the peak of the
/// second marginal curve (always, for odd Z >= 3).
struct SingleToTwoWitness {
  bool found = false;
  double w = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
};

inline SingleToTwoWitness find_single_to_two_class_witness(int z) {
  detail::require(z >= 3, "find_single_to_two_class_witness: z must be >= 3");
  SingleToTwoWitness wit;
  const CrossingRoot cr = crossing_root(z, 1, 2);
  if (cr.equal_functions) return wit;
  const PeakPoint peak = peak_point(z, 2, false);
  if (!(cr.p < peak.s)) return wit;
  const SparsePolynomial f2 = marginal_output_poly(z, 2);
  wit.w = 0.5 * (f2.eval(cr.p) + peak.value);
  const int steps = 4000;
  for (int i = 0; i <= steps && wit.p1 == 0.0; ++i) {
    const double p = cr.p + (peak.s - cr.p) * double(i) / double(steps);
    if (p > 0.0 && p < 1.0 && in_L(1, p, wit.w, z)) wit.p1 = p;
  }
  if (wit.p1 == 0.0) return wit;
  const double hi = std::min(0.999999, peak.s + (peak.s - cr.p));
  for (int i = 0; i <= steps; ++i) {
    const double p = wit.p1 + (hi - wit.p1) * double(i) / double(steps);
    if (p > wit.p1 && p < 1.0 && in_L(2, p, wit.w, z)) {
      wit.p2 = p;
      wit.found = true;
      return wit;
    }
  }
  return wit;
}

/// Reported (not asserted) comparative statics in p: within the trimmed
/// union of regions, increasing p should not increase the optimal class
/// count. Scans each W row left to right; a profitable cell whose class
/// count exceeds that of some earlier trimmed-region cell is a violation.
struct MonotonePReport {
  long long rows = 0;
  long long checked = 0;
  long long violations = 0;
};

inline MonotonePReport monotone_in_p_report(int z,
                                            const std::vector<double>& p_grid,
                                            const std::vector<double>& w_grid,
                                            int cap = kDefaultBruteforceCap) {
  std::vector<TrimInfo> trims(m_upper(z) + 1);
  for (int k = 1; k <= m_upper(z); ++k) trims[k] = trim_info(z, k);
  MonotonePReport rep;
  for (double w : w_grid) {
    ++rep.rows;
    int min_trimmed_m = 1 << 30;
    for (double p : p_grid) {
      const RegionCell cell = classify_point(p, w, z, cap);
      if (!cell.profitable) continue;
      ++rep.checked;
      if (cell.optimal_m > min_trimmed_m) ++rep.violations;
      if (cell.l_label) {
        const int k = *cell.l_label;
        const bool in_bar =
            (k == z) ? true : in_L_prime(p, w, z, trims[k]);
        if (in_bar) min_trimmed_m = std::min(min_trimmed_m, cell.optimal_m);
      }
    }
  }
  return rep;
}

/// Scans a p-major grid into cells plus sampled boundary curves: each
/// marginal curve W = f_k(p), each per-class value curve W = V(Q_k, p)/k,
/// and the profitability constraint C.
struct Atlas {
  struct CurveSample {
    std::string curve;  ///< "f_k", "V_over_k" or "C"
    int k;              ///< family index; 0 for the constraint curve
    double p;
    double w;
  };
  int z = 0;
  std::vector<RegionCell> cells;
  std::vector<CurveSample> curves;
};

inline Atlas emit_atlas(int z, const std::vector<double>& p_grid,
                        const std::vector<double>& w_grid,
                        int cap = kDefaultBruteforceCap) {
  detail::require(!p_grid.empty() && !w_grid.empty(),
                  "emit_atlas: empty grid");
  for (size_t i = 0; i < p_grid.size(); ++i) {
    detail::require(p_grid[i] > 0.0 && p_grid[i] < 1.0,
                    "emit_atlas: p grid out of (0, 1)");
    detail::require(i == 0 || p_grid[i - 1] < p_grid[i],
                    "emit_atlas: p grid not strictly increasing");
  }
  for (size_t i = 0; i < w_grid.size(); ++i) {
    detail::require(w_grid[i] > 0.0, "emit_atlas: w grid must be positive");
    detail::require(i == 0 || w_grid[i - 1] < w_grid[i],
                    "emit_atlas: w grid not strictly increasing");
  }
  Atlas atlas;
  atlas.z = z;
  atlas.cells.reserve(p_grid.size() * w_grid.size());
  for (double p : p_grid)
    for (double w : w_grid) atlas.cells.push_back(classify_point(p, w, z, cap));
  for (int k = 2; k <= m_upper(z) + 1; ++k) {
    const SparsePolynomial f = marginal_output_poly(z, k);
    for (double p : p_grid) atlas.curves.push_back({"f_k", k, p, f.eval(p)});
  }
  for (int k = 1; k <= m_upper(z); ++k) {
    const SparsePolynomial v = balanced_output_poly(z, k);
    for (double p : p_grid)
      atlas.curves.push_back({"V_over_k", k, p, v.eval(p) / double(k)});
  }
  for (double p : p_grid)
    atlas.curves.push_back({"C", 0, p, profitability_constraint(z, p)});
  return atlas;
}

/// One compared crossing root. The margin is the smallest slack over every
/// ordering this root participates in; a negative margin beyond the noise
/// floor marks a violation (a reportable finding, not an error).
struct RootOrderLine {
  int z, i, j;
  double p;
  double residual;
  bool certified;
  double margin;  ///< +infinity when no ordering applies to this root
  bool violation;
};

struct RootOrderScan {
  std::vector<RootOrderLine> lines;
  int equal_function_pairs = 0;
  bool violation_free = true;
};

/// For each Z in [z_lo, z_hi], isolates every defined crossing root p_{i,j}
/// of the marginal family (index 1 = single-class output curve) and checks
/// the ordering claims:
///   (a) p_{i,k} <= p_{k,k+1} for i > k + 1,
///   (b) p_{i,k+1} >= p_{k,k+1} for i < k,
///   (c) for fixed i, p_{i,k} is non-increasing in k.
/// violation_tol is the noise floor below zero at which a negative slack
/// counts as a violation.
inline RootOrderScan scan_root_orderings(int z_lo, int z_hi,
                                         double violation_tol = 1e-12) {
  detail::require(z_lo >= 2 && z_lo <= z_hi && z_hi <= 200,
                  "scan_root_orderings: bad z range");
  detail::require(violation_tol >= 0.0,
                  "scan_root_orderings: negative tolerance");
  RootOrderScan scan;
  const double kNoise = violation_tol;
  for (int z = z_lo; z <= z_hi; ++z) {
    const int top = m_upper(z) + 1;
    // root[a][b] for 1 <= a < b <= top; line_index parallel.
    std::vector<std::vector<std::optional<double>>> root(
        top + 1, std::vector<std::optional<double>>(top + 1));
    std::vector<std::vector<int>> line_of(top + 1,
                                          std::vector<int>(top + 1, -1));
    for (int a = 1; a < top; ++a) {
      for (int b = a + 1; b <= top; ++b) {
        const CrossingRoot cr = crossing_root(z, a, b);
        if (cr.equal_functions) {
          ++scan.equal_function_pairs;
          continue;
        }
        root[a][b] = cr.p;
        line_of[a][b] = static_cast<int>(scan.lines.size());
        scan.lines.push_back({z, a, b, cr.p, cr.residual, cr.certified,
                              std::numeric_limits<double>::infinity(), false});
      }
    }
    auto get = [&](int a, int b) -> std::optional<double> {
      if (a > b) std::swap(a, b);
      return root[a][b];
    };
    auto apply_slack = [&](int a1, int b1, int a2, int b2, double slack) {
      for (auto [a, b] : {std::pair{a1, b1}, std::pair{a2, b2}}) {
        if (a > b) std::swap(a, b);
        RootOrderLine& line = scan.lines[line_of[a][b]];
        line.margin = std::min(line.margin, slack);
        if (slack < -kNoise) {
          line.violation = true;
          scan.violation_free = false;
        }
      }
    };
    // (a) and (b): comparisons against the adjacent crossing p_{k,k+1}.
    for (int k = 1; k < top; ++k) {
      const auto adjacent = get(k, k + 1);
      if (!adjacent) continue;
      for (int i = k + 2; i <= top; ++i)
        if (const auto r = get(i, k))
          apply_slack(k, k + 1, i, k, *adjacent - *r);
      for (int i = 1; i < k; ++i)
        if (const auto r = get(i, k + 1))
          apply_slack(k, k + 1, i, k + 1, *r - *adjacent);
    }
    // (c): for a fixed first index the crossing points decrease in the
    // second index.
    for (int i = 1; i <= top; ++i) {
      for (int j = 1; j <= top; ++j) {
        if (j == i) continue;
        for (int k = j + 1; k <= top; ++k) {
          if (k == i) continue;
          const auto rj = get(i, j);
          const auto rk = get(i, k);
          if (rj && rk) apply_slack(i, j, i, k, *rj - *rk);
        }
      }
    }
  }
  return scan;
}

}  // namespace classopt
