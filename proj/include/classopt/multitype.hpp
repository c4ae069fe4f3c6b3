#pragma once

// The s-type extension: students of type i have their own non-disruption
// probability p_i, a class mixing several types multiplies their factors.
// Provides an exact small-instance solver, the cycle-breaking improvement
// step that forces optima to be forests, and structural verification.

#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "classopt/core.hpp"

namespace classopt {

struct MultiTypeInstance {
  int s;                      ///< number of student types, >= 1
  std::vector<double> probs;  ///< p_i in (0, 1]
  std::vector<int> counts;    ///< a_i >= 1 students of each type
  double w;
  double v;

  MultiTypeInstance(std::vector<double> probs_, std::vector<int> counts_,
                    double w_, double v_ = 1.0)
      : s(static_cast<int>(probs_.size())),
        probs(std::move(probs_)),
        counts(std::move(counts_)),
        w(w_),
        v(v_) {
    detail::require(s >= 1, "MultiTypeInstance: need at least one type");
    detail::require(counts.size() == probs.size(),
                    "MultiTypeInstance: probs/counts size mismatch");
    for (double p : probs)
      detail::require(p > 0.0 && p <= 1.0,
                      "MultiTypeInstance: p_i must be in (0, 1]");
    for (int a : counts)
      detail::require(a >= 1, "MultiTypeInstance: a_i must be >= 1");
    detail::require(w > 0.0 && v > 0.0, "MultiTypeInstance: w, v must be > 0");
  }

  int z() const {
    return std::accumulate(counts.begin(), counts.end(), 0);
  }
};

/// An s x m assignment of students to classes, stored by columns (classes).
/// Canonical form sorts the columns by (column sum, then entries
/// lexicographically), so allocations compare structurally.
class AllocationMatrix {
 public:
  AllocationMatrix() = default;

  AllocationMatrix(int s, std::vector<std::vector<int>> columns)
      : s_(s), cols_(std::move(columns)) {
    detail::require(s_ >= 1, "AllocationMatrix: need at least one type");
    for (const auto& c : cols_) {
      detail::require(static_cast<int>(c.size()) == s_,
                      "AllocationMatrix: column size mismatch");
      int sum = 0;
      for (int e : c) {
        detail::require(e >= 0, "AllocationMatrix: negative entry");
        sum += e;
      }
      detail::require(sum >= 1, "AllocationMatrix: empty class");
    }
    canonicalize();
  }

  static bool column_less(const std::vector<int>& a,
                          const std::vector<int>& b) {
    const int sa = std::accumulate(a.begin(), a.end(), 0);
    const int sb = std::accumulate(b.begin(), b.end(), 0);
    if (sa != sb) return sa < sb;
    return a < b;
  }

  int types() const { return s_; }
  int classes() const { return static_cast<int>(cols_.size()); }
  int entry(int i, int j) const { return cols_[j][i]; }
  const std::vector<int>& column(int j) const { return cols_[j]; }
  const std::vector<std::vector<int>>& columns() const { return cols_; }

  int column_sum(int j) const {
    return std::accumulate(cols_[j].begin(), cols_[j].end(), 0);
  }
  int row_sum(int i) const {
    int total = 0;
    for (const auto& c : cols_) total += c[i];
    return total;
  }
  int mixed_class_count() const {
    int mixed = 0;
    for (const auto& c : cols_)
      if (std::count_if(c.begin(), c.end(), [](int e) { return e > 0; }) >= 2)
        ++mixed;
    return mixed;
  }
  int singleton_class_count() const {
    int n = 0;
    for (int j = 0; j < classes(); ++j)
      if (column_sum(j) == 1) ++n;
    return n;
  }

  bool feasible_for(const MultiTypeInstance& inst) const {
    if (s_ != inst.s || cols_.empty()) return false;
    for (int i = 0; i < s_; ++i)
      if (row_sum(i) != inst.counts[i]) return false;
    return true;
  }

  friend bool operator==(const AllocationMatrix& a, const AllocationMatrix& b) {
    return a.s_ == b.s_ && a.cols_ == b.cols_;
  }
  friend bool operator!=(const AllocationMatrix& a, const AllocationMatrix& b) {
    return !(a == b);
  }

 private:
  void canonicalize() { std::sort(cols_.begin(), cols_.end(), column_less); }

  int s_ = 0;
  std::vector<std::vector<int>> cols_;
};

namespace detail {

// Profit contribution of one class: (sum of entries) * prod_i p_i^{n_i}.
inline double column_contribution(const std::vector<double>& probs,
                                  const std::vector<int>& col) {
  int n = 0;
  double prod = 1.0;
  for (size_t i = 0; i < col.size(); ++i) {
    if (col[i] > 0) {
      n += col[i];
      prod *= std::pow(probs[i], double(col[i]));
    }
  }
  return double(n) * prod;
}

}  // namespace detail

/// Objective V * sum_j (sum_i n_ij) prod_i p_i^{n_ij} - W m.
inline double evaluate_multitype(const MultiTypeInstance& inst,
                                 const AllocationMatrix& alloc) {
  detail::require(alloc.feasible_for(inst),
                  "evaluate_multitype: allocation infeasible for instance");
  double total = 0.0;
  for (int j = 0; j < alloc.classes(); ++j)
    total += detail::column_contribution(inst.probs, alloc.column(j));
  return inst.v * total - inst.w * double(alloc.classes());
}

/// Bipartite structure of an allocation: type nodes on one side, class
/// nodes on the other, an edge wherever n_ij > 0.
struct BipartiteStructure {
  std::vector<std::pair<int, int>> edges;  ///< (type, class) pairs
  std::vector<int> mixed_classes;          ///< column indices with >= 2 types
  int tree_count = 0;
  bool acyclic = false;

  static BipartiteStructure of(const AllocationMatrix& alloc) {
    BipartiteStructure g;
    const int s = alloc.types(), m = alloc.classes();
    std::vector<int> parent(s + m);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int components = s + m;
    bool cycle = false;
    for (int j = 0; j < m; ++j) {
      int positive = 0;
      for (int i = 0; i < s; ++i) {
        if (alloc.entry(i, j) > 0) {
          ++positive;
          g.edges.emplace_back(i, j);
          const int a = find(i), b = find(s + j);
          if (a == b)
            cycle = true;
          else {
            parent[a] = b;
            --components;
          }
        }
      }
      if (positive >= 2) g.mixed_classes.push_back(j);
    }
    g.tree_count = components;
    g.acyclic = !cycle;
    return g;
  }
};

struct MultiSolveResult {
  AllocationMatrix best;
  double profit = 0.0;
  bool profitable = false;
};

inline constexpr int kDefaultMultitypeZCap = 12;
inline constexpr int kDefaultMultitypeSCap = 4;

/// Global optimum over all feasible allocations into any class count.
/// Ties prefer fewer classes, then fewer mixed classes, then the
/// lexicographically smallest canonical column sequence.
inline MultiSolveResult solve_multitype_bruteforce(
    const MultiTypeInstance& inst, int z_cap = kDefaultMultitypeZCap,
    int s_cap = kDefaultMultitypeSCap) {
  if (inst.z() > z_cap)
    throw CapacityError("solve_multitype_bruteforce: z exceeds cap");
  if (inst.s > s_cap)
    throw CapacityError("solve_multitype_bruteforce: s exceeds cap");

  // All possible class columns, canonically ordered; allocations are
  // non-decreasing index sequences so every multiset appears exactly once.
  std::vector<std::vector<int>> cols;
  {
    std::vector<int> cur(inst.s, 0);
    for (;;) {
      int i = 0;
      while (i < inst.s && cur[i] == inst.counts[i]) cur[i++] = 0;
      if (i == inst.s) break;
      ++cur[i];
      cols.push_back(cur);
    }
    std::sort(cols.begin(), cols.end(), AllocationMatrix::column_less);
  }
  std::vector<double> contribution(cols.size());
  std::vector<int> col_sum(cols.size());
  std::vector<bool> col_mixed(cols.size());
  for (size_t c = 0; c < cols.size(); ++c) {
    contribution[c] = detail::column_contribution(inst.probs, cols[c]);
    col_sum[c] = std::accumulate(cols[c].begin(), cols[c].end(), 0);
    col_mixed[c] =
        std::count_if(cols[c].begin(), cols[c].end(),
                      [](int e) { return e > 0; }) >= 2;
  }

  struct Best {
    bool has = false;
    double profit = 0.0;
    int m = 0;
    int mixed = 0;
    std::vector<int> col_indices;
  } best;

  std::vector<int> remaining = inst.counts;
  std::vector<int> chosen;
  int remaining_total = inst.z();

  std::function<void(size_t, double, int)> rec = [&](size_t idx_min,
                                                     double running,
                                                     int mixed) {
    if (remaining_total == 0) {
      const int m = static_cast<int>(chosen.size());
      const double profit = inst.v * running - inst.w * double(m);
      const bool take =
          !best.has || profit > best.profit ||
          (profit == best.profit &&
           (m < best.m ||
            (m == best.m && (mixed < best.mixed ||
                             (mixed == best.mixed &&
                              chosen < best.col_indices)))));
      if (take) best = {true, profit, m, mixed, chosen};
      return;
    }
    for (size_t c = idx_min; c < cols.size(); ++c) {
      if (col_sum[c] > remaining_total) continue;
      bool fits = true;
      for (int i = 0; i < inst.s; ++i)
        if (cols[c][i] > remaining[i]) {
          fits = false;
          break;
        }
      if (!fits) continue;
      for (int i = 0; i < inst.s; ++i) remaining[i] -= cols[c][i];
      remaining_total -= col_sum[c];
      chosen.push_back(static_cast<int>(c));
      rec(c, running + contribution[c], mixed + (col_mixed[c] ? 1 : 0));
      chosen.pop_back();
      remaining_total += col_sum[c];
      for (int i = 0; i < inst.s; ++i) remaining[i] += cols[c][i];
    }
  };
  rec(0, 0.0, 0);

  MultiSolveResult out;
  std::vector<std::vector<int>> chosen_cols;
  chosen_cols.reserve(best.col_indices.size());
  for (int c : best.col_indices) chosen_cols.push_back(cols[c]);
  out.best = AllocationMatrix(inst.s, std::move(chosen_cols));
  out.profit = best.profit;
  out.profitable = best.profit > 0.0;
  return out;
}

enum class CycleBreakStatus { improved, acyclic, tied_probabilities };

struct CycleBreakResult {
  CycleBreakStatus status = CycleBreakStatus::acyclic;
  std::optional<AllocationMatrix> improved;
  double objective_delta = 0.0;
};

/// If the allocation's bipartite graph contains a cycle, builds the
/// alternating +-1 perturbation along it and returns whichever direction
/// strictly improves the objective (one must, provided the types meeting in
/// each perturbed class have distinct probabilities). Returns acyclic when
/// there is no cycle, tied_probabilities when equal p values void the
/// strictness guarantee.
inline CycleBreakResult cycle_break_improve(const MultiTypeInstance& inst,
                                            const AllocationMatrix& alloc) {
  detail::require(alloc.feasible_for(inst),
                  "cycle_break_improve: allocation infeasible");
  const int s = alloc.types(), m = alloc.classes();
  // Find any cycle by DFS over the bipartite graph.
  std::vector<std::vector<int>> adj(s + m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < s; ++i)
      if (alloc.entry(i, j) > 0) {
        adj[i].push_back(s + j);
        adj[s + j].push_back(i);
      }
  std::vector<int> parent(s + m, -2);
  std::vector<int> cycle_nodes;
  std::function<bool(int, int)> dfs = [&](int u, int from) {
    parent[u] = from;
    for (int nxt : adj[u]) {
      if (nxt == from) continue;
      if (parent[nxt] == -2) {
        if (dfs(nxt, u)) return true;
      } else {
        // Back edge u -> nxt closes a cycle; walk parents back to nxt.
        cycle_nodes.clear();
        for (int x = u; x != nxt; x = parent[x]) cycle_nodes.push_back(x);
        cycle_nodes.push_back(nxt);
        return true;
      }
    }
    return false;
  };
  CycleBreakResult out;
  bool found = false;
  for (int start = 0; start < s + m && !found; ++start)
    if (parent[start] == -2) found = dfs(start, -1);
  if (!found) {
    out.status = CycleBreakStatus::acyclic;
    return out;
  }
  if (cycle_nodes.front() >= s)  // rotate so the cycle starts at a type node
    std::rotate(cycle_nodes.begin(), cycle_nodes.begin() + 1,
                cycle_nodes.end());
  const int t = static_cast<int>(cycle_nodes.size()) / 2;
  std::vector<int> rows(t), cols(t);
  for (int k = 0; k < t; ++k) {
    rows[k] = cycle_nodes[2 * k];
    cols[k] = cycle_nodes[2 * k + 1] - s;
  }
  for (int k = 0; k < t; ++k)
    if (inst.probs[rows[k]] == inst.probs[rows[(k + 1) % t]]) {
      out.status = CycleBreakStatus::tied_probabilities;
      return out;
    }
  auto perturbed = [&](int eps) {
    std::vector<std::vector<int>> pcols = alloc.columns();
    for (int k = 0; k < t; ++k) {
      pcols[cols[k]][rows[k]] += eps;
      pcols[cols[k]][rows[(k + 1) % t]] -= eps;
    }
    return AllocationMatrix(s, std::move(pcols));
  };
  const double base = evaluate_multitype(inst, alloc);
  const AllocationMatrix plus = perturbed(+1), minus = perturbed(-1);
  const double fp = evaluate_multitype(inst, plus);
  const double fm = evaluate_multitype(inst, minus);
  if (fp >= fm && fp > base) {
    out.status = CycleBreakStatus::improved;
    out.improved = plus;
    out.objective_delta = fp - base;
  } else if (fm > base) {
    out.status = CycleBreakStatus::improved;
    out.improved = minus;
    out.objective_delta = fm - base;
  } else {
    out.status = CycleBreakStatus::tied_probabilities;
  }
  return out;
}

/// Structural facts about an allocation that hold at every optimum: the
/// bipartite graph is a forest and at most s-1 classes are mixed; when
/// exactly s-1 are mixed, the mixed submatrix graph is a path with 2(s-1)
/// edges.
struct StructureReport {
  bool acyclic = false;
  int mixed_classes = 0;
  bool mixed_bound_ok = false;
  bool path_check_applicable = false;
  bool path_ok = false;
};

inline StructureReport verify_structure(const AllocationMatrix& alloc, int s) {
  detail::require(s == alloc.types(), "verify_structure: type count mismatch");
  StructureReport rep;
  const BipartiteStructure g = BipartiteStructure::of(alloc);
  rep.acyclic = g.acyclic;
  rep.mixed_classes = static_cast<int>(g.mixed_classes.size());
  rep.mixed_bound_ok = rep.mixed_classes <= s - 1;
  rep.path_check_applicable = s >= 2 && rep.mixed_classes == s - 1;
  if (!rep.path_check_applicable) return rep;
  // Degrees over the mixed-column subgraph; a path with 2(s-1) edges knits
  // all s type nodes and the s-1 mixed class nodes into one chain.
  std::vector<int> degree(s + rep.mixed_classes, 0);
  int edge_count = 0;
  for (int idx = 0; idx < rep.mixed_classes; ++idx) {
    const int j = g.mixed_classes[idx];
    for (int i = 0; i < s; ++i)
      if (alloc.entry(i, j) > 0) {
        ++degree[i];
        ++degree[s + idx];
        ++edge_count;
      }
  }
  bool degrees_ok = true;
  int leaves = 0;
  for (int d : degree) {
    if (d == 0 || d > 2) degrees_ok = false;
    if (d == 1) ++leaves;
  }
  rep.path_ok =
      rep.acyclic && degrees_ok && leaves == 2 && edge_count == 2 * (s - 1);
  return rep;
}

/// Singleton-class bound: when W >= max over type pairs (with repetition)
/// of p_i + p_j - 2 p_i p_j, an optimum has at most one singleton class and
/// its class count obeys the same gap as the single-type model.
struct SingletonBoundReport {
  bool hypothesis_met = false;
  double w_threshold = 0.0;
  int singleton_classes = 0;
  bool singleton_ok = false;
  bool profitable = false;
  int m = 0;
  bool gap_ok = false;
};

inline SingletonBoundReport singleton_bound_check(
    const MultiTypeInstance& inst, const AllocationMatrix& alloc) {
  detail::require(alloc.feasible_for(inst),
                  "singleton_bound_check: allocation infeasible");
  SingletonBoundReport rep;
  for (int i = 0; i < inst.s; ++i)
    for (int j = i; j < inst.s; ++j)
      rep.w_threshold =
          std::max(rep.w_threshold, inst.probs[i] + inst.probs[j] -
                                        2.0 * inst.probs[i] * inst.probs[j]);
  rep.hypothesis_met = inst.w >= rep.w_threshold;
  rep.singleton_classes = alloc.singleton_class_count();
  rep.singleton_ok = !rep.hypothesis_met || rep.singleton_classes <= 1;
  rep.profitable = evaluate_multitype(inst, alloc) > 0.0;
  rep.m = alloc.classes();
  const int z = inst.z();
  const bool gap = rep.m == z || (z % 2 == 0 ? 2 * rep.m <= z
                                             : 2 * rep.m <= z + 1);
  rep.gap_ok = !(rep.hypothesis_met && rep.profitable) || gap;
  return rep;
}

}  // namespace classopt
