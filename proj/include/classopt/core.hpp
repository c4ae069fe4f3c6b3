#pragma once

// Domain types and profit evaluation for the class-size optimization model.
//
// A school has Z students, a per-student non-disruption probability p, a
// teacher cost W and a unit learning value V. A class of n students produces
// n * p^n units of learning. The model profit of a class size vector
// (n_1, ..., n_m) is V * sum_i n_i p^{n_i} - m * W; the classic Lazear profit
// for m equal classes is Z * V * p^{Z/m} - m * W.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace classopt {

/// Thrown when an exact solver is asked for an instance beyond its
/// enumeration cap. Distinct from std::invalid_argument so callers can map
/// it to a different exit path.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace detail

/// A single-type problem instance.
struct Instance {
  int z;       ///< student count, >= 1
  double p;    ///< non-disruption probability, in (0, 1]
  double w;    ///< teacher cost, > 0, in units of v
  double v;    ///< value of a unit of learning, > 0

  Instance(int z_, double p_, double w_, double v_ = 1.0)
      : z(z_), p(p_), w(w_), v(v_) {
    detail::require(z >= 1, "Instance: z must be >= 1");
    detail::require(p > 0.0 && p <= 1.0, "Instance: p must be in (0, 1]");
    detail::require(w > 0.0, "Instance: w must be > 0");
    detail::require(v > 0.0, "Instance: v must be > 0");
  }
};

/// An ordered composition of class sizes. Solutions are multisets, so the
/// canonical form keeps the entries in non-decreasing order; equality of
/// solutions is structural equality of the canonical forms.
class ClassSizeVector {
 public:
  ClassSizeVector() = default;

  explicit ClassSizeVector(std::vector<int> sizes) : sizes_(std::move(sizes)) {
    for (int n : sizes_)
      detail::require(n >= 1, "ClassSizeVector: entries must be >= 1");
    std::sort(sizes_.begin(), sizes_.end());
  }

  /// Adopts a buffer that is already sorted non-decreasingly.
  static ClassSizeVector from_sorted(std::vector<int> sizes) {
    ClassSizeVector v;
    v.sizes_ = std::move(sizes);
    return v;
  }

  const std::vector<int>& sizes() const { return sizes_; }
  int class_count() const { return static_cast<int>(sizes_.size()); }
  long long total() const {
    long long t = 0;
    for (int n : sizes_) t += n;
    return t;
  }
  int spread() const {
    return sizes_.empty() ? 0 : sizes_.back() - sizes_.front();
  }
  int singleton_count() const {
    return static_cast<int>(std::count(sizes_.begin(), sizes_.end(), 1));
  }

  friend bool operator==(const ClassSizeVector& a, const ClassSizeVector& b) {
    return a.sizes_ == b.sizes_;
  }
  friend bool operator!=(const ClassSizeVector& a, const ClassSizeVector& b) {
    return !(a == b);
  }

 private:
  std::vector<int> sizes_;
};

/// Reduced parameters of the Lazear profit: with a = Z ln p and
/// lambda0 = W / (Z V), the Lazear profit is Z V (e^{a/m} - lambda0 m).
struct LazearReduced {
  double a;        ///< Z * ln(p), <= 0 (negative whenever p < 1)
  double lambda0;  ///< W / (Z * V), > 0

  static LazearReduced of(const Instance& inst) {
    return LazearReduced{double(inst.z) * std::log(inst.p),
                         inst.w / (double(inst.z) * inst.v)};
  }
};

struct SolveResult {
  ClassSizeVector best;
  double profit = 0.0;
  bool profitable = false;  ///< profit strictly greater than zero
};

namespace detail {

// Shared evaluation kernel. All solvers and public evaluators route through
// this single loop so that candidate profits compare bit-for-bit: terms are
// summed in canonical (non-decreasing size) order.
inline double output_of_sorted(const std::vector<int>& sizes, double p) {
  double total = 0.0;
  for (int n : sizes) total += double(n) * std::pow(p, double(n));
  return total;
}

inline double profit_of_sorted(const Instance& inst,
                               const std::vector<int>& sizes) {
  return inst.v * output_of_sorted(sizes, inst.p) -
         inst.w * double(sizes.size());
}

}  // namespace detail

/// Educational output sum_i n_i p^{n_i} of a class size vector.
inline double evaluate_output(const ClassSizeVector& sizes, double p) {
  detail::require(p > 0.0 && p <= 1.0, "evaluate_output: p must be in (0, 1]");
  return detail::output_of_sorted(sizes.sizes(), p);
}

/// Model profit V * sum_i n_i p^{n_i} - m W. The sizes must sum to inst.z.
inline double evaluate_profit(const Instance& inst,
                              const ClassSizeVector& sizes) {
  detail::require(sizes.total() == inst.z,
                  "evaluate_profit: class sizes must sum to z");
  return detail::profit_of_sorted(inst, sizes.sizes());
}

/// Lazear profit Z V p^{Z/m} - m W. m need not divide Z; the exponent is
/// real-valued.
inline double evaluate_lazear(const Instance& inst, int m) {
  detail::require(m >= 1 && m <= inst.z,
                  "evaluate_lazear: m must be in [1, z]");
  return double(inst.z) * inst.v *
             std::pow(inst.p, double(inst.z) / double(m)) -
         double(m) * inst.w;
}

/// Smallest integer class count maximizing the reduced Lazear profit
/// h(m) = e^{a/m} - lambda0 * m over m >= 1.
inline int lazear_optimal_class_count(const LazearReduced& lr) {
  detail::require(lr.lambda0 > 0.0,
                  "lazear_optimal_class_count: lambda0 must be > 0");
  // h(m) <= 1 - lambda0 * m, so any m with 1 - lambda0 * m < h(1) is
  // dominated by m = 1; that bounds the scan.
  double h1 = std::exp(lr.a) - lr.lambda0;
  long long hi = static_cast<long long>(
                     std::ceil((1.0 - std::exp(lr.a)) / lr.lambda0)) +
                 2;
  hi = std::max<long long>(hi, 1);
  int best_m = 1;
  double best_h = h1;
  for (long long m = 2; m <= hi; ++m) {
    double h = std::exp(lr.a / double(m)) - lr.lambda0 * double(m);
    if (h > best_h) {
      best_h = h;
      best_m = static_cast<int>(m);
    }
  }
  return best_m;
}

/// Comparison of an optimal model profit against the Lazear profit at the
/// same class count. The dominance claim (model profit <= Lazear profit,
/// equality iff p = 1 or m divides Z) is only asserted when the hypothesis
/// n(a, lambda0) > -a is detected; otherwise hypothesis_met stays false and
/// the caller should treat the gap as unasserted.
struct LazearComparison {
  double alt_profit;       ///< model profit of the given optimum
  double lazear_profit;    ///< Lazear profit at the same class count
  double gap;              ///< lazear_profit - alt_profit
  int m;                   ///< class count of the optimum
  int n_alambda;           ///< Lazear-optimal integer class count
  bool hypothesis_met;     ///< n(a, lambda0) > -a
  bool equality_expected;  ///< p == 1 or m divides z
  bool gap_ok;             ///< gap >= -1e-9 whenever hypothesis_met
};

inline LazearComparison lazear_dominates(const Instance& inst,
                                         const SolveResult& result) {
  const int m = result.best.class_count();
  detail::require(m >= 1 && m <= inst.z,
                  "lazear_dominates: result has invalid class count");
  LazearComparison cmp{};
  cmp.m = m;
  cmp.alt_profit = result.profit;
  cmp.lazear_profit = evaluate_lazear(inst, m);
  cmp.gap = cmp.lazear_profit - cmp.alt_profit;
  const LazearReduced lr = LazearReduced::of(inst);
  cmp.n_alambda = lazear_optimal_class_count(lr);
  cmp.hypothesis_met = double(cmp.n_alambda) > -lr.a;
  cmp.equality_expected = (inst.p == 1.0) || (inst.z % m == 0);
  cmp.gap_ok = !cmp.hypothesis_met || cmp.gap >= -1e-9;
  return cmp;
}

}  // namespace classopt
