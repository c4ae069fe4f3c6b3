#pragma once

// The polynomial families behind the structural results: marginal output
// polynomials f_k = V(Q_k, .) - V(Q_{k-1}, .), the two-class optimality test
// polynomials, their crossing roots and peak points, and the exact integer
// second-difference analysis of balanced vectors.

#include <optional>
#include <random>
#include <vector>

#include "classopt/balanced.hpp"
#include "classopt/polynomial.hpp"

namespace classopt {

/// Output polynomial V(N, .) = sum_i n_i p^{n_i} of a class size vector,
/// with exact integer coefficients.
inline SparsePolynomial output_polynomial(const ClassSizeVector& sizes) {
  std::vector<SparsePolynomial::Term> terms;
  for (int n : sizes.sizes()) terms.push_back({n, n});
  return SparsePolynomial::from_terms(std::move(terms));
}

/// Output polynomial of the balanced k-class vector Q_k:
/// (k - r) q p^q + r (q + 1) p^{q+1}.
inline SparsePolynomial balanced_output_poly(int z, int k) {
  const BalancedVector b = BalancedVector::of(z, k);
  detail::require(b.q >= 1, "balanced_output_poly: k exceeds z");
  return SparsePolynomial::from_terms(
      {{b.q, (long long)(k - b.r) * b.q},
       {b.q + 1, (long long)b.r * (b.q + 1)}});
}

/// Marginal output polynomial of the k-th class,
/// f_k = V(Q_k, .) - V(Q_{k-1}, .), for 2 <= k <= m_upper(z) + 1.
inline SparsePolynomial marginal_output_poly(int z, int k) {
  detail::require(k >= 2 && k <= m_upper(z) + 1,
                  "marginal_output_poly: k out of range");
  return balanced_output_poly(z, k) - balanced_output_poly(z, k - 1);
}

/// The near-equal three-way split of Z students: sizes beta_1 >= beta_2 >=
/// beta_3 with beta_1 + beta_2 + beta_3 = Z, and the offsets
/// delta_i = Z - 3 beta_i.
struct TripartiteSplit {
  int z;
  int beta[3];    ///< beta[0] >= beta[1] >= beta[2]
  int delta[3];   ///< z - 3 * beta[i]; the deltas sum to zero
  double omega;   ///< 1 / z

  static TripartiteSplit of(int z) {
    detail::require(z >= 3, "TripartiteSplit: z must be >= 3");
    TripartiteSplit t{};
    t.z = z;
    switch (z % 3) {
      case 0:
        t.beta[0] = t.beta[1] = t.beta[2] = z / 3;
        break;
      case 2:
        t.beta[0] = t.beta[1] = (z + 1) / 3;
        t.beta[2] = (z - 2) / 3;
        break;
      default:  // z % 3 == 1
        t.beta[0] = (z + 2) / 3;
        t.beta[1] = t.beta[2] = (z - 1) / 3;
        break;
    }
    for (int i = 0; i < 3; ++i) t.delta[i] = z - 3 * t.beta[i];
    t.omega = 1.0 / double(z);
    return t;
  }

  ClassSizeVector as_vector() const {
    return ClassSizeVector({beta[0], beta[1], beta[2]});
  }
};

/// Two-class optimality test polynomial
/// 2 V((k, l), .) - V(three-way split, .) - V((Z), .), with l = Z - k.
/// Positivity at p is necessary for a two-class optimum (k, l).
inline SparsePolynomial two_class_test_poly(int z, int k) {
  detail::require(z >= 3, "two_class_test_poly: z must be >= 3");
  const int l = z - k;
  detail::require(k >= 1 && k <= l, "two_class_test_poly: need 1 <= k <= z/2");
  const TripartiteSplit t = TripartiteSplit::of(z);
  return SparsePolynomial::from_terms({{k, 2LL * k},
                                       {l, 2LL * l},
                                       {t.beta[0], -(long long)t.beta[0]},
                                       {t.beta[1], -(long long)t.beta[1]},
                                       {t.beta[2], -(long long)t.beta[2]},
                                       {z, -(long long)z}});
}

/// Variant test polynomial comparing (k, l) against the uneven resplit
/// (k, k, l - k): net form -(l-k) p^{l-k} + 2 l p^l - Z p^Z.
/// Only defined for k below the smallest three-way split part.
inline SparsePolynomial uneven_split_test_poly(int z, int k) {
  detail::require(z >= 3, "uneven_split_test_poly: z must be >= 3");
  const TripartiteSplit t = TripartiteSplit::of(z);
  detail::require(k >= 1 && k < t.beta[2],
                  "uneven_split_test_poly: need 1 <= k < beta_3");
  const int l = z - k;
  return SparsePolynomial::from_terms(
      {{l - k, -(long long)(l - k)}, {l, 2LL * l}, {z, -(long long)z}});
}

/// Model constants for one Z: the threshold root c of 2x = x^4 + 0.98 in
/// (0, 1), the probe point p1 = c^{6/Z}, and the critical two-class split
/// k_crit below which the test polynomial rises through p = 1.
struct Constants {
  double c;
  double p1;
  double k_crit;

  static Constants of(int z) {
    detail::require(z >= 1, "Constants: z must be >= 1");
    Constants out{};
    // Scale 2x - x^4 - 0.98 by 50 to get exact integer coefficients.
    const SparsePolynomial scaled =
        SparsePolynomial::from_terms({{0, -49}, {1, 100}, {4, -50}});
    out.c = isolate_root(scaled, 0.0, 1.0, 1e-15).value;
    out.p1 = std::pow(out.c, 6.0 / double(z));
    if (z % 3 == 0)
      out.k_crit = double(z) * (3.0 - std::sqrt(3.0)) / 6.0;
    else
      out.k_crit = 0.5 * double(z) -
                   std::sqrt(3.0 * (double(z) * double(z) + 2.0)) / 6.0;
    return out;
  }
};

namespace detail {

// Point in (0, x0] where the polynomial's sign equals the sign of its
// lowest-degree coefficient. Starts where the lowest term dominates and
// halves defensively.
inline double low_end_sample(const SparsePolynomial& poly, double x0 = 1e-3) {
  const auto& terms = poly.terms();
  require(!terms.empty(), "low_end_sample: zero polynomial");
  const bool want_pos = terms.front().coef > 0;
  double x = x0;
  for (int i = 0; i < 60; ++i, x *= 0.5) {
    const double v = poly.eval(x);
    if (v != 0.0 && (v > 0.0) == want_pos) return x;
  }
  throw RootNotBracketed("low_end_sample: sign never stabilized");
}

// Point 1 - delta at which the polynomial has the requested sign.
inline double near_one_sample(const SparsePolynomial& poly, bool want_pos) {
  double delta = 0.25;
  for (int i = 0; i < 60; ++i, delta *= 0.5) {
    const double x = 1.0 - delta;
    const double v = poly.eval(x);
    if (v != 0.0 && (v > 0.0) == want_pos) return x;
  }
  throw RootNotBracketed("near_one_sample: sign never reached");
}

}  // namespace detail

/// Crossing point of two curves of the marginal-output family in (0, 1).
/// Index 1 denotes the single-class output curve V(Q_1, .); indices >= 2
/// denote the marginal polynomials. When the two indices give structurally
/// identical polynomials the crossing is undefined and equal_functions is
/// set instead.
struct CrossingRoot {
  int i = 0, j = 0;
  bool equal_functions = false;
  double p = 0.0;
  double residual = 0.0;
  bool certified = false;
};

inline CrossingRoot crossing_root(int z, int i, int j) {
  detail::require(j >= 2 && i >= 1 && i < j && j <= m_upper(z) + 1,
                  "crossing_root: need 1 <= i < j <= m_upper(z) + 1");
  const SparsePolynomial low =
      (i == 1) ? balanced_output_poly(z, 1) : marginal_output_poly(z, i);
  const SparsePolynomial diff = marginal_output_poly(z, j) - low;
  CrossingRoot out;
  out.i = i;
  out.j = j;
  if (diff.is_zero()) {
    out.equal_functions = true;
    return out;
  }
  // The difference is positive for small p and negative close to 1, with a
  // unique interior root.
  const double lo = detail::low_end_sample(diff);
  const bool lo_pos = diff.eval(lo) > 0.0;
  const double hi = detail::near_one_sample(diff, !lo_pos);
  const RootEstimate est = isolate_root(diff, lo, hi, 1e-15);
  out.p = est.value;
  out.residual = est.residual;
  out.certified = est.certified;
  return out;
}

/// Peak of a marginal output polynomial: the unique s in (0, 1) where its
/// derivative changes sign from + to -, plus (when defined) the peak of the
/// next family member.
struct PeakPoint {
  int k = 0;
  double s = 0.0;
  double value = 0.0;  ///< f_k(s), the maximum of f_k on [0, 1]
  std::optional<std::pair<double, double>> next;  ///< (s_{k+1}, f_{k+1}(s_{k+1}))
};

inline PeakPoint peak_point(int z, int k, bool with_next = true) {
  const SparsePolynomial f = marginal_output_poly(z, k);
  const SparsePolynomial d = f.derivative();
  detail::require(!d.is_zero(), "peak_point: constant marginal polynomial");
  // d is positive for small p and strictly negative at 1 (exact integer
  // value), so (low sample, 1] brackets the unique sign change.
  detail::require(f.derivative_at_one() < 0, "peak_point: unexpected slope at 1");
  const double lo = detail::low_end_sample(d);
  const RootEstimate est = isolate_root(d, lo, 1.0, 1e-15);
  PeakPoint out;
  out.k = k;
  out.s = est.value;
  out.value = f.eval(est.value);
  if (with_next && k + 1 <= m_upper(z) + 1) {
    const PeakPoint nxt = peak_point(z, k + 1, false);
    out.next = std::make_pair(nxt.s, nxt.value);
  }
  return out;
}

/// Exact second difference of the squared-size sums around k, with its
/// equality classification. Convexity S(k-1) + S(k+1) >= 2 S(k) holds
/// always; equality happens exactly in the two documented degenerate cases.
struct SecondDifference {
  long long s_prev, s_mid, s_next;
  bool equality;
};

inline SecondDifference second_difference(int z, int k) {
  detail::require(k >= 2 && k <= m_upper(z) + 1,
                  "second_difference: k out of range");
  SecondDifference d{size_square_sum(z, k - 1), size_square_sum(z, k),
                     size_square_sum(z, k + 1), false};
  d.equality = d.s_prev + d.s_next == 2 * d.s_mid;
  return d;
}

/// The structural equality conditions: either q_{k-1} = q_k = q_{k+1}, or
/// k = Z/d + 1 for a divisor d >= 2 of Z with Z >= 2d(d-1), q_{k+1} = q_k =
/// d - 1 and q_{k-1} = d.
inline bool second_difference_equality_condition(int z, int k) {
  const int q_prev = z / (k - 1), q_mid = z / k, q_next = z / (k + 1);
  if (q_prev == q_mid && q_mid == q_next) return true;
  if (z % (k - 1) != 0) return false;
  const int d = z / (k - 1);
  return d >= 2 && z >= 2 * d * (d - 1) && q_next == d - 1 && q_mid == d - 1 &&
         q_prev == d;
}

/// Randomized and structured search for violations of
/// sum_i e^{x_i} (1 + a x_i) <= m over x with sum x_i = 0, x_i <= -1/a.
/// One-sided evidence only: finding no violation is not a certificate.
struct ExpBoundProbe {
  double worst_margin;        ///< max over tried x of (sum - m); > 0 violates
  std::vector<double> worst_x;
  int violations;
  bool violation_found;
};

inline ExpBoundProbe probe_exponential_bound(int m, double a, int trials,
                                             std::uint64_t seed = 12345) {
  detail::require(m >= 2, "probe_exponential_bound: m must be >= 2");
  detail::require(a > -1.0 && a < 0.0,
                  "probe_exponential_bound: a must be in (-1, 0)");
  const double x_cap = -1.0 / a;
  auto score = [&](const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += std::exp(x) * (1.0 + a * x);
    return s - double(m);
  };
  ExpBoundProbe out{-1e300, {}, 0, false};
  auto consider = [&](const std::vector<double>& xs) {
    const double margin = score(xs);
    if (margin > out.worst_margin) {
      out.worst_margin = margin;
      out.worst_x = xs;
    }
    if (margin > 1e-12) ++out.violations;
  };
  // Symmetric one-parameter family (x, -x, 0, ..., 0); the known violations
  // for m = 2 live here for small x.
  std::vector<double> xs(m, 0.0);
  const double grid_cap = std::min(x_cap, 4.0);
  for (int t = 1; t <= 400; ++t) {
    const double x = grid_cap * double(t) / 400.0;
    xs.assign(m, 0.0);
    xs[0] = x;
    xs[1] = -x;
    consider(xs);
  }
  for (int t = 1; t <= 60; ++t) {  // geometric refinement near zero
    const double x = grid_cap * std::pow(0.8, t);
    xs.assign(m, 0.0);
    xs[0] = x;
    xs[1] = -x;
    consider(xs);
  }
  // Random centered perturbations at several scales.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double sigmas[] = {0.01, 0.05, 0.2, 0.5, 1.0};
  for (int t = 0; t < trials; ++t) {
    const double sigma = sigmas[t % 5];
    xs.resize(m);
    double mean = 0.0;
    for (int i = 0; i < m; ++i) {
      xs[i] = sigma * normal(rng);
      mean += xs[i];
    }
    mean /= double(m);
    bool ok = true;
    for (int i = 0; i < m; ++i) {
      xs[i] -= mean;
      if (xs[i] > x_cap) ok = false;
    }
    if (ok) consider(xs);
  }
  out.violation_found = out.violations > 0;
  return out;
}

}  // namespace classopt
