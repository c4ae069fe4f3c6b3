#pragma once

// Balanced class-size vectors Q_k: k classes whose sizes differ by at most 1.

#include "classopt/core.hpp"

namespace classopt {

/// Largest class count that a profitable optimum can use short of all
/// singletons: Z/2 for even Z, (Z+1)/2 for odd Z.
inline int m_upper(int z) { return (z % 2 == 0) ? z / 2 : (z + 1) / 2; }

/// The balanced k-class vector for Z students: k - r classes of size q and
/// r classes of size q + 1, where Z = k*q + r, 0 <= r < k.
struct BalancedVector {
  int k;  ///< class count
  int q;  ///< floor(Z / k)
  int r;  ///< Z - k * q

  static BalancedVector of(int z, int k) {
    detail::require(z >= 1 && k >= 1, "BalancedVector: z, k must be >= 1");
    return BalancedVector{k, z / k, z - k * (z / k)};
  }

  ClassSizeVector expand() const {
    detail::require(q >= 1, "BalancedVector::expand: k exceeds z");
    std::vector<int> sizes;
    sizes.reserve(k);
    for (int i = 0; i < k - r; ++i) sizes.push_back(q);
    for (int i = 0; i < r; ++i) sizes.push_back(q + 1);
    return ClassSizeVector::from_sorted(std::move(sizes));
  }
};

/// Sum of squared class sizes of the balanced k-class vector:
/// (k - r) q^2 + r (q + 1)^2. Exact integer arithmetic; defined for any
/// k >= 1 (classes of size zero contribute nothing).
inline long long size_square_sum(int z, int k) {
  detail::require(z >= 1 && k >= 1, "size_square_sum: z, k must be >= 1");
  const long long q = z / k, r = z - (long long)k * q;
  return ((long long)k - r) * q * q + r * (q + 1) * (q + 1);
}

/// True iff a profitable optimum with m classes respects the class-count
/// gap: m = Z, or m <= Z/2 (Z even), m <= (Z+1)/2 (Z odd).
inline bool class_count_gap_ok(int z, int m) {
  return m == z || m <= m_upper(z);
}

}  // namespace classopt
