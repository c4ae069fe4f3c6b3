#pragma once

// Integer partition enumeration. Partitions are produced in canonical form
// (parts non-decreasing) and in deterministic lexicographically ascending
// order, e.g. for z = 4: (1,1,1,1), (1,1,2), (1,3), (2,2), (4).

#include <vector>

#include "classopt/core.hpp"

namespace classopt {

namespace detail {

template <class Fn>
void partition_rec(int remaining, int min_part, std::vector<int>& buf,
                   Fn&& fn) {
  if (remaining == 0) {
    fn(const_cast<const std::vector<int>&>(buf));
    return;
  }
  for (int part = min_part; part <= remaining; ++part) {
    const int rest = remaining - part;
    if (rest != 0 && rest < part) continue;  // tail could not stay sorted
    buf.push_back(part);
    partition_rec(rest, part, buf, fn);
    buf.pop_back();
  }
}

template <class Fn>
void partition_k_rec(int remaining, int min_part, int parts_left,
                     std::vector<int>& buf, Fn&& fn) {
  if (parts_left == 0) {
    if (remaining == 0) fn(const_cast<const std::vector<int>&>(buf));
    return;
  }
  // Parts are non-decreasing, so the current part is at most
  // remaining / parts_left.
  for (int part = min_part; part * parts_left <= remaining; ++part) {
    buf.push_back(part);
    partition_k_rec(remaining - part, part, parts_left - 1, buf, fn);
    buf.pop_back();
  }
}

}  // namespace detail

/// Calls fn(const std::vector<int>&) once per partition of z into positive
/// parts. The buffer is reused between calls.
template <class Fn>
void for_each_partition(int z, Fn&& fn) {
  detail::require(z >= 1, "for_each_partition: z must be >= 1");
  std::vector<int> buf;
  detail::partition_rec(z, 1, buf, fn);
}

/// Calls fn once per partition of z into exactly `parts` positive parts.
template <class Fn>
void for_each_partition_into(int z, int parts, Fn&& fn) {
  detail::require(z >= 1, "for_each_partition_into: z must be >= 1");
  detail::require(parts >= 1 && parts <= z,
                  "for_each_partition_into: parts must be in [1, z]");
  std::vector<int> buf;
  detail::partition_k_rec(z, 1, parts, buf, fn);
}

}  // namespace classopt
