#include <catch2/catch_amalgamated.hpp>

#include "classopt/partitions.hpp"

using namespace classopt;

namespace {

// Independent counting oracle: p(n, k) = partitions of n into parts <= k,
// by the standard recurrence. Kept separate from the enumerator on purpose.
long long partition_count_oracle(int n) {
  std::vector<std::vector<long long>> p(n + 1,
                                        std::vector<long long>(n + 1, 0));
  for (int k = 0; k <= n; ++k) p[0][k] = 1;
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= n; ++k)
      p[i][k] = p[i][k - 1] + (i >= k ? p[i - k][k] : 0);
  return p[n][n];
}

// Partitions of n into exactly k parts: q(n, k) = q(n-1, k-1) + q(n-k, k).
long long partition_count_exact_parts(int n, int k) {
  std::vector<std::vector<long long>> q(n + 1,
                                        std::vector<long long>(k + 1, 0));
  q[0][0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= std::min(i, k); ++j)
      q[i][j] = q[i - 1][j - 1] + (i - j >= 0 ? q[i - j][j] : 0);
  return q[n][k];
}

}  // namespace

TEST_CASE("partitions of 1 and 4") {
  std::vector<std::vector<int>> got;
  for_each_partition(1, [&](const std::vector<int>& p) { got.push_back(p); });
  CHECK(got == std::vector<std::vector<int>>{{1}});

  got.clear();
  for_each_partition(4, [&](const std::vector<int>& p) { got.push_back(p); });
  const std::vector<std::vector<int>> want = {
      {1, 1, 1, 1}, {1, 1, 2}, {1, 3}, {2, 2}, {4}};
  CHECK(got == want);
}

TEST_CASE("partition counts match the independent recurrence") {
  for (int z = 1; z <= 25; ++z) {
    long long count = 0;
    for_each_partition(z, [&](const std::vector<int>&) { ++count; });
    CHECK(count == partition_count_oracle(z));
  }
  long long c20 = 0;
  for_each_partition(20, [&](const std::vector<int>&) { ++c20; });
  CHECK(c20 == 627);
}

TEST_CASE("emitted partitions are canonical, correct and lex-ascending") {
  for (int z : {6, 11, 15}) {
    std::vector<int> prev;
    for_each_partition(z, [&](const std::vector<int>& p) {
      long long sum = 0;
      for (size_t i = 0; i < p.size(); ++i) {
        CHECK(p[i] >= 1);
        if (i) CHECK(p[i - 1] <= p[i]);
        sum += p[i];
      }
      CHECK(sum == z);
      if (!prev.empty()) CHECK(prev < p);
      prev = p;
    });
  }
}

TEST_CASE("fixed-part-count enumeration matches its recurrence") {
  for (int z : {7, 10, 14}) {
    for (int k = 1; k <= z; ++k) {
      long long count = 0;
      for_each_partition_into(z, k, [&](const std::vector<int>& p) {
        CHECK(static_cast<int>(p.size()) == k);
        ++count;
      });
      CHECK(count == partition_count_exact_parts(z, k));
    }
  }
}

TEST_CASE("partition enumeration argument checks") {
  CHECK_THROWS_AS(for_each_partition(0, [](const std::vector<int>&) {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      for_each_partition_into(5, 6, [](const std::vector<int>&) {}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      for_each_partition_into(5, 0, [](const std::vector<int>&) {}),
      std::invalid_argument);
}
