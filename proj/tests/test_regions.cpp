#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "classopt/atlas_io.hpp"
#include "classopt/verify.hpp"

using namespace classopt;
using Catch::Approx;

namespace {

std::vector<double> linspace_step(double lo, double hi, double step) {
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double x = lo + double(i) * step;
    if (x > hi + step * 1e-9) break;
    out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("classify_point on documented points") {
  const RegionCell a = classify_point(0.60, 0.673, 5);
  CHECK(a.optimal_m == 2);
  CHECK(a.profitable);
  const RegionCell b = classify_point(0.62, 0.673, 5);
  CHECK(b.optimal_m == 3);
  CHECK(b.profitable);
  for (int z : {5, 8, 12}) {
    const RegionCell c = classify_point(0.9, 0.1, z);
    CHECK(c.optimal_m == z);
    CHECK(c.profitable);
    CHECK(in_L(z, 0.9, 0.1, z));
    REQUIRE(c.l_label.has_value());
    CHECK(*c.l_label == z);
  }
}

TEST_CASE("in_L validates its arguments") {
  CHECK_THROWS_AS(in_L(0, 0.5, 0.5, 10), std::invalid_argument);
  CHECK_THROWS_AS(in_L(7, 0.5, 0.5, 10), std::invalid_argument);  // gap k
  CHECK_THROWS_AS(in_L(2, 1.0, 0.5, 10), std::invalid_argument);
  CHECK_NOTHROW(in_L(5, 0.5, 0.5, 10));
  CHECK_NOTHROW(in_L(10, 0.5, 0.5, 10));
}

TEST_CASE("region labels tile the profitable set and match the oracle") {
  const int z = 7;
  for (double p : linspace_step(0.05, 0.95, 0.05)) {
    for (double w : linspace_step(0.05, 1.5, 0.05)) {
      int labels = 0;
      int label = -1;
      for (int k = 1; k <= m_upper(z); ++k)
        if (in_L(k, p, w, z)) {
          ++labels;
          label = k;
        }
      if (in_L(z, p, w, z)) {
        ++labels;
        label = z;
      }
      CHECK(labels <= 1);
      const RegionCell cell = classify_point(p, w, z);
      if (std::abs(cell.profit) <= 1e-12) continue;  // exact boundary
      if (cell.profitable) {
        CHECK(labels == 1);
        CHECK(label == cell.optimal_m);
      } else {
        CHECK(labels == 0);
      }
    }
  }
}

TEST_CASE("class count is monotone along decreasing W") {
  SECTION("Z=10 at p=0.9") {
    std::vector<double> ws;
    for (double w = 1.5; w >= 0.05; w -= 0.05) ws.push_back(w);
    const MonotoneWReport rep = monotonic_in_W(0.9, ws, 10);
    REQUIRE(rep.applicable);
    CHECK(rep.monotone);
    CHECK(rep.m_sequence.front() <= rep.m_sequence.back());
  }
  SECTION("p below one-half keeps all singletons") {
    const MonotoneWReport rep = monotonic_in_W(0.4, {0.35, 0.2, 0.1}, 9);
    REQUIRE(rep.applicable);
    CHECK(rep.monotone);
    for (int m : rep.m_sequence) CHECK(m == 9);
  }
  SECTION("single W is trivially monotone") {
    const MonotoneWReport rep = monotonic_in_W(0.85, {0.4}, 8);
    REQUIRE(rep.applicable);
    CHECK(rep.monotone);
  }
  SECTION("unprofitable point voids the hypothesis") {
    const MonotoneWReport rep = monotonic_in_W(0.3, {1.9, 1.5}, 8);
    CHECK_FALSE(rep.applicable);
  }
}

TEST_CASE("the increasing-p counterexample is reproduced") {
  const IncreasingPWitness wit = increasing_p_counterexample();
  CHECK(wit.confirmed);
  CHECK(wit.low.profit == Approx(0.022).margin(1e-9));
  CHECK(wit.high.profit == Approx(0.1386).margin(1e-9));
}

TEST_CASE("atlas grid classification") {
  const int z = 10;
  const std::vector<double> p_grid = linspace_step(0.02, 0.99, 0.02);
  // Step 0.037 avoids landing exactly on the all-singletons boundary
  // W = 2p(1-p), where a family of optima ties exactly.
  std::vector<double> w_grid;
  for (int i = 1; i <= 50; ++i) w_grid.push_back(0.037 * double(i));
  REQUIRE(p_grid.size() == 49);
  const Atlas atlas = emit_atlas(z, p_grid, w_grid);
  CHECK(atlas.cells.size() == p_grid.size() * w_grid.size());
  for (const RegionCell& c : atlas.cells) {
    if (std::abs(c.profit) <= 1e-12) continue;  // exact boundary
    if (c.profitable) {
      REQUIRE(c.l_label.has_value());
      CHECK(*c.l_label == c.optimal_m);
      CHECK(class_count_gap_ok(z, c.optimal_m));
      if (c.p <= 0.5) CHECK(*c.l_label == z);
    } else {
      CHECK_FALSE(c.l_label.has_value());
    }
  }
  // Curve table covers every family plus the constraint.
  bool has_constraint = false;
  for (const auto& s : atlas.curves)
    if (s.curve == "C") has_constraint = true;
  CHECK(has_constraint);
}

TEST_CASE("atlas rejects bad grids") {
  CHECK_THROWS_AS(emit_atlas(5, {}, {0.5}), std::invalid_argument);
  CHECK_THROWS_AS(emit_atlas(5, {0.5, 0.4}, {0.5}), std::invalid_argument);
  CHECK_THROWS_AS(emit_atlas(5, {0.5}, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(emit_atlas(5, {1.2}, {0.5}), std::invalid_argument);
}

TEST_CASE("atlas serialization round-trips and is deterministic") {
  const Atlas atlas = emit_atlas(6, linspace_step(0.1, 0.9, 0.1),
                                 linspace_step(0.1, 1.0, 0.1));
  std::ostringstream first, second;
  write_atlas_cells(first, atlas);
  write_atlas_cells(second, atlas);
  CHECK(first.str() == second.str());

  std::istringstream in(first.str());
  const std::vector<RegionCell> parsed = parse_atlas_cells(in);
  REQUIRE(parsed.size() == atlas.cells.size());
  for (size_t i = 0; i < parsed.size(); ++i)
    CHECK(cells_equivalent(parsed[i], atlas.cells[i]));
}

TEST_CASE("profitability constraint bounds the profitable cells") {
  const int z = 8;
  for (double p : linspace_step(0.1, 0.9, 0.1)) {
    const double c = profitability_constraint(z, p);
    // Slightly inside is profitable, slightly outside is not.
    const RegionCell inside = classify_point(p, c * 0.999, z);
    const RegionCell outside = classify_point(p, c * 1.001, z);
    CHECK(inside.profitable);
    CHECK_FALSE(outside.profitable);
  }
}

TEST_CASE("junction identity for per-class value curves") {
  CHECK(junction_identity_suite({5, 7, 10, 12, 17, 24}).passed);
}

TEST_CASE("single-to-two-class witnesses exist for small odd Z") {
  for (int z : {5, 7, 9}) {
    const SingleToTwoWitness wit = find_single_to_two_class_witness(z);
    REQUIRE(wit.found);
    CHECK(wit.p1 < wit.p2);
    CHECK(in_L(1, wit.p1, wit.w, z));
    CHECK(in_L(2, wit.p2, wit.w, z));
    // The labels really are the optimal class counts.
    CHECK(classify_point(wit.p1, wit.w, z).optimal_m == 1);
    CHECK(classify_point(wit.p2, wit.w, z).optimal_m == 2);
  }
}

TEST_CASE("monotone-in-p report over the trimmed regions") {
  const MonotonePReport rep =
      monotone_in_p_report(5, linspace_step(0.02, 0.98, 0.02),
                           linspace_step(0.05, 1.5, 0.05));
  CHECK(rep.checked > 100);
  CHECK(rep.violations == 0);
}

TEST_CASE("root ordering scan over small Z") {
  const RootOrderScan scan = scan_root_orderings(5, 20);
  CHECK(scan.violation_free);
  CHECK(!scan.lines.empty());
  for (const RootOrderLine& line : scan.lines) {
    CHECK(line.certified);
    CHECK(line.residual < 1e-10);
    CHECK(std::isfinite(line.margin));
    CHECK_FALSE(line.violation);
  }
  // Z=17 contributes at least one equal-function pair (q_6 = q_7 = q_8).
  CHECK(scan.equal_function_pairs > 0);
}

TEST_CASE("root ordering report serialization") {
  const RootOrderScan scan = scan_root_orderings(5, 6);
  std::ostringstream os;
  write_root_order_report(os, scan);
  const std::string text = os.str();
  CHECK(text.rfind("Z,i,j,p_ij,margin,status", 0) == 0);
  CHECK(text.find(",ok") != std::string::npos);
  CHECK(text.find("violation") == std::string::npos);
}

TEST_CASE("structure sweep at reduced scale is clean") {
  const SweepReport rep = run_structure_sweep(2, 12, 12);
  INFO(rep.first_issue);
  CHECK(rep.clean());
  CHECK(rep.profitable_points > 1000);
}
