// classopt: command-line front end for the class-size optimization toolkit.
//
// Subcommands:
//   solve       exact single-type optimum (oracle and/or balanced solver)
//   atlas       classify a (p, W) grid and dump cell + boundary-curve tables
//   conjecture  isolate all crossing roots over a Z range and check orderings
//   multitype   exact multi-type optimum with structure report
//   verify      run the invariant suites
//
// Exit codes: 0 success, 2 usage error, 3 capacity error, 4 internal
// invariant failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "classopt/verify.hpp"

namespace {

using namespace classopt;

struct SolveOptions {
  int z = 0;
  double p = 0.0, w = 0.0, v = 1.0;
  int cap = kDefaultBruteforceCap;
  std::string method = "both";
  std::string format = "text";
};

std::string join_sizes(const ClassSizeVector& sizes) {
  std::string out;
  for (int n : sizes.sizes()) {
    if (!out.empty()) out += ",";
    out += std::to_string(n);
  }
  return out;
}

int cmd_solve(const SolveOptions& opt) {
  const Instance inst(opt.z, opt.p, opt.w, opt.v);
  const bool run_oracle = opt.method != "balanced" && opt.z <= opt.cap;
  const bool run_fast = opt.method != "oracle";
  if (opt.method == "oracle" && opt.z > opt.cap)
    throw CapacityError("solve: z exceeds the oracle cap");
  SolveResult result;
  bool agreement = true, both = false;
  if (run_oracle && run_fast) {
    const SolveResult oracle = solve_bruteforce(inst, opt.cap);
    const SolveResult fast = solve_balanced(inst);
    agreement = oracle.best == fast.best && oracle.profit == fast.profit;
    result = oracle;
    both = true;
  } else if (run_oracle) {
    result = solve_bruteforce(inst, opt.cap);
  } else {
    result = solve_balanced(inst);
  }
  if (opt.format == "records") {
    std::printf("sizes=%s\n", join_sizes(result.best).c_str());
    std::printf("m=%d\n", result.best.class_count());
    std::printf("profit=%s\n", format_number(result.profit).c_str());
    std::printf("profitable=%d\n", result.profitable ? 1 : 0);
    if (both) std::printf("agreement=%d\n", agreement ? 1 : 0);
  } else {
    std::printf("sizes: %s\n", join_sizes(result.best).c_str());
    std::printf("m: %d\n", result.best.class_count());
    std::printf("profit: %.6f\n", result.profit);
    std::printf("profitable: %s\n", result.profitable ? "yes" : "no");
    if (both)
      std::printf("oracle/balanced agreement: %s\n", agreement ? "yes" : "no");
  }
  if (both && !agreement) return 4;
  return 0;
}

struct AtlasOptions {
  int z = 0;
  double p_min = 0.01, p_max = 0.99, p_step = 0.01;
  double w_min = 0.0, w_max = 0.0, w_step = 0.001;  // 0 = derive defaults
  int cap = kDefaultBruteforceCap;
  std::string output = "atlas_cells.csv";
  std::string curves = "atlas_curves.csv";
};

std::vector<double> build_grid(double lo, double hi, double step) {
  detail::require(step > 0.0 && lo > 0.0 && lo <= hi, "bad grid spec");
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double x = lo + double(i) * step;
    if (x > hi + step * 1e-9) break;
    grid.push_back(x);
  }
  detail::require(!grid.empty(), "empty grid");
  return grid;
}

int cmd_atlas(const AtlasOptions& opt) {
  double w_max = opt.w_max;
  if (w_max <= 0.0)
    w_max = std::max(1.0, balanced_output_poly(opt.z, 1).eval(0.99));
  const double w_min = opt.w_min > 0.0 ? opt.w_min : opt.w_step;
  const std::vector<double> p_grid =
      build_grid(opt.p_min, opt.p_max, opt.p_step);
  const std::vector<double> w_grid = build_grid(w_min, w_max, opt.w_step);
  const Atlas atlas = emit_atlas(opt.z, p_grid, w_grid, opt.cap);

  std::ofstream cells(opt.output);
  if (!cells) {
    std::fprintf(stderr, "error: cannot write %s\n", opt.output.c_str());
    return 2;
  }
  write_atlas_cells(cells, atlas);
  std::ofstream curves(opt.curves);
  if (!curves) {
    std::fprintf(stderr, "error: cannot write %s\n", opt.curves.c_str());
    return 2;
  }
  write_atlas_curves(curves, atlas);

  std::map<int, long long> label_counts;
  long long unprofitable = 0;
  for (const RegionCell& c : atlas.cells) {
    if (c.l_label)
      ++label_counts[*c.l_label];
    else
      ++unprofitable;
  }
  std::printf("cells: %zu (%zu x %zu)\n", atlas.cells.size(), p_grid.size(),
              w_grid.size());
  for (const auto& [label, count] : label_counts)
    std::printf("label %d: %lld\n", label, count);
  std::printf("unprofitable: %lld\n", unprofitable);
  return 0;
}

struct ConjectureOptions {
  int z_min = 5, z_max = 60;
  double violation_tol = 1e-12;
  std::string output = "root_orderings.csv";
};

int cmd_conjecture(const ConjectureOptions& opt) {
  detail::require(opt.z_min <= opt.z_max, "conjecture: inverted z range");
  const RootOrderScan scan =
      scan_root_orderings(opt.z_min, opt.z_max, opt.violation_tol);
  std::ofstream out(opt.output);
  if (!out) {
    std::fprintf(stderr, "error: cannot write %s\n", opt.output.c_str());
    return 2;
  }
  write_root_order_report(out, scan);
  double min_margin = std::numeric_limits<double>::infinity();
  for (const RootOrderLine& line : scan.lines)
    min_margin = std::min(min_margin, line.margin);
  std::printf("roots: %zu  equal-function pairs: %d  min margin: %s\n",
              scan.lines.size(), scan.equal_function_pairs,
              format_number(min_margin).c_str());
  std::printf("status %s\n",
              scan.violation_free ? "VIOLATION-FREE" : "VIOLATIONS-FOUND");
  return 0;
}

struct MultitypeOptions {
  std::vector<double> probs;
  std::vector<int> counts;
  double w = 0.0, v = 1.0;
  int z_cap = kDefaultMultitypeZCap;
  int s_cap = kDefaultMultitypeSCap;
  std::string format = "text";
};

int cmd_multitype(const MultitypeOptions& opt) {
  const MultiTypeInstance inst(opt.probs, opt.counts, opt.w, opt.v);
  const MultiSolveResult sol = solve_multitype_bruteforce(inst, opt.z_cap,
                                                          opt.s_cap);
  const StructureReport st = verify_structure(sol.best, inst.s);
  if (opt.format == "records") {
    for (int i = 0; i < inst.s; ++i) {
      std::printf("row%d=", i + 1);
      for (int j = 0; j < sol.best.classes(); ++j)
        std::printf("%s%d", j ? "," : "", sol.best.entry(i, j));
      std::printf("\n");
    }
    std::printf("profit=%s\n", format_number(sol.profit).c_str());
    std::printf("m=%d\n", sol.best.classes());
    std::printf("mixed=%d\n", st.mixed_classes);
    std::printf("forest=%d\n", st.acyclic ? 1 : 0);
  } else {
    std::printf("classes: %d  sizes:", sol.best.classes());
    for (int j = 0; j < sol.best.classes(); ++j)
      std::printf(" %d", sol.best.column_sum(j));
    std::printf("\n");
    for (int i = 0; i < inst.s; ++i) {
      std::printf("type %d (p=%g):", i + 1, inst.probs[i]);
      for (int j = 0; j < sol.best.classes(); ++j)
        std::printf(" %d", sol.best.entry(i, j));
      std::printf("\n");
    }
    std::printf("profit: %.6f\n", sol.profit);
    std::printf("profitable: %s\n", sol.profitable ? "yes" : "no");
    std::printf("mixed classes: %d (bound %d)\n", st.mixed_classes,
                inst.s - 1);
    std::printf("forest: %s\n", st.acyclic ? "yes" : "no");
  }
  return 0;
}

struct VerifyOptions {
  int max_z_exact = 200;
  int max_z_roots = 30;
  int max_z_sweep = 12;
  bool full_multitype = false;
  int random_cyclic = 25;
  std::uint64_t seed = 12345;
};

int cmd_verify(const VerifyOptions& opt) {
  std::vector<SuiteResult> results;
  results.push_back(exp_pair_bound_suite());
  results.push_back(exp_pair_violation_suite());
  results.push_back(power_pair_bound_suite());
  results.push_back(split_output_bound_suite());
  results.push_back(amgm_swap_suite());
  results.push_back(exp_bound_probe_suite(opt.seed));
  results.push_back(balanced_parts_suite(opt.max_z_exact));
  results.push_back(second_difference_suite(opt.max_z_exact));
  results.push_back(descartes_consistency_suite(opt.max_z_roots));
  results.push_back(crossing_side_sign_suite(opt.max_z_roots));
  results.push_back(two_class_test_suite(opt.max_z_roots));
  results.push_back(junction_identity_suite({5, 7, 10, 12, 17, 24}));
  {
    const SweepReport sweep = run_structure_sweep(2, opt.max_z_sweep, 20);
    SuiteResult r{"structure-sweep"};
    r.checks = sweep.points;
    r.passed = sweep.clean();
    if (!r.passed) {
      r.failures = 1;
      r.detail = sweep.first_issue;
    }
    results.push_back(r);
  }
  {
    const MultitypeSweepReport mt =
        run_multitype_sweep(opt.full_multitype, opt.seed, opt.random_cyclic);
    SuiteResult r{"multitype-sweep"};
    r.checks = mt.instances + mt.random_cyclic_tested;
    r.passed = mt.clean(opt.random_cyclic);
    if (!r.passed) {
      r.failures = 1;
      r.detail = mt.first_issue;
    }
    results.push_back(r);
  }
  bool all_ok = true;
  for (const SuiteResult& r : results) {
    std::printf("[%s] %s (%lld checks)%s%s\n", r.passed ? "PASS" : "FAIL",
                r.name.c_str(), r.checks, r.detail.empty() ? "" : ": ",
                r.detail.c_str());
    all_ok = all_ok && r.passed;
  }
  return all_ok ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"classopt: exact solvers and structure checks for the "
               "class-size profit model"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value config file; flags override it");

  SolveOptions solve_opt;
  CLI::App* solve = app.add_subcommand("solve", "solve a single-type instance");
  solve->add_option("--Z", solve_opt.z, "student count")->required();
  solve->add_option("--p", solve_opt.p, "non-disruption probability")
      ->required();
  solve->add_option("--W", solve_opt.w, "teacher cost")->required();
  solve->add_option("--V", solve_opt.v, "unit learning value");
  solve->add_option("--cap", solve_opt.cap, "oracle enumeration cap");
  solve->add_option("--method", solve_opt.method, "both|oracle|balanced")
      ->check(CLI::IsMember({"both", "oracle", "balanced"}));
  solve->add_option("--format", solve_opt.format, "text|records")
      ->check(CLI::IsMember({"text", "records"}));

  AtlasOptions atlas_opt;
  CLI::App* atlas = app.add_subcommand("atlas", "map a (p, W) grid");
  atlas->add_option("--Z", atlas_opt.z, "student count")->required();
  atlas->add_option("--p-min", atlas_opt.p_min, "grid start");
  atlas->add_option("--p-max", atlas_opt.p_max, "grid end");
  atlas->add_option("--p-step", atlas_opt.p_step, "grid step");
  atlas->add_option("--w-min", atlas_opt.w_min, "grid start (default: step)");
  atlas->add_option("--w-max", atlas_opt.w_max,
                    "grid end (default: max(1, V((Z), 0.99)))");
  atlas->add_option("--w-step", atlas_opt.w_step, "grid step");
  atlas->add_option("--cap", atlas_opt.cap, "oracle enumeration cap");
  atlas->add_option("--output", atlas_opt.output, "cells table path");
  atlas->add_option("--curves", atlas_opt.curves, "curves table path");

  ConjectureOptions conj_opt;
  CLI::App* conj =
      app.add_subcommand("conjecture", "scan crossing-root orderings");
  conj->add_option("--z-min", conj_opt.z_min, "first Z");
  conj->add_option("--z-max", conj_opt.z_max, "last Z");
  conj->add_option("--violation-tol", conj_opt.violation_tol,
                   "noise floor for ordering violations");
  conj->add_option("--output", conj_opt.output, "report path");

  MultitypeOptions multi_opt;
  CLI::App* multi =
      app.add_subcommand("multitype", "solve a multi-type instance");
  multi->add_option("--probs", multi_opt.probs, "per-type probabilities")
      ->required()
      ->delimiter(',');
  multi->add_option("--counts", multi_opt.counts, "per-type student counts")
      ->required()
      ->delimiter(',');
  multi->add_option("--W", multi_opt.w, "teacher cost")->required();
  multi->add_option("--V", multi_opt.v, "unit learning value");
  multi->add_option("--z-cap", multi_opt.z_cap, "total student cap");
  multi->add_option("--s-cap", multi_opt.s_cap, "type count cap");
  multi->add_option("--format", multi_opt.format, "text|records")
      ->check(CLI::IsMember({"text", "records"}));

  VerifyOptions verify_opt;
  CLI::App* verify = app.add_subcommand("verify", "run the invariant suites");
  verify->add_option("--max-z-exact", verify_opt.max_z_exact,
                     "Z bound for integer suites");
  verify->add_option("--max-z-roots", verify_opt.max_z_roots,
                     "Z bound for root suites");
  verify->add_option("--max-z-sweep", verify_opt.max_z_sweep,
                     "Z bound for the oracle sweep");
  verify->add_flag("--full-multitype", verify_opt.full_multitype,
                   "run the full multitype sweep");
  verify->add_option("--random-cyclic", verify_opt.random_cyclic,
                     "random cyclic allocations to test");
  verify->add_option("--seed", verify_opt.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_opt);
    if (atlas->parsed()) return cmd_atlas(atlas_opt);
    if (conj->parsed()) return cmd_conjecture(conj_opt);
    if (multi->parsed()) return cmd_multitype(multi_opt);
    if (verify->parsed()) return cmd_verify(verify_opt);
  } catch (const classopt::CapacityError& e) {
    std::fprintf(stderr, "capacity error: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 4;
  }
  return 2;
}
