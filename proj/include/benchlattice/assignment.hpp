// Copyright 2026 The BenchLattice Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Admissibility of configurations for test cases, a run cost model, and two
// solvers assigning a suite to configurations: a regret-ordered greedy
// baseline and an exhaustive branch-and-bound oracle for small instances.

#ifndef BENCHLATTICE_ASSIGNMENT_HPP_
#define BENCHLATTICE_ASSIGNMENT_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "benchlattice/configuration.hpp"
#include "benchlattice/error.hpp"
#include "benchlattice/taxonomy.hpp"
#include "benchlattice/testcase.hpp"

namespace benchlattice {

// ---------------------------------------------------------------------------
// Admissibility
// ---------------------------------------------------------------------------

enum class ViolationReason { kMissingDimension, kStageNotAdmissible, kNotValidatedForPurpose };

constexpr std::string_view to_string(ViolationReason reason) {
  switch (reason) {
    case ViolationReason::kMissingDimension: return "MISSING_DIMENSION";
    case ViolationReason::kStageNotAdmissible: return "STAGE_NOT_ADMISSIBLE";
    case ViolationReason::kNotValidatedForPurpose: return "NOT_VALIDATED_FOR_PURPOSE";
  }
  return "MISSING_DIMENSION";
}

struct Violation {
  std::string dimension;
  std::string element;  // empty for MISSING_DIMENSION
  ViolationReason reason;

  bool operator==(const Violation&) const = default;
};

struct AdmissibilityReport {
  bool admissible = true;
  std::vector<Violation> violations;

  bool operator==(const AdmissibilityReport&) const = default;
};

namespace detail {

inline bool bench_covers(const TestBench& bench, const std::string& key) {
  const auto pattern = parse_dimension_pattern(key);
  if (!pattern) return false;
  for (const auto& leaf : bench.leaves()) {
    if (leaf.canonical_id() != pattern->canonical) continue;
    if (!pattern->sub || (leaf.parent && leaf.id == *pattern->sub)) return true;
  }
  return false;
}

}  // namespace detail

/// Reports every violation: uncovered required dimensions, selected elements
/// on stages the profile does not admit, and selected elements not validated
/// for the profile's purpose.
inline AdmissibilityReport check_admissibility(const TestBenchConfiguration& config,
                                               const TestBench& bench,
                                               const RequirementProfile& profile) {
  require_configuration_of(config, bench);
  AdmissibilityReport report;

  for (const auto& [key, req] : profile.entries) {
    if (req.required && !detail::bench_covers(bench, key)) {
      report.violations.push_back({key, "", ViolationReason::kMissingDimension});
    }
  }

  for (std::size_t leaf = 0; leaf < bench.leaves().size(); ++leaf) {
    const auto& node = bench.leaves()[leaf];
    const auto& req = profile.for_leaf(node);
    for (const auto& id : config.selection[leaf].element_ids) {
      const Element& e = *bench.find_element(id);
      if (!req.admissible.contains(e.stage)) {
        report.violations.push_back({node.id, e.id, ViolationReason::kStageNotAdmissible});
      }
      if (!e.characteristics.validated_for.contains(profile.purpose)) {
        report.violations.push_back({node.id, e.id, ViolationReason::kNotValidatedForPurpose});
      }
    }
  }

  report.admissible = report.violations.empty();
  return report;
}

// ---------------------------------------------------------------------------
// Cost model
// ---------------------------------------------------------------------------

struct CostEstimate {
  double execution_time = 0.0;  // seconds
  double monetary_cost = 0.0;   // currency units

  bool operator==(const CostEstimate&) const = default;
};

/// The slowest selected element paces the loop; money is the summed hourly
/// rate over the execution time plus the summed setup costs.
inline CostEstimate estimate_cost(const TestBenchConfiguration& config, const TestBench& bench,
                                  const TestCase& tc) {
  require_configuration_of(config, bench);
  double slowest = 0.0;
  double rate = 0.0;
  double setup = 0.0;
  for (const auto& sel : config.selection) {
    for (const auto& id : sel.element_ids) {
      const auto& c = bench.find_element(id)->characteristics;
      slowest = std::max(slowest, c.time_factor);
      rate += c.cost_rate;
      setup += c.setup_cost;
    }
  }
  CostEstimate out;
  out.execution_time = tc.scenario.nominal_duration * slowest;
  out.monetary_cost = out.execution_time / 3600.0 * rate + setup;
  return out;
}

// ---------------------------------------------------------------------------
// Plans
// ---------------------------------------------------------------------------

/// Maximum bench time per bench id; benches without an entry are unbounded.
struct CapacityBudget {
  std::map<std::string, double> max_bench_time;

  std::optional<double> limit(const std::string& bench_id) const {
    auto it = max_bench_time.find(bench_id);
    if (it == max_bench_time.end()) return std::nullopt;
    return it->second;
  }
  bool empty() const { return max_bench_time.empty(); }

  bool operator==(const CapacityBudget&) const = default;
};

struct Assignment {
  std::string test_case;
  std::string bench_id;
  std::uint64_t configuration_index = 0;
  TestBenchConfiguration configuration;
  TestMethod method = TestMethod::kUnclassified;
  CostEstimate cost;

  bool operator==(const Assignment&) const = default;
};

enum class UnassignedReason { kNoAdmissibleConfiguration, kCapacityExhausted };

constexpr std::string_view to_string(UnassignedReason reason) {
  switch (reason) {
    case UnassignedReason::kNoAdmissibleConfiguration: return "NO_ADMISSIBLE_CONFIGURATION";
    case UnassignedReason::kCapacityExhausted: return "CAPACITY_EXHAUSTED";
  }
  return "NO_ADMISSIBLE_CONFIGURATION";
}

/// Admissibility report of one configuration, kept for unassignable cases.
struct BenchReport {
  std::string bench_id;
  std::uint64_t configuration_index = 0;
  AdmissibilityReport report;

  bool operator==(const BenchReport&) const = default;
};

struct Unassigned {
  std::string test_case;
  UnassignedReason reason = UnassignedReason::kNoAdmissibleConfiguration;
  std::vector<BenchReport> reports;  // closest configuration per bench

  bool operator==(const Unassigned&) const = default;
};

struct AssignmentPlan {
  std::string solver;
  std::vector<Assignment> assignments;  // suite order
  std::vector<Unassigned> unassignable;  // suite order
  double total_cost = 0.0;
  std::map<std::string, double> total_bench_time;

  const Assignment* find(std::string_view test_case) const {
    for (const auto& a : assignments) {
      if (a.test_case == test_case) return &a;
    }
    return nullptr;
  }

  bool operator==(const AssignmentPlan&) const = default;
};

/// Oracle guard for assign_exact.
inline constexpr std::size_t kExactMaxTestCases = 8;
inline constexpr std::uint64_t kExactMaxConfigurations = 32;

namespace detail {

struct Candidate {
  std::size_t bench;  // index into the bench list
  std::uint64_t configuration_index;
  CostEstimate cost;
};

struct CandidateTable {
  std::vector<std::vector<TestBenchConfiguration>> configurations;  // per bench
  std::vector<std::vector<Candidate>> candidates;                   // per test case, sorted
  std::vector<std::vector<BenchReport>> closest;                    // per test case
};

inline void check_budget(const CapacityBudget& budget, std::span<const TestBench> benches) {
  std::vector<Diagnostic> diagnostics;
  for (const auto& [id, limit] : budget.max_bench_time) {
    const bool known = std::any_of(benches.begin(), benches.end(),
                                   [&](const TestBench& b) { return b.id() == id; });
    if (!known) {
      diagnostics.push_back({Errc::kInvalidBudget, "benches." + id, "unknown bench"});
    } else if (!std::isfinite(limit) || limit <= 0.0) {
      diagnostics.push_back({Errc::kInvalidBudget, "benches." + id, "max_bench_time must be > 0"});
    }
  }
  if (!diagnostics.empty()) {
    throw Error(Errc::kInvalidBudget, "capacity budget is invalid", std::move(diagnostics));
  }
}

/// Cheapest first; ties by bench id, then configuration order.
inline bool candidate_less(const Candidate& a, const Candidate& b,
                           std::span<const TestBench> benches) {
  if (a.cost.monetary_cost != b.cost.monetary_cost) {
    return a.cost.monetary_cost < b.cost.monetary_cost;
  }
  const auto& ia = benches[a.bench].id();
  const auto& ib = benches[b.bench].id();
  if (ia != ib) return ia < ib;
  return a.configuration_index < b.configuration_index;
}

inline CandidateTable build_candidates(const Suite& suite, std::span<const TestBench> benches,
                                       std::uint64_t cap) {
  CandidateTable table;
  for (const auto& bench : benches) {
    table.configurations.push_back(enumerate_configurations(bench, cap));
  }
  for (const auto& entry : suite) {
    const auto profile = derive_requirement_profile(entry.test_case, entry.overrides);
    std::vector<Candidate> candidates;
    std::vector<BenchReport> closest;
    for (std::size_t b = 0; b < benches.size(); ++b) {
      std::optional<BenchReport> best;
      const auto& configs = table.configurations[b];
      for (std::uint64_t i = 0; i < configs.size(); ++i) {
        auto report = check_admissibility(configs[i], benches[b], profile);
        if (report.admissible) {
          candidates.push_back({b, i, estimate_cost(configs[i], benches[b], entry.test_case)});
        } else if (!best || report.violations.size() < best->report.violations.size()) {
          best = BenchReport{benches[b].id(), i, std::move(report)};
        }
      }
      if (best) closest.push_back(std::move(*best));
    }
    std::sort(candidates.begin(), candidates.end(),
              [&](const Candidate& a, const Candidate& b) { return candidate_less(a, b, benches); });
    table.candidates.push_back(std::move(candidates));
    table.closest.push_back(std::move(closest));
  }
  return table;
}

/// Builds a plan from one choice per test case (nullopt = unassigned).
inline AssignmentPlan make_plan(std::string solver, const Suite& suite,
                                std::span<const TestBench> benches, const CandidateTable& table,
                                const std::vector<std::optional<std::size_t>>& choice) {
  AssignmentPlan plan;
  plan.solver = std::move(solver);
  for (const auto& bench : benches) plan.total_bench_time[bench.id()] = 0.0;
  for (std::size_t t = 0; t < suite.size(); ++t) {
    const auto& id = suite[t].test_case.id;
    if (!choice[t]) {
      if (table.candidates[t].empty()) {
        plan.unassignable.push_back(
            {id, UnassignedReason::kNoAdmissibleConfiguration, table.closest[t]});
      } else {
        plan.unassignable.push_back({id, UnassignedReason::kCapacityExhausted, {}});
      }
      continue;
    }
    const Candidate& c = table.candidates[t][*choice[t]];
    const TestBench& bench = benches[c.bench];
    const auto& config = table.configurations[c.bench][c.configuration_index];
    plan.assignments.push_back({id, bench.id(), c.configuration_index, config,
                                classify_test_method(config, bench), c.cost});
    plan.total_cost += c.cost.monetary_cost;
    plan.total_bench_time[bench.id()] += c.cost.execution_time;
  }
  return plan;
}

}  // namespace detail

/// Greedy baseline. Without a budget every test case takes its cheapest
/// admissible configuration. With a budget, test cases are processed by
/// descending regret (second-cheapest minus cheapest candidate; a single
/// candidate counts as infinite regret) and take the cheapest candidate
/// whose bench still has time left.
inline AssignmentPlan assign_greedy(const Suite& suite, std::span<const TestBench> benches,
                                    const CapacityBudget& budget = {},
                                    std::uint64_t cap = kDefaultConfigurationCap) {
  require_unique_ids(suite);
  detail::check_budget(budget, benches);
  const auto table = detail::build_candidates(suite, benches, cap);

  std::vector<std::optional<std::size_t>> choice(suite.size());
  if (budget.empty()) {
    for (std::size_t t = 0; t < suite.size(); ++t) {
      if (!table.candidates[t].empty()) choice[t] = 0;
    }
    return detail::make_plan("greedy", suite, benches, table, choice);
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> regret(suite.size(), -kInf);
  std::vector<std::size_t> order;
  for (std::size_t t = 0; t < suite.size(); ++t) {
    const auto& cands = table.candidates[t];
    if (cands.empty()) continue;
    regret[t] = cands.size() == 1
                    ? kInf
                    : cands[1].cost.monetary_cost - cands[0].cost.monetary_cost;
    order.push_back(t);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return regret[a] > regret[b]; });

  std::vector<double> used(benches.size(), 0.0);
  for (std::size_t t : order) {
    const auto& cands = table.candidates[t];
    for (std::size_t k = 0; k < cands.size(); ++k) {
      const auto limit = budget.limit(benches[cands[k].bench].id());
      if (!limit || used[cands[k].bench] + cands[k].cost.execution_time <= *limit) {
        used[cands[k].bench] += cands[k].cost.execution_time;
        choice[t] = k;
        break;
      }
    }
  }
  return detail::make_plan("greedy", suite, benches, table, choice);
}

/// Exhaustive oracle: minimizes (number of unassignable test cases, total
/// cost) lexicographically under the budget. Ties keep the first optimum in
/// search order (suite order, candidates cheapest first, unassigned last).
/// Refuses instances above kExactMaxTestCases test cases or
/// kExactMaxConfigurations configurations summed over all benches.
inline AssignmentPlan assign_exact(const Suite& suite, std::span<const TestBench> benches,
                                   const CapacityBudget& budget = {}) {
  std::uint64_t total_configurations = 0;
  for (const auto& bench : benches) {
    total_configurations += std::min(count_configurations(bench), kExactMaxConfigurations + 1);
  }
  if (suite.size() > kExactMaxTestCases || total_configurations > kExactMaxConfigurations) {
    throw Error(Errc::kInstanceTooLarge,
                "exact solver handles at most " + std::to_string(kExactMaxTestCases) +
                    " test cases and " + std::to_string(kExactMaxConfigurations) +
                    " configurations; got " + std::to_string(suite.size()) + " and " +
                    std::to_string(total_configurations));
  }
  require_unique_ids(suite);
  detail::check_budget(budget, benches);
  const auto table = detail::build_candidates(suite, benches, kExactMaxConfigurations);
  const std::size_t n = suite.size();

  // Suffix lower bounds: each remaining case at its cheapest, and the cases
  // that have no candidate at all are necessarily unassigned.
  std::vector<double> min_cost_suffix(n + 1, 0.0);
  std::vector<std::size_t> forced_suffix(n + 1, 0);
  for (std::size_t t = n; t-- > 0;) {
    const auto& cands = table.candidates[t];
    min_cost_suffix[t] = min_cost_suffix[t + 1] + (cands.empty() ? 0.0 : cands[0].cost.monetary_cost);
    forced_suffix[t] = forced_suffix[t + 1] + (cands.empty() ? 1 : 0);
  }

  std::vector<double> limits(benches.size(), std::numeric_limits<double>::infinity());
  for (std::size_t b = 0; b < benches.size(); ++b) {
    if (auto l = budget.limit(benches[b].id())) limits[b] = *l;
  }

  std::vector<std::optional<std::size_t>> current(n);
  std::vector<std::optional<std::size_t>> best_choice;
  std::size_t best_unassigned = std::numeric_limits<std::size_t>::max();
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<double> used(benches.size(), 0.0);

  auto cannot_improve = [&](std::size_t unassigned, double cost) {
    if (unassigned != best_unassigned) return unassigned > best_unassigned;
    return cost >= best_cost;
  };

  auto search = [&](auto&& self, std::size_t t, std::size_t unassigned, double cost) -> void {
    if (cannot_improve(unassigned + forced_suffix[t], cost + min_cost_suffix[t])) return;
    if (t == n) {
      best_unassigned = unassigned;
      best_cost = cost;
      best_choice = current;
      return;
    }
    const auto& cands = table.candidates[t];
    for (std::size_t k = 0; k < cands.size(); ++k) {
      const auto& c = cands[k];
      const double before = used[c.bench];
      if (before + c.cost.execution_time > limits[c.bench]) continue;
      used[c.bench] = before + c.cost.execution_time;
      current[t] = k;
      self(self, t + 1, unassigned, cost + c.cost.monetary_cost);
      used[c.bench] = before;
    }
    current[t] = std::nullopt;
    self(self, t + 1, unassigned + 1, cost);
  };
  search(search, 0, 0, 0.0);

  return detail::make_plan("exact", suite, benches, table, best_choice);
}

}  // namespace benchlattice

#endif  // BENCHLATTICE_ASSIGNMENT_HPP_
