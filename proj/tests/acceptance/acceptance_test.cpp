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


// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Randomized checks use fixed seeds.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "benchlattice/benchlattice.hpp"
#include "test_support.hpp"

namespace benchlattice {
namespace {

using testing::load_single;

/// Collects failed expectations of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    failed_ = failed_ || !ok;
  }
  bool failed() const { return failed_; }
  std::string summary() const {
    std::string out;
    for (const auto& f : failures_) out += "\n      " + f;
    return out;
  }

 private:
  bool failed_ = false;
  std::vector<std::string> failures_;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// AC1: the SiL bench validates with 11 leaves and 12 elements and has one
// configuration per vehicle-dynamics model.
std::string ac1(Check& c) {
  const TestBench sil = load_single("sil.bench.json");
  c.expect(sil.leaves().size() == 11, "leaf count " + std::to_string(sil.leaves().size()));
  c.expect(sil.elements().size() == 12, "element count " + std::to_string(sil.elements().size()));
  const auto configs = enumerate_configurations(sil);
  c.expect(configs.size() == 2, "configuration count " + std::to_string(configs.size()));
  std::set<std::string> models;
  for (const auto& config : configs) {
    const auto& ids = config.find("vehicle-dynamics")->element_ids;
    c.expect(ids.size() == 1, "one vehicle-dynamics element per configuration");
    models.insert(ids.begin(), ids.end());
  }
  c.expect(models == std::set<std::string>{"sim-single-track", "sim-double-track"},
           "single-track and double-track each appear once");
  return "sil: 11 leaves, 12 elements, 2 configurations";
}

// AC2: the test vehicle has exactly one configuration, classified as a test
// vehicle; both SiL configurations classify as software-in-the-loop.
std::string ac2(Check& c) {
  const TestBench tv = load_single("test_vehicle.bench.json");
  const auto configs = enumerate_configurations(tv);
  c.expect(configs.size() == 1, "test vehicle configuration count");
  if (!configs.empty()) {
    c.expect(to_string(classify_test_method(configs[0], tv)) == "test-vehicle",
             "test vehicle classified as " + std::string(to_string(classify_test_method(configs[0], tv))));
  }
  const TestBench sil = load_single("sil.bench.json");
  for (const auto& config : enumerate_configurations(sil)) {
    c.expect(to_string(classify_test_method(config, sil)) == "software-in-the-loop",
             "sil configuration classified as something else");
  }
  return "test-vehicle x1, software-in-the-loop x2";
}

// AC3: count equals enumeration length over 1000 random benches.
std::string ac3(Check& c) {
  std::mt19937_64 rng(20261015);
  std::size_t benches = 0;
  std::uint64_t largest = 0;
  std::size_t combinable_seen = 0;
  while (benches < 1000) {
    testing::BenchShape shape;
    shape.combinable_probability = 0.15;
    shape.single_element_probability = 0.5;
    const auto raw = testing::random_description(rng, "r" + std::to_string(benches), shape);
    const TestBench bench = validate_bench(raw);
    const std::uint64_t count = count_configurations(bench);
    if (count > 10'000) continue;
    ++benches;
    largest = std::max(largest, count);
    for (const auto& leaf : bench.leaves()) {
      if (leaf.combinable && bench.elements_of(bench.leaf_index(leaf.id)).size() > 1) {
        ++combinable_seen;
        break;
      }
    }
    c.expect(bench.leaves().size() <= 11, "bench has more than 11 leaves");
    const auto listed = enumerate_configurations(bench, 10'000);
    c.expect(listed.size() == count,
             bench.id() + ": count " + std::to_string(count) + " vs " + std::to_string(listed.size()));
  }
  return std::to_string(benches) + " benches, largest count " + std::to_string(largest) + ", " +
         std::to_string(combinable_seen) + " with a populated combinable leaf";
}

// AC4: three mixed-stage movable objects on a combinable leaf give 2^3 - 1.
std::string ac4(Check& c) {
  const TestBench vil = load_single("vil.bench.json");
  const std::size_t leaf = vil.leaf_index("movable-objects");
  c.expect(vil.leaves()[leaf].combinable, "movable-objects is combinable");
  std::set<Stage> stages;
  for (const auto& e : vil.elements_of(leaf)) stages.insert(e.stage);
  c.expect(vil.elements_of(leaf).size() == 3 && stages.size() == 3,
           "three elements on three stages");
  for (std::size_t i = 0; i < vil.leaves().size(); ++i) {
    if (i != leaf) c.expect(vil.elements_of(i).size() == 1, "one element elsewhere");
  }
  const auto configs = enumerate_configurations(vil);
  c.expect(configs.size() == 7, "configuration count " + std::to_string(configs.size()));
  std::set<std::vector<std::string>> subsets;
  for (const auto& config : configs) subsets.insert(config.find("movable-objects")->element_ids);
  c.expect(subsets.size() == 7, "subsets are distinct");
  return "vil: 7 configurations";
}

// AC5: chart determinism, structure and geometry.
std::string ac5(Check& c) {
  const TestBench sil = load_single("sil.bench.json");
  const std::string first = render_bench_chart(sil);
  const std::string second = render_bench_chart(load_single("sil.bench.json"));
  c.expect(first == second, "two renderings differ");
  c.expect(testing::count_occurrences(first, "class=\"spoke\"") == 11, "spoke groups != 11");
  const auto circles = testing::element_circles(first);
  c.expect(circles.size() == 12, "element dots " + std::to_string(circles.size()));

  std::vector<testing::SvgCircle> vd;
  for (const auto& circle : circles) {
    if (circle.dimension == "vehicle-dynamics") vd.push_back(circle);
  }
  c.expect(vd.size() == 2, "vehicle-dynamics dots != 2");
  if (vd.size() == 2) {
    const double r0 = std::hypot(vd[0].cx - 320.0, vd[0].cy - 320.0);
    const double r1 = std::hypot(vd[1].cx - 320.0, vd[1].cy - 320.0);
    const double a0 = std::atan2(vd[0].cx - 320.0, 320.0 - vd[0].cy);
    const double a1 = std::atan2(vd[1].cx - 320.0, 320.0 - vd[1].cy);
    c.expect(std::fabs(r0 - r1) <= 0.5, "dots on different rings: " + num(r0) + " " + num(r1));
    c.expect(std::fabs(r0 - 80.0) <= 0.5, "simulated ring radius " + num(r0));
    c.expect(std::fabs(a0 - a1) > 1e-3, "dots share an angle");
    // Spoke 3 of 11, fanned symmetrically by 4 degrees.
    const double spoke = 2.0 * 360.0 / 11.0 * std::numbers::pi / 180.0;
    c.expect(std::fabs((a0 + a1) / 2.0 - spoke) < 0.01, "fan not centered on the spoke");
  }

  const auto config = configuration_at(sil, 0);
  const std::string overlay = render_configuration_chart(config, sil);
  c.expect(overlay == render_configuration_chart(config, sil), "overlay not deterministic");
  c.expect(testing::count_occurrences(overlay, "<polygon") == 1, "one closed polygon");
  const auto points = testing::polygon_points(overlay);
  c.expect(points.size() == 11, "polygon vertices " + std::to_string(points.size()));
  return "12 dots on 11 spokes, 11-vertex overlay, byte-identical re-render";
}

struct PlanCheck {
  const testing::SolverInstance* inst;
  Check* c;

  void sound(const AssignmentPlan& plan, const std::string& tag) const {
    c->expect(plan.assignments.size() + plan.unassignable.size() == inst->suite.size(),
              tag + ": test case accounting");
    for (const auto& a : plan.assignments) {
      const SuiteEntry* entry = nullptr;
      for (const auto& s : inst->suite) {
        if (s.test_case.id == a.test_case) entry = &s;
      }
      const TestBench* bench = nullptr;
      for (const auto& b : inst->benches) {
        if (b.id() == a.bench_id) bench = &b;
      }
      if (entry == nullptr || bench == nullptr) {
        c->expect(false, tag + ": assignment names unknown ids");
        continue;
      }
      const auto profile = derive_requirement_profile(entry->test_case, entry->overrides);
      c->expect(check_admissibility(a.configuration, *bench, profile).admissible,
                tag + ": inadmissible assignment for " + a.test_case);
    }
    for (const auto& [id, seconds] : plan.total_bench_time) {
      if (auto limit = inst->budget.limit(id)) {
        c->expect(seconds <= *limit, tag + ": budget of " + id + " exceeded");
      }
    }
  }
};

// AC6: soundness everywhere, greedy == exact without budget, exact no worse
// than greedy with budget.
std::string ac6(Check& c) {
  std::mt19937_64 rng(6);
  std::size_t instances = 0;
  std::size_t budgeted = 0;
  std::size_t exact_fewer_unassigned = 0;
  std::size_t exact_cheaper = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const bool with_budget = trial % 2 == 1;
    const auto inst = testing::random_solver_instance(rng, with_budget);
    const PlanCheck check{&inst, &c};
    const auto greedy = assign_greedy(inst.suite, inst.benches, inst.budget);
    const auto exact = assign_exact(inst.suite, inst.benches, inst.budget);
    check.sound(greedy, "greedy#" + std::to_string(trial));
    check.sound(exact, "exact#" + std::to_string(trial));
    ++instances;
    if (!with_budget || inst.budget.empty()) {
      c.expect(std::fabs(greedy.total_cost - exact.total_cost) <= 1e-9,
               "unbudgeted #" + std::to_string(trial) + ": greedy " + num(greedy.total_cost) +
                   " exact " + num(exact.total_cost));
      c.expect(greedy.unassignable.size() == exact.unassignable.size(),
               "unbudgeted #" + std::to_string(trial) + ": unassigned counts differ");
      continue;
    }
    ++budgeted;
    // Exact minimizes (unassigned, cost) lexicographically.
    const std::size_t ge = greedy.unassignable.size();
    const std::size_t ex = exact.unassignable.size();
    c.expect(ex <= ge, "budgeted #" + std::to_string(trial) + ": exact leaves more unassigned");
    if (ex < ge) ++exact_fewer_unassigned;
    if (ex == ge) {
      c.expect(exact.total_cost <= greedy.total_cost + 1e-9,
               "budgeted #" + std::to_string(trial) + ": exact " + num(exact.total_cost) +
                   " > greedy " + num(greedy.total_cost));
      if (exact.total_cost < greedy.total_cost - 1e-9) ++exact_cheaper;
    }
  }
  return std::to_string(instances) + " instances (" + std::to_string(budgeted) +
         " budgeted; exact assigned more in " + std::to_string(exact_fewer_unassigned) +
         ", was cheaper in " + std::to_string(exact_cheaper) + ")";
}

TestBench scale_rates(const TestBench& bench, double factor) {
  auto raw = describe(bench);
  for (auto& e : raw.elements) e.characteristics.cost_rate *= factor;
  return validate_bench(raw);
}

bool strict_cost_order(const Suite& suite, const std::vector<TestBench>& benches) {
  for (const auto& entry : suite) {
    const auto profile = derive_requirement_profile(entry.test_case, entry.overrides);
    std::vector<double> costs;
    for (const auto& b : benches) {
      for (const auto& config : enumerate_configurations(b)) {
        if (check_admissibility(config, b, profile).admissible) {
          costs.push_back(estimate_cost(config, b, entry.test_case).monetary_cost);
        }
      }
    }
    std::sort(costs.begin(), costs.end());
    if (std::adjacent_find(costs.begin(), costs.end()) != costs.end()) return false;
  }
  return true;
}

// AC7: rates x10 leaves admissibility untouched and scales cost exactly.
std::string ac7(Check& c) {
  std::mt19937_64 rng(7);
  std::size_t instances = 0;
  std::size_t strict = 0;
  std::size_t reports = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = testing::random_solver_instance(rng, trial % 2 == 1, false);
    std::vector<TestBench> scaled;
    for (const auto& b : inst.benches) scaled.push_back(scale_rates(b, 10.0));

    for (const auto& entry : inst.suite) {
      const auto profile = derive_requirement_profile(entry.test_case, entry.overrides);
      for (std::size_t b = 0; b < inst.benches.size(); ++b) {
        const auto original = enumerate_configurations(inst.benches[b]);
        const auto rescaled = enumerate_configurations(scaled[b]);
        for (std::size_t i = 0; i < original.size(); ++i) {
          ++reports;
          c.expect(check_admissibility(original[i], inst.benches[b], profile) ==
                       check_admissibility(rescaled[i], scaled[b], profile),
                   "admissibility report changed");
        }
      }
    }

    const bool is_strict = strict_cost_order(inst.suite, inst.benches);
    strict += is_strict ? 1 : 0;
    for (int solver = 0; solver < 2; ++solver) {
      const auto before = solver == 0 ? assign_greedy(inst.suite, inst.benches, inst.budget)
                                      : assign_exact(inst.suite, inst.benches, inst.budget);
      const auto after = solver == 0 ? assign_greedy(inst.suite, scaled, inst.budget)
                                     : assign_exact(inst.suite, scaled, inst.budget);
      const std::string tag = before.solver + "#" + std::to_string(trial);
      c.expect(after.total_cost == 10.0 * before.total_cost,
               tag + ": " + num(after.total_cost) + " != 10 x " + num(before.total_cost));
      if (is_strict) {
        bool same = before.assignments.size() == after.assignments.size();
        for (std::size_t i = 0; same && i < before.assignments.size(); ++i) {
          same = before.assignments[i].bench_id == after.assignments[i].bench_id &&
                 before.assignments[i].configuration_index == after.assignments[i].configuration_index;
        }
        c.expect(same, tag + ": chosen configurations changed");
      }
    }
    ++instances;
  }
  return std::to_string(instances) + " instances, " + std::to_string(reports) +
         " reports compared, " + std::to_string(strict) + " with strict cost order";
}

// AC8: parse -> serialize -> parse is the identity and serialization is
// byte-stable, for every fixture and 100 random registries.
std::string ac8(Check& c) {
  std::size_t fixtures = 0;
  for (const char* name : {"sil.bench.json", "test_vehicle.bench.json", "vil.bench.json",
                           "fleet.bench.json"}) {
    const auto benches = load_registry(testing::data_path(name));
    const std::string text = serialize_registry(benches);
    const auto back = parse_registry(text);
    c.expect(back == benches, std::string(name) + ": structure changed");
    c.expect(serialize_registry(back) == text, std::string(name) + ": bytes changed");
    ++fixtures;
  }
  {
    const Suite suite = load_suite(testing::data_path("cut_in.suite.json"));
    const std::string text = serialize_suite(suite);
    c.expect(parse_suite(text) == suite, "suite: structure changed");
    c.expect(serialize_suite(parse_suite(text)) == text, "suite: bytes changed");
    ++fixtures;
  }
  {
    const auto budget = load_budget(testing::data_path("fleet.budget.json"));
    c.expect(budget.max_bench_time.size() == 2, "budget fixture loads");
  }

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<TestBench> benches;
    for (int b = 0; b < 1 + trial % 4; ++b) {
      auto raw = testing::random_description(rng, "bench-" + std::to_string(b));
      raw.display_name += " \"quoted\" & <tagged>";
      raw.elements[0].characteristics.cost_rate = 0.1 * (trial + 1);
      raw.elements[0].characteristics.extensions["fidelity"] = 1.0 / 3.0;
      benches.push_back(validate_bench(raw));
    }
    const std::string text = serialize_registry(benches);
    const auto back = parse_registry(text);
    c.expect(back == benches, "random #" + std::to_string(trial) + ": structure changed");
    c.expect(serialize_registry(back) == text, "random #" + std::to_string(trial) + ": bytes changed");
  }
  return std::to_string(fixtures) + " fixtures, 100 random registries";
}

struct Criterion {
  const char* id;
  const char* title;
  std::function<std::string(Check&)> run;
};

}  // namespace
}  // namespace benchlattice

int main() {
  using namespace benchlattice;
  const std::vector<Criterion> criteria{
      {"AC1", "SiL bench reproduction", ac1},
      {"AC2", "test vehicle and SiL classification", ac2},
      {"AC3", "counting law", ac3},
      {"AC4", "mixed-stage composition", ac4},
      {"AC5", "chart determinism and structure", ac5},
      {"AC6", "solver soundness and optimality", ac6},
      {"AC7", "admissibility/cost separation", ac7},
      {"AC8", "registry round trip", ac8},
  };
  int failed = 0;
  for (const auto& criterion : criteria) {
    Check check;
    std::string detail;
    const auto start = std::chrono::steady_clock::now();
    try {
      detail = criterion.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, " [%.2f s]", seconds);
    detail += timing;
    const bool ok = !check.failed();
    failed += ok ? 0 : 1;
    std::printf("[%s] %s %s: %s%s\n", ok ? "PASS" : "FAIL", criterion.id, criterion.title,
                detail.c_str(), check.summary().c_str());
  }
  std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
