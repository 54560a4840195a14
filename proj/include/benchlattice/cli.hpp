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

// Command-line planning tool.
//
// Exit codes: 0 success, 1 domain failure (invalid bench, unassignable test
// cases, configuration cap exceeded), 2 usage or parse error. Configuration
// indices always refer to the deterministic enumeration order.

#ifndef BENCHLATTICE_CLI_HPP_
#define BENCHLATTICE_CLI_HPP_

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "benchlattice/assignment.hpp"
#include "benchlattice/chart.hpp"
#include "benchlattice/configuration.hpp"
#include "benchlattice/error.hpp"
#include "benchlattice/registry.hpp"
#include "benchlattice/taxonomy.hpp"

namespace benchlattice::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kCapVariable = "BENCHLATTICE_CONFIG_CAP";

/// Enumeration cap, overridable through BENCHLATTICE_CONFIG_CAP.
inline std::uint64_t configuration_cap() {
  const char* text = std::getenv(kCapVariable);
  if (text == nullptr || *text == '\0') return kDefaultConfigurationCap;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(text, &end, 10);
  if (end == nullptr || *end != '\0' || value == 0) {
    throw Error(Errc::kSchemaError, std::string(kCapVariable) + " must be a positive integer");
  }
  return value;
}

inline int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::kSyntaxError:
    case Errc::kSchemaError:
    case Errc::kIoError:
    case Errc::kInstanceTooLarge:
    case Errc::kInvalidStyle:
    case Errc::kInvalidBudget:
      return kExitUsage;
    default:
      return kExitDomain;
  }
}

namespace detail {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline const TestBench& pick_bench(const std::vector<TestBench>& benches, const std::string& id) {
  for (const auto& b : benches) {
    if (b.id() == id) return b;
  }
  std::string known;
  for (const auto& b : benches) known += (known.empty() ? "" : ", ") + b.id();
  throw UsageError("unknown bench '" + id + "' (registry has: " + known + ")");
}

inline TestBenchConfiguration pick_configuration(const TestBench& bench, std::uint64_t index) {
  const std::uint64_t total = count_configurations(bench);
  if (index >= total) {
    throw UsageError("bench '" + bench.id() + "' has " + std::to_string(total) +
                     " configurations; --config must be below that");
  }
  return configuration_at(bench, index);
}

inline std::string describe_selection(const TestBenchConfiguration& config) {
  std::string out;
  for (const auto& sel : config.selection) {
    if (!out.empty()) out += ' ';
    out += sel.leaf + "=";
    for (std::size_t i = 0; i < sel.element_ids.size(); ++i) {
      if (i > 0) out += '+';
      out += sel.element_ids[i];
    }
  }
  return out;
}

inline std::string fixed(double v, int precision = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

inline std::string pad(std::string text, std::size_t width) {
  if (text.size() < width) text.append(width - text.size(), ' ');
  return text;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classify test benches, enumerate their configurations and assign test cases",
               "benchlattice"};
  app.require_subcommand(1);

  std::string registry_path;
  std::string bench_id;
  std::string output_path;
  std::string suite_path;
  std::string budget_path;
  std::optional<std::uint64_t> config_index;
  bool count_only = false;
  bool exact = false;
  bool omit_unselected = false;

  auto* validate = app.add_subcommand("validate", "Load a registry and report on its benches");
  validate->add_option("registry", registry_path, "Bench registry (*.bench.json)")->required();

  auto* enumerate = app.add_subcommand("enumerate", "List or count the configurations of a bench");
  enumerate->add_option("registry", registry_path, "Bench registry")->required();
  enumerate->add_option("--bench", bench_id, "Bench id")->required();
  enumerate->add_flag("--count-only", count_only, "Print only the number of configurations");

  auto* chart = app.add_subcommand("chart", "Render a bench or configuration radar chart as SVG");
  chart->add_option("registry", registry_path, "Bench registry")->required();
  chart->add_option("--bench", bench_id, "Bench id")->required();
  chart->add_option("--config", config_index, "Configuration index (enumeration order)");
  chart->add_flag("--omit-unselected", omit_unselected, "Hide elements outside the configuration");
  chart->add_option("-o,--output", output_path, "Output SVG file")->required();

  auto* classify = app.add_subcommand("classify", "Name the test method of a configuration");
  classify->add_option("registry", registry_path, "Bench registry")->required();
  classify->add_option("--bench", bench_id, "Bench id")->required();
  classify->add_option("--config", config_index, "Configuration index")->required();

  auto* assign = app.add_subcommand("assign", "Assign a test suite to admissible configurations");
  assign->add_option("registry", registry_path, "Bench registry")->required();
  assign->add_option("suite", suite_path, "Test suite (*.suite.json)")->required();
  assign->add_option("--budget", budget_path, "Capacity budget (*.budget.json)");
  assign->add_flag("--exact", exact, "Use the exhaustive solver (small instances only)");
  assign->add_option("-o,--output", output_path, "Output plan (*.plan.json)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const auto benches = load_registry(registry_path);

    if (*validate) {
      out << "registry " << registry_path << ": " << benches.size() << " bench(es) valid\n";
      for (const auto& b : benches) {
        const std::uint64_t count = count_configurations(b);
        out << "  " << b.id() << ": " << b.leaves().size() << " leaf dimensions, "
            << b.elements().size() << " elements, "
            << (count == kCountSaturated ? std::string(">= 2^64") : std::to_string(count))
            << (count == 1 ? " configuration\n" : " configurations\n");
        for (const auto& w : b.warnings()) out << "    warning: " << w << "\n";
      }
      return kExitOk;
    }

    if (*enumerate) {
      const TestBench& bench = detail::pick_bench(benches, bench_id);
      if (count_only) {
        const std::uint64_t count = count_configurations(bench);
        if (count == kCountSaturated) {
          err << "configuration count of '" << bench.id() << "' exceeds 2^64\n";
          return kExitDomain;
        }
        out << count << "\n";
        return kExitOk;
      }
      const auto configs = enumerate_configurations(bench, configuration_cap());
      for (std::size_t i = 0; i < configs.size(); ++i) {
        out << i << "\t" << to_string(classify_test_method(configs[i], bench)) << "\t"
            << detail::describe_selection(configs[i]) << "\n";
      }
      return kExitOk;
    }

    if (*chart) {
      const TestBench& bench = detail::pick_bench(benches, bench_id);
      ChartStyle style;
      style.omit_unselected = omit_unselected;
      std::string svg;
      if (config_index) {
        svg = render_configuration_chart(detail::pick_configuration(bench, *config_index), bench,
                                         style);
      } else {
        svg = render_bench_chart(bench, style);
      }
      write_text_file_atomic(output_path, svg);
      out << "wrote " << output_path << "\n";
      return kExitOk;
    }

    if (*classify) {
      const TestBench& bench = detail::pick_bench(benches, bench_id);
      out << to_string(classify_test_method(detail::pick_configuration(bench, *config_index), bench))
          << "\n";
      return kExitOk;
    }

    if (*assign) {
      const Suite suite = load_suite(suite_path);
      const CapacityBudget budget = budget_path.empty() ? CapacityBudget{} : load_budget(budget_path);
      const AssignmentPlan plan = exact ? assign_exact(suite, benches, budget)
                                        : assign_greedy(suite, benches, budget, configuration_cap());
      save_plan(plan, output_path);

      out << detail::pad("test case", 24) << detail::pad("bench", 16) << detail::pad("config", 8)
          << detail::pad("method", 24) << detail::pad("cost", 12) << "time [s]\n";
      for (const auto& entry : suite) {
        const auto& id = entry.test_case.id;
        if (const Assignment* a = plan.find(id)) {
          out << detail::pad(id, 24) << detail::pad(a->bench_id, 16)
              << detail::pad(std::to_string(a->configuration_index), 8)
              << detail::pad(std::string(to_string(a->method)), 24)
              << detail::pad(detail::fixed(a->cost.monetary_cost), 12)
              << detail::fixed(a->cost.execution_time) << "\n";
          continue;
        }
        for (const auto& u : plan.unassignable) {
          if (u.test_case != id) continue;
          out << detail::pad(id, 24) << "UNASSIGNED (" << to_string(u.reason) << ")\n";
          for (const auto& br : u.reports) {
            out << "    closest on " << br.bench_id << " #" << br.configuration_index << ":";
            for (const auto& v : br.report.violations) {
              out << " " << to_string(v.reason) << "@" << v.dimension;
              if (!v.element.empty()) out << "/" << v.element;
            }
            out << "\n";
          }
        }
      }
      out << "total cost: " << detail::fixed(plan.total_cost) << "\n";
      for (const auto& [bench, seconds] : plan.total_bench_time) {
        out << "bench time " << bench << ": " << detail::fixed(seconds) << " s\n";
      }
      out << "plan written to " << output_path << " (" << plan.assignments.size() << " assigned, "
          << plan.unassignable.size() << " unassignable)\n";
      return plan.unassignable.empty() ? kExitOk : kExitDomain;
    }
  } catch (const detail::UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    (exit_code_for(e) == kExitDomain ? out : err) << e.what() << "\n";
    return exit_code_for(e);
  }
  return kExitUsage;
}

}  // namespace benchlattice::cli

#endif  // BENCHLATTICE_CLI_HPP_
