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

// JSON documents: bench registries, test suites, capacity budgets and
// assignment plans. The schemas are described in docs/formats.md.
//
// Parsing never stops at the first problem. Structural problems are reported
// together as SchemaError; once the structure is sound, every bench (or test
// case) is validated and all findings are reported as ValidationError. Each
// diagnostic carries a location such as "benches[0].elements[3].stage".
//
// Serialization is canonical: object keys sorted, two-space indent, trailing
// newline, benches and elements in their validated order.

#ifndef BENCHLATTICE_REGISTRY_HPP_
#define BENCHLATTICE_REGISTRY_HPP_

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "benchlattice/assignment.hpp"
#include "benchlattice/error.hpp"
#include "benchlattice/taxonomy.hpp"
#include "benchlattice/testcase.hpp"

namespace benchlattice {

inline constexpr std::string_view kFormatVersion = "1";

namespace detail {

using nlohmann::json;

/// Typed field access that records schema problems instead of throwing.
class SchemaReader {
 public:
  explicit SchemaReader(std::vector<Diagnostic>& diagnostics) : diagnostics_(diagnostics) {}

  void fail(const std::string& location, const std::string& message) {
    diagnostics_.push_back({Errc::kSchemaError, location, message});
  }

  bool expect_object(const json& value, const std::string& location,
                     std::initializer_list<std::string_view> allowed) {
    if (!value.is_object()) {
      fail(location, "expected an object");
      return false;
    }
    for (const auto& [key, unused] : value.items()) {
      bool known = false;
      for (auto a : allowed) known = known || a == key;
      if (!known) fail(join(location, key), "unknown field");
    }
    return true;
  }

  const json* member(const json& object, std::string_view key, const std::string& location,
                     bool required) {
    auto it = object.find(key);
    if (it == object.end()) {
      if (required) fail(join(location, key), "required field is missing");
      return nullptr;
    }
    return &*it;
  }

  std::optional<std::string> string(const json& object, std::string_view key,
                                    const std::string& location, bool required = true) {
    const json* v = member(object, key, location, required);
    if (v == nullptr) return std::nullopt;
    if (!v->is_string()) {
      fail(join(location, key), "expected a string");
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  std::optional<double> number(const json& object, std::string_view key,
                               const std::string& location, bool required = true) {
    const json* v = member(object, key, location, required);
    if (v == nullptr) return std::nullopt;
    if (!v->is_number()) {
      fail(join(location, key), "expected a number");
      return std::nullopt;
    }
    return v->get<double>();
  }

  std::optional<std::vector<std::string>> strings(const json& object, std::string_view key,
                                                  const std::string& location,
                                                  bool required = true) {
    const json* v = member(object, key, location, required);
    if (v == nullptr) return std::nullopt;
    return string_array(*v, join(location, key));
  }

  std::optional<std::vector<std::string>> string_array(const json& v, const std::string& location) {
    if (!v.is_array()) {
      fail(location, "expected an array of strings");
      return std::nullopt;
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_string()) {
        fail(location + "[" + std::to_string(i) + "]", "expected a string");
        return std::nullopt;
      }
      out.push_back(v[i].get<std::string>());
    }
    return out;
  }

  std::optional<StageSet> stages(const json& v, const std::string& location) {
    auto names = string_array(v, location);
    if (!names) return std::nullopt;
    StageSet out;
    for (std::size_t i = 0; i < names->size(); ++i) {
      auto stage = parse_stage((*names)[i]);
      if (!stage) {
        fail(location + "[" + std::to_string(i) + "]",
             "'" + (*names)[i] + "' is not one of simulated, emulated, real");
        return std::nullopt;
      }
      out.insert(*stage);
    }
    return out;
  }

  void format_version(const json& doc) {
    auto version = string(doc, "format_version", "");
    if (version && *version != kFormatVersion) {
      fail("format_version", "unsupported version '" + *version + "'");
    }
  }

  static std::string join(const std::string& location, std::string_view key) {
    return location.empty() ? std::string(key) : location + "." + std::string(key);
  }

 private:
  std::vector<Diagnostic>& diagnostics_;
};

inline json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::kSyntaxError, std::string(what) + ": " + e.what());
  }
}

inline std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

inline std::string prefix_location(const std::string& prefix, const std::string& location) {
  return location.empty() ? prefix : prefix + "." + location;
}

inline std::optional<BenchDescription> read_bench(SchemaReader& r, const json& b,
                                                  const std::string& loc) {
  if (!r.expect_object(b, loc, {"id", "display_name", "substantiations", "combinable", "elements"})) {
    return std::nullopt;
  }
  BenchDescription desc;
  bool ok = true;
  auto take = [&ok](auto&& opt, auto& target) {
    if (opt) target = std::move(*opt);
    else ok = false;
  };
  take(r.string(b, "id", loc), desc.id);
  take(r.string(b, "display_name", loc), desc.display_name);

  if (const json* subs = r.member(b, "substantiations", loc, false)) {
    const std::string sloc = loc + ".substantiations";
    if (!subs->is_object()) {
      r.fail(sloc, "expected an object of parent -> sub-dimension names");
      ok = false;
    } else {
      for (const auto& [parent, names] : subs->items()) {
        auto list = r.string_array(names, sloc + "." + parent);
        if (list) desc.substantiations.push_back({parent, std::move(*list)});
        else ok = false;
      }
    }
  }
  if (const json* comb = r.member(b, "combinable", loc, false)) {
    const std::string cloc = loc + ".combinable";
    if (!comb->is_object()) {
      r.fail(cloc, "expected an object of dimension -> boolean");
      ok = false;
    } else {
      for (const auto& [id, flag] : comb->items()) {
        if (flag.is_boolean()) desc.combinable[id] = flag.get<bool>();
        else {
          r.fail(cloc + "." + id, "expected a boolean");
          ok = false;
        }
      }
    }
  }

  const json* elements = r.member(b, "elements", loc, true);
  if (elements == nullptr) return std::nullopt;
  if (!elements->is_array()) {
    r.fail(loc + ".elements", "expected an array");
    return std::nullopt;
  }
  for (std::size_t i = 0; i < elements->size(); ++i) {
    const json& e = (*elements)[i];
    const std::string eloc = loc + ".elements[" + std::to_string(i) + "]";
    if (!r.expect_object(e, eloc,
                         {"id", "display_name", "dimension", "stage", "validated_for", "cost_rate",
                          "time_factor", "setup_cost", "extensions"})) {
      ok = false;
      continue;
    }
    Element el;
    take(r.string(e, "id", eloc), el.id);
    take(r.string(e, "display_name", eloc), el.display_name);
    take(r.string(e, "dimension", eloc), el.dimension);
    if (auto stage_text = r.string(e, "stage", eloc)) {
      if (auto stage = parse_stage(*stage_text)) {
        el.stage = *stage;
      } else {
        r.fail(eloc + ".stage", "'" + *stage_text + "' is not one of simulated, emulated, real");
        ok = false;
      }
    } else {
      ok = false;
    }
    if (auto tags = r.strings(e, "validated_for", eloc)) {
      el.characteristics.validated_for = {tags->begin(), tags->end()};
    } else {
      ok = false;
    }
    take(r.number(e, "cost_rate", eloc), el.characteristics.cost_rate);
    take(r.number(e, "time_factor", eloc), el.characteristics.time_factor);
    take(r.number(e, "setup_cost", eloc), el.characteristics.setup_cost);
    if (const json* ext = r.member(e, "extensions", eloc, false)) {
      if (!ext->is_object()) {
        r.fail(eloc + ".extensions", "expected an object of numbers");
        ok = false;
      } else {
        for (const auto& [k, v] : ext->items()) {
          if (v.is_number()) el.characteristics.extensions[k] = v.get<double>();
          else {
            r.fail(eloc + ".extensions." + k, "expected a number");
            ok = false;
          }
        }
      }
    }
    desc.elements.push_back(std::move(el));
  }
  if (!ok) return std::nullopt;
  return desc;
}

inline json write_bench(const TestBench& bench) {
  json b = json::object();
  b["id"] = bench.id();
  b["display_name"] = bench.display_name();
  json subs = json::object();
  for (const auto& s : bench.substantiations()) subs[s.parent] = s.sub_names;
  b["substantiations"] = subs;
  json comb = json::object();
  for (const auto& [id, flag] : bench.combinable_overrides()) comb[id] = flag;
  b["combinable"] = comb;
  json elements = json::array();
  for (const auto& e : bench.elements()) {
    json j = json::object();
    j["id"] = e.id;
    j["display_name"] = e.display_name;
    j["dimension"] = e.dimension;
    j["stage"] = std::string(to_string(e.stage));
    j["validated_for"] = e.characteristics.validated_for;
    j["cost_rate"] = e.characteristics.cost_rate;
    j["time_factor"] = e.characteristics.time_factor;
    j["setup_cost"] = e.characteristics.setup_cost;
    if (!e.characteristics.extensions.empty()) j["extensions"] = e.characteristics.extensions;
    elements.push_back(std::move(j));
  }
  b["elements"] = std::move(elements);
  return b;
}

inline json write_stages(StageSet set) {
  json out = json::array();
  for (Stage s : set.stages()) out.push_back(std::string(to_string(s)));
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIoError, "cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(Errc::kIoError, "error while reading '" + path.string() + "'");
  return buffer.str();
}

/// Writes through a temporary sibling file and renames it into place, so a
/// failed write never leaves a partial file at `path`.
inline void write_text_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::kIoError, "cannot write '" + path.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(Errc::kIoError, "error while writing '" + path.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw Error(Errc::kIoError, "cannot move result into '" + path.string() + "': " + ec.message());
  }
}

// ---------------------------------------------------------------------------
// Registries
// ---------------------------------------------------------------------------

inline std::vector<TestBench> parse_registry(std::string_view text) {
  using detail::json;
  const auto doc = detail::parse_json(text, "registry");
  std::vector<Diagnostic> diagnostics;
  detail::SchemaReader r(diagnostics);

  std::vector<BenchDescription> descriptions;
  if (r.expect_object(doc, "", {"format_version", "benches"})) {
    r.format_version(doc);
    if (const json* benches = r.member(doc, "benches", "", true)) {
      if (!benches->is_array()) {
        r.fail("benches", "expected an array");
      } else {
        for (std::size_t i = 0; i < benches->size(); ++i) {
          auto desc = detail::read_bench(r, (*benches)[i], "benches[" + std::to_string(i) + "]");
          if (desc) descriptions.push_back(std::move(*desc));
        }
      }
    }
  }
  if (!diagnostics.empty()) {
    throw Error(Errc::kSchemaError, "registry does not match the schema", std::move(diagnostics));
  }

  std::vector<TestBench> benches;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < descriptions.size(); ++i) {
    const std::string loc = "benches[" + std::to_string(i) + "]";
    if (!ids.insert(descriptions[i].id).second) {
      diagnostics.push_back({Errc::kDuplicateId, loc + ".id",
                             "bench '" + descriptions[i].id + "': id is not unique"});
    }
    try {
      benches.push_back(validate_bench(descriptions[i]));
    } catch (const Error& e) {
      for (const auto& d : e.diagnostics()) {
        diagnostics.push_back({d.code, detail::prefix_location(loc, d.location),
                               "bench '" + descriptions[i].id + "': " + d.message});
      }
    }
  }
  if (!diagnostics.empty()) {
    throw Error(Errc::kValidationError, "registry contains invalid benches",
                std::move(diagnostics));
  }
  return benches;
}

inline std::string serialize_registry(std::span<const TestBench> benches) {
  detail::json doc = detail::json::object();
  doc["format_version"] = std::string(kFormatVersion);
  doc["benches"] = detail::json::array();
  for (const auto& b : benches) doc["benches"].push_back(detail::write_bench(b));
  return detail::dump(doc);
}

inline std::vector<TestBench> load_registry(const std::filesystem::path& path) {
  return parse_registry(read_text_file(path));
}

inline void save_registry(std::span<const TestBench> benches, const std::filesystem::path& path) {
  write_text_file_atomic(path, serialize_registry(benches));
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

inline Suite parse_suite(std::string_view text) {
  using detail::json;
  const auto doc = detail::parse_json(text, "suite");
  std::vector<Diagnostic> diagnostics;
  detail::SchemaReader r(diagnostics);

  std::vector<std::pair<TestCaseDescription, StageOverrides>> raw;
  if (r.expect_object(doc, "", {"format_version", "test_cases"})) {
    r.format_version(doc);
    const json* cases = r.member(doc, "test_cases", "", true);
    if (cases != nullptr && !cases->is_array()) r.fail("test_cases", "expected an array");
    for (std::size_t i = 0; cases != nullptr && cases->is_array() && i < cases->size(); ++i) {
      const json& c = (*cases)[i];
      const std::string loc = "test_cases[" + std::to_string(i) + "]";
      if (!r.expect_object(c, loc, {"id", "purpose", "scenario", "evaluation_criteria", "overrides"})) {
        continue;
      }
      TestCaseDescription tc;
      StageOverrides overrides;
      tc.id = r.string(c, "id", loc).value_or("");
      tc.purpose = r.string(c, "purpose", loc).value_or("");

      if (const json* s = r.member(c, "scenario", loc, true)) {
        const std::string sloc = loc + ".scenario";
        if (r.expect_object(*s, sloc,
                            {"road_level", "traffic_infrastructure", "temporary_manipulation",
                             "movable_objects", "environment_conditions", "nominal_duration"})) {
          tc.road_level = r.string(*s, "road_level", sloc, false);
          tc.traffic_infrastructure = r.string(*s, "traffic_infrastructure", sloc, false);
          tc.temporary_manipulation = r.string(*s, "temporary_manipulation", sloc, false);
          tc.environment_conditions = r.strings(*s, "environment_conditions", sloc, false);
          tc.nominal_duration = r.number(*s, "nominal_duration", sloc, false);
          if (const json* objs = r.member(*s, "movable_objects", sloc, false)) {
            const std::string oloc = sloc + ".movable_objects";
            if (!objs->is_array()) {
              r.fail(oloc, "expected an array");
            } else {
              std::vector<MovableObjectDescriptor> list;
              for (std::size_t k = 0; k < objs->size(); ++k) {
                const std::string kloc = oloc + "[" + std::to_string(k) + "]";
                const json& o = (*objs)[k];
                if (!r.expect_object(o, kloc, {"type", "count"})) continue;
                MovableObjectDescriptor d;
                d.type = r.string(o, "type", kloc).value_or("");
                if (const json* n = r.member(o, "count", kloc, true)) {
                  if (n->is_number_integer()) d.count = n->get<int>();
                  else r.fail(kloc + ".count", "expected an integer");
                }
                list.push_back(std::move(d));
              }
              tc.movable_objects = std::move(list);
            }
          }
        }
      }

      if (const json* crits = r.member(c, "evaluation_criteria", loc, true)) {
        const std::string cloc = loc + ".evaluation_criteria";
        if (!crits->is_array()) r.fail(cloc, "expected an array");
        for (std::size_t k = 0; crits->is_array() && k < crits->size(); ++k) {
          const std::string kloc = cloc + "[" + std::to_string(k) + "]";
          const json& crit = (*crits)[k];
          if (!r.expect_object(crit, kloc, {"name", "threshold", "references"})) continue;
          EvaluationCriterion ec;
          ec.name = r.string(crit, "name", kloc).value_or("");
          ec.threshold = r.string(crit, "threshold", kloc).value_or("");
          ec.references = r.strings(crit, "references", kloc, false).value_or(std::vector<std::string>{});
          tc.evaluation_criteria.push_back(std::move(ec));
        }
      }

      if (const json* ov = r.member(c, "overrides", loc, false)) {
        const std::string oloc = loc + ".overrides";
        if (!ov->is_object()) {
          r.fail(oloc, "expected an object of dimension -> stages");
        } else {
          for (const auto& [key, value] : ov->items()) {
            if (auto set = r.stages(value, oloc + "." + key)) overrides[key] = *set;
          }
        }
      }
      raw.emplace_back(std::move(tc), std::move(overrides));
    }
  }
  if (!diagnostics.empty()) {
    throw Error(Errc::kSchemaError, "suite does not match the schema", std::move(diagnostics));
  }

  Suite suite;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const std::string loc = "test_cases[" + std::to_string(i) + "]";
    if (!ids.insert(raw[i].first.id).second) {
      diagnostics.push_back({Errc::kDuplicateId, loc + ".id",
                             "test case '" + raw[i].first.id + "': id is not unique"});
    }
    try {
      SuiteEntry entry{validate_test_case(raw[i].first), raw[i].second};
      derive_requirement_profile(entry.test_case, entry.overrides);
      suite.push_back(std::move(entry));
    } catch (const Error& e) {
      for (const auto& d : e.diagnostics()) {
        diagnostics.push_back({d.code, detail::prefix_location(loc, d.location),
                               "test case '" + raw[i].first.id + "': " + d.message});
      }
    }
  }
  if (!diagnostics.empty()) {
    throw Error(Errc::kValidationError, "suite contains invalid test cases",
                std::move(diagnostics));
  }
  return suite;
}

inline std::string serialize_suite(const Suite& suite) {
  using detail::json;
  json doc = json::object();
  doc["format_version"] = std::string(kFormatVersion);
  doc["test_cases"] = json::array();
  for (const auto& entry : suite) {
    const auto& tc = entry.test_case;
    json c = json::object();
    c["id"] = tc.id;
    c["purpose"] = tc.purpose;
    json s = json::object();
    s["road_level"] = tc.scenario.road_level;
    s["traffic_infrastructure"] = tc.scenario.traffic_infrastructure;
    s["temporary_manipulation"] = tc.scenario.temporary_manipulation;
    s["movable_objects"] = json::array();
    for (const auto& o : tc.scenario.movable_objects) {
      s["movable_objects"].push_back({{"type", o.type}, {"count", o.count}});
    }
    s["environment_conditions"] = tc.scenario.environment_conditions;
    s["nominal_duration"] = tc.scenario.nominal_duration;
    c["scenario"] = std::move(s);
    c["evaluation_criteria"] = json::array();
    for (const auto& ec : tc.evaluation_criteria) {
      json j = {{"name", ec.name}, {"threshold", ec.threshold}};
      if (!ec.references.empty()) j["references"] = ec.references;
      c["evaluation_criteria"].push_back(std::move(j));
    }
    if (!entry.overrides.empty()) {
      json ov = json::object();
      for (const auto& [key, set] : entry.overrides) ov[key] = detail::write_stages(set);
      c["overrides"] = std::move(ov);
    }
    doc["test_cases"].push_back(std::move(c));
  }
  return detail::dump(doc);
}

inline Suite load_suite(const std::filesystem::path& path) {
  return parse_suite(read_text_file(path));
}

// ---------------------------------------------------------------------------
// Budgets
// ---------------------------------------------------------------------------

inline CapacityBudget parse_budget(std::string_view text) {
  const auto doc = detail::parse_json(text, "budget");
  std::vector<Diagnostic> diagnostics;
  detail::SchemaReader r(diagnostics);
  CapacityBudget budget;
  if (r.expect_object(doc, "", {"format_version", "max_bench_time"})) {
    r.format_version(doc);
    if (const detail::json* limits = r.member(doc, "max_bench_time", "", true)) {
      if (!limits->is_object()) {
        r.fail("max_bench_time", "expected an object of bench -> seconds");
        return budget;
      }
      for (const auto& [id, v] : limits->items()) {
        if (!v.is_number()) {
          r.fail("max_bench_time." + id, "expected a number");
        } else if (!(v.get<double>() > 0.0)) {
          diagnostics.push_back({Errc::kInvalidBudget, "max_bench_time." + id, "must be > 0"});
        } else {
          budget.max_bench_time[id] = v.get<double>();
        }
      }
    }
  }
  if (!diagnostics.empty()) {
    const bool schema = std::any_of(diagnostics.begin(), diagnostics.end(),
                                    [](const Diagnostic& d) { return d.code == Errc::kSchemaError; });
    throw Error(schema ? Errc::kSchemaError : Errc::kInvalidBudget, "budget is invalid",
                std::move(diagnostics));
  }
  return budget;
}

inline CapacityBudget load_budget(const std::filesystem::path& path) {
  return parse_budget(read_text_file(path));
}

// ---------------------------------------------------------------------------
// Plans
// ---------------------------------------------------------------------------

inline std::string serialize_plan(const AssignmentPlan& plan) {
  using detail::json;
  json doc = json::object();
  doc["format_version"] = std::string(kFormatVersion);
  doc["solver"] = plan.solver;
  doc["total_cost"] = plan.total_cost;
  doc["total_bench_time"] = plan.total_bench_time;

  auto write_report = [](const AdmissibilityReport& report) {
    json violations = json::array();
    for (const auto& v : report.violations) {
      json j = {{"dimension", v.dimension}, {"reason", std::string(to_string(v.reason))}};
      if (!v.element.empty()) j["element"] = v.element;
      violations.push_back(std::move(j));
    }
    return json{{"admissible", report.admissible}, {"violations", violations}};
  };

  doc["assignments"] = json::array();
  for (const auto& a : plan.assignments) {
    json selection = json::object();
    for (const auto& sel : a.configuration.selection) selection[sel.leaf] = sel.element_ids;
    doc["assignments"].push_back({{"test_case", a.test_case},
                                  {"bench", a.bench_id},
                                  {"configuration_index", a.configuration_index},
                                  {"selection", selection},
                                  {"test_method", std::string(to_string(a.method))},
                                  {"execution_time", a.cost.execution_time},
                                  {"cost", a.cost.monetary_cost}});
  }
  doc["unassignable"] = json::array();
  for (const auto& u : plan.unassignable) {
    json reports = json::array();
    for (const auto& br : u.reports) {
      json j = write_report(br.report);
      j["bench"] = br.bench_id;
      j["configuration_index"] = br.configuration_index;
      reports.push_back(std::move(j));
    }
    doc["unassignable"].push_back({{"test_case", u.test_case},
                                   {"reason", std::string(to_string(u.reason))},
                                   {"reports", reports}});
  }
  return detail::dump(doc);
}

inline void save_plan(const AssignmentPlan& plan, const std::filesystem::path& path) {
  write_text_file_atomic(path, serialize_plan(plan));
}

}  // namespace benchlattice

#endif  // BENCHLATTICE_REGISTRY_HPP_
