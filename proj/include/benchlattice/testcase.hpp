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

#ifndef BENCHLATTICE_TESTCASE_HPP_
#define BENCHLATTICE_TESTCASE_HPP_

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "benchlattice/error.hpp"
#include "benchlattice/taxonomy.hpp"

namespace benchlattice {

struct MovableObjectDescriptor {
  std::string type;
  int count = 1;

  bool operator==(const MovableObjectDescriptor&) const = default;
};

/// Five-layer scenario description. Layers carry text, not geometry.
struct ScenarioLayers {
  std::string road_level;
  std::string traffic_infrastructure;
  std::string temporary_manipulation;
  std::vector<MovableObjectDescriptor> movable_objects;
  std::vector<std::string> environment_conditions;
  double nominal_duration = 0.0;  // seconds

  bool operator==(const ScenarioLayers&) const = default;
};

/// An evaluation criterion. `references` names dimensions (canonical ids or
/// "parent/sub" patterns) whose output the criterion evaluates.
struct EvaluationCriterion {
  std::string name;
  std::string threshold;
  std::vector<std::string> references;

  bool operator==(const EvaluationCriterion&) const = default;
};

struct TestCase {
  std::string id;
  ScenarioLayers scenario;
  std::vector<EvaluationCriterion> evaluation_criteria;
  std::string purpose;

  bool operator==(const TestCase&) const = default;
};

/// Test case as authored; absent layers stay empty optionals so that a
/// missing layer can be told apart from an empty one.
struct TestCaseDescription {
  std::string id;
  std::optional<std::string> road_level;
  std::optional<std::string> traffic_infrastructure;
  std::optional<std::string> temporary_manipulation;
  std::optional<std::vector<MovableObjectDescriptor>> movable_objects;
  std::optional<std::vector<std::string>> environment_conditions;
  std::optional<double> nominal_duration;
  std::vector<EvaluationCriterion> evaluation_criteria;
  std::string purpose;
};

inline TestCase validate_test_case(const TestCaseDescription& raw) {
  std::vector<Diagnostic> diagnostics;
  auto missing = [&](Errc code, const char* where, const char* what) {
    diagnostics.push_back({code, where, what});
  };

  if (raw.id.empty()) missing(Errc::kMissingField, "id", "test case id is empty");
  if (!raw.road_level || raw.road_level->empty()) {
    missing(Errc::kMissingLayer, "scenario.road_level", "road level must be described");
  }
  if (!raw.traffic_infrastructure) {
    missing(Errc::kMissingLayer, "scenario.traffic_infrastructure", "layer is absent");
  }
  if (!raw.temporary_manipulation) {
    missing(Errc::kMissingLayer, "scenario.temporary_manipulation", "layer is absent");
  }
  if (!raw.movable_objects) {
    missing(Errc::kMissingLayer, "scenario.movable_objects", "layer is absent");
  }
  if (!raw.environment_conditions) {
    missing(Errc::kMissingLayer, "scenario.environment_conditions", "layer is absent");
  }
  if (!raw.nominal_duration) {
    missing(Errc::kMissingField, "scenario.nominal_duration", "duration is absent");
  } else if (!std::isfinite(*raw.nominal_duration) || *raw.nominal_duration <= 0.0) {
    missing(Errc::kNonPositiveDuration, "scenario.nominal_duration", "duration must be > 0");
  }
  if (raw.movable_objects) {
    for (std::size_t i = 0; i < raw.movable_objects->size(); ++i) {
      if ((*raw.movable_objects)[i].count < 1) {
        diagnostics.push_back({Errc::kMissingField,
                               "scenario.movable_objects[" + std::to_string(i) + "].count",
                               "count must be >= 1"});
      }
    }
  }
  if (raw.evaluation_criteria.empty()) {
    missing(Errc::kNoEvaluationCriteria, "evaluation_criteria", "at least one is required");
  }
  if (raw.purpose.empty()) missing(Errc::kMissingField, "purpose", "purpose tag is empty");

  if (!diagnostics.empty()) {
    throw Error(Errc::kValidationError, "test case '" + raw.id + "' is invalid",
                std::move(diagnostics));
  }
  return TestCase{raw.id,
                  ScenarioLayers{*raw.road_level, *raw.traffic_infrastructure,
                                 *raw.temporary_manipulation, *raw.movable_objects,
                                 *raw.environment_conditions, *raw.nominal_duration},
                  raw.evaluation_criteria, raw.purpose};
}

// ---------------------------------------------------------------------------
// Requirement profiles
// ---------------------------------------------------------------------------

/// Stage constraints keyed by canonical id or "parent/sub" pattern.
using StageOverrides = std::map<std::string, StageSet>;

struct DimensionRequirement {
  StageSet admissible = StageSet::all();
  bool required = false;

  bool operator==(const DimensionRequirement&) const = default;
};

/// Per-dimension requirements of one test case. Holds an entry for each
/// canonical dimension plus one per "parent/sub" pattern that was mentioned.
struct RequirementProfile {
  std::map<std::string, DimensionRequirement> entries;
  std::string purpose;
  double nominal_duration = 0.0;

  /// The requirement governing a bench leaf: its pattern entry if present,
  /// else its canonical dimension's entry.
  const DimensionRequirement& for_leaf(const DimensionNode& leaf) const {
    if (leaf.parent) {
      auto it = entries.find(*leaf.parent + "/" + leaf.id);
      if (it != entries.end()) return it->second;
    }
    return entries.at(leaf.canonical_id());
  }

  std::set<std::string> required_dimensions() const {
    std::set<std::string> out;
    for (const auto& [key, req] : entries) {
      if (req.required) out.insert(key);
    }
    return out;
  }

  bool operator==(const RequirementProfile&) const = default;
};

/// Splits "parent/sub" into its parts; a bare canonical id yields no sub.
struct DimensionPattern {
  std::string canonical;
  std::optional<std::string> sub;
};

inline std::optional<DimensionPattern> parse_dimension_pattern(std::string_view key) {
  const auto slash = key.find('/');
  const std::string_view head = key.substr(0, slash);
  if (find_canonical(head) == nullptr) return std::nullopt;
  if (slash == std::string_view::npos) return DimensionPattern{std::string(head), std::nullopt};
  const std::string_view tail = key.substr(slash + 1);
  if (tail.empty() || tail.find('/') != std::string_view::npos) return std::nullopt;
  return DimensionPattern{std::string(head), std::string(tail)};
}

/// Maps a test case onto per-dimension requirements.
///
/// Layers 1-3 obligate scenery, layer 4 movable objects (when any are
/// listed), layer 5 environmental conditions (when any are listed). Test
/// object, vehicle dynamics, driver/user behavior and residual vehicle are
/// always required. Other dimensions become required when a criterion
/// references them or an override constrains them. Admissible stages start
/// as all three and are only narrowed by overrides; pattern entries are
/// intersected with their canonical parent.
inline RequirementProfile derive_requirement_profile(const TestCase& tc,
                                                     const StageOverrides& overrides = {}) {
  RequirementProfile profile;
  profile.purpose = tc.purpose;
  profile.nominal_duration = tc.scenario.nominal_duration;
  for (const auto& c : kCanonicalDimensions) profile.entries[std::string(c.id)] = {};

  auto require = [&](std::string_view id) { profile.entries[std::string(id)].required = true; };
  require(dim::kTestObject);
  require(dim::kDriverUserBehavior);
  require(dim::kVehicleDynamics);
  require(dim::kResidualVehicle);
  require(dim::kScenery);
  if (!tc.scenario.movable_objects.empty()) require(dim::kMovableObjects);
  if (!tc.scenario.environment_conditions.empty()) require(dim::kEnvironmentalConditions);

  std::vector<Diagnostic> diagnostics;
  std::vector<std::pair<std::string, DimensionPattern>> patterns;
  auto note_key = [&](const std::string& key, const std::string& loc) {
    auto pattern = parse_dimension_pattern(key);
    if (!pattern) {
      diagnostics.push_back({Errc::kUnknownDimension, loc, "'" + key + "' is not a dimension"});
      return;
    }
    if (pattern->sub) patterns.emplace_back(key, *pattern);
  };
  for (std::size_t i = 0; i < tc.evaluation_criteria.size(); ++i) {
    for (const auto& ref : tc.evaluation_criteria[i].references) {
      note_key(ref, "evaluation_criteria[" + std::to_string(i) + "].references");
    }
  }
  for (const auto& [key, stages] : overrides) note_key(key, "overrides." + key);
  if (!diagnostics.empty()) {
    const Errc code = diagnostics.front().code;
    throw Error(code, "test case '" + tc.id + "' names unknown dimensions",
                std::move(diagnostics));
  }

  for (const auto& crit : tc.evaluation_criteria) {
    for (const auto& ref : crit.references) require(ref);
  }
  // Canonical overrides first so that pattern entries see the final parent.
  for (const auto& [key, stages] : overrides) {
    if (key.find('/') != std::string::npos) continue;
    auto& entry = profile.entries[key];
    entry.admissible = entry.admissible & stages;
    entry.required = true;
  }
  for (const auto& [key, pattern] : patterns) {
    auto& entry = profile.entries[key];
    entry.admissible = profile.entries.at(pattern.canonical).admissible;
    entry.required = true;
  }
  for (const auto& [key, stages] : overrides) {
    if (key.find('/') == std::string::npos) continue;
    auto& entry = profile.entries[key];
    entry.admissible = entry.admissible & stages;
  }

  for (const auto& [key, req] : profile.entries) {
    if (req.required && req.admissible.empty()) {
      diagnostics.push_back({Errc::kContradictoryOverride, "overrides." + key,
                             "no stage remains admissible for a required dimension"});
    }
  }
  if (!diagnostics.empty()) {
    throw Error(Errc::kContradictoryOverride, "test case '" + tc.id + "'",
                std::move(diagnostics));
  }
  return profile;
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

struct SuiteEntry {
  TestCase test_case;
  StageOverrides overrides;

  bool operator==(const SuiteEntry&) const = default;
};

using Suite = std::vector<SuiteEntry>;

/// Throws DuplicateId if two entries share an id.
inline void require_unique_ids(const Suite& suite) {
  std::set<std::string_view> seen;
  std::vector<Diagnostic> diagnostics;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    if (!seen.insert(suite[i].test_case.id).second) {
      diagnostics.push_back({Errc::kDuplicateId, "test_cases[" + std::to_string(i) + "].id",
                             "'" + suite[i].test_case.id + "' is not unique"});
    }
  }
  if (!diagnostics.empty()) {
    throw Error(Errc::kDuplicateId, "suite has duplicate test case ids", std::move(diagnostics));
  }
}

}  // namespace benchlattice

#endif  // BENCHLATTICE_TESTCASE_HPP_
