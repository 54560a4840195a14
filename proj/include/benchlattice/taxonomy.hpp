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

// Domain model for classifying test benches: stages, the dimension tree
// (ten canonical functionalities, optionally substantiated one level deep),
// elements with their characteristics, and validated bench values.

#ifndef BENCHLATTICE_TAXONOMY_HPP_
#define BENCHLATTICE_TAXONOMY_HPP_

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "benchlattice/error.hpp"

namespace benchlattice {

// ---------------------------------------------------------------------------
// Stage
// ---------------------------------------------------------------------------

/// Nominal scale. The enumerator order carries no meaning for matching; only
/// chart_index() gives a number, and it is used for chart radii alone.
enum class Stage : std::uint8_t { kSimulated = 0, kEmulated = 1, kReal = 2 };

inline constexpr std::array<Stage, 3> kAllStages{Stage::kSimulated, Stage::kEmulated,
                                                 Stage::kReal};

constexpr int chart_index(Stage stage) { return static_cast<int>(stage) + 1; }

constexpr std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::kSimulated: return "simulated";
    case Stage::kEmulated: return "emulated";
    case Stage::kReal: return "real";
  }
  return "simulated";
}

constexpr std::optional<Stage> parse_stage(std::string_view text) {
  for (Stage s : kAllStages) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

/// Set of stages; the only vocabulary used for stage requirements.
class StageSet {
 public:
  constexpr StageSet() = default;
  constexpr StageSet(std::initializer_list<Stage> stages) {
    for (Stage s : stages) insert(s);
  }

  static constexpr StageSet all() { return {Stage::kSimulated, Stage::kEmulated, Stage::kReal}; }

  constexpr void insert(Stage s) { bits_ |= bit(s); }
  constexpr bool contains(Stage s) const { return (bits_ & bit(s)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const {
    return static_cast<std::size_t>(std::popcount(static_cast<unsigned>(bits_)));
  }
  constexpr bool is_subset_of(StageSet other) const { return (bits_ & ~other.bits_) == 0; }

  constexpr StageSet operator&(StageSet other) const { return from_bits(bits_ & other.bits_); }
  constexpr bool operator==(const StageSet&) const = default;

  std::vector<Stage> stages() const {
    std::vector<Stage> out;
    for (Stage s : kAllStages) {
      if (contains(s)) out.push_back(s);
    }
    return out;
  }

 private:
  static constexpr std::uint8_t bit(Stage s) {
    return static_cast<std::uint8_t>(1U << static_cast<unsigned>(s));
  }
  static constexpr StageSet from_bits(unsigned bits) {
    StageSet out;
    out.bits_ = static_cast<std::uint8_t>(bits & 0x7U);
    return out;
  }

  std::uint8_t bits_ = 0;
};

// ---------------------------------------------------------------------------
// Dimensions
// ---------------------------------------------------------------------------

struct CanonicalDimension {
  std::string_view id;
  std::string_view display_name;
  bool combinable;
};

/// The ten functionalities every bench provides, in spoke order.
inline constexpr std::array<CanonicalDimension, 10> kCanonicalDimensions{{
    {"test-object", "Test object", false},
    {"driver-user-behavior", "Driver / user behavior", false},
    {"vehicle-dynamics", "Vehicle dynamics", false},
    {"environment-sensor-system", "Environment sensor system", false},
    {"scenery", "Scenery", false},
    {"movable-objects", "Movable objects", true},
    {"environmental-conditions", "Environmental conditions", false},
    {"localization-sensor-system", "Localization sensor system", false},
    {"v2x-communication", "V2X communication", false},
    {"residual-vehicle", "Residual vehicle", false},
}};

namespace dim {
inline constexpr std::string_view kTestObject = "test-object";
inline constexpr std::string_view kDriverUserBehavior = "driver-user-behavior";
inline constexpr std::string_view kVehicleDynamics = "vehicle-dynamics";
inline constexpr std::string_view kEnvironmentSensorSystem = "environment-sensor-system";
inline constexpr std::string_view kScenery = "scenery";
inline constexpr std::string_view kMovableObjects = "movable-objects";
inline constexpr std::string_view kEnvironmentalConditions = "environmental-conditions";
inline constexpr std::string_view kLocalizationSensorSystem = "localization-sensor-system";
inline constexpr std::string_view kV2xCommunication = "v2x-communication";
inline constexpr std::string_view kResidualVehicle = "residual-vehicle";
}  // namespace dim

inline const CanonicalDimension* find_canonical(std::string_view id) {
  for (const auto& c : kCanonicalDimensions) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

enum class DimensionKind : std::uint8_t { kCanonical, kSubDimension };

struct DimensionNode {
  std::string id;
  std::string display_name;
  DimensionKind kind = DimensionKind::kCanonical;
  std::optional<std::string> parent;
  bool combinable = false;

  /// Id of the canonical dimension this node refines (itself if canonical).
  const std::string& canonical_id() const { return parent ? *parent : id; }

  bool operator==(const DimensionNode&) const = default;
};

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

struct Characteristics {
  std::set<std::string> validated_for;
  double cost_rate = 0.0;    // currency units per hour of operation
  double time_factor = 1.0;  // multiplier on nominal scenario duration
  double setup_cost = 0.0;   // currency units per configuration run
  std::map<std::string, double> extensions;

  bool operator==(const Characteristics&) const = default;
};

struct Element {
  std::string id;
  std::string display_name;
  std::string dimension;
  Stage stage = Stage::kSimulated;
  Characteristics characteristics;

  bool operator==(const Element&) const = default;
};

// ---------------------------------------------------------------------------
// Bench descriptions and validated benches
// ---------------------------------------------------------------------------

struct Substantiation {
  std::string parent;
  std::vector<std::string> sub_names;

  bool operator==(const Substantiation&) const = default;
};

/// Unvalidated bench as authored: the input of validate_bench and the draft
/// that substantiate_dimension refines.
struct BenchDescription {
  std::string id;
  std::string display_name;
  std::vector<Substantiation> substantiations;
  std::map<std::string, bool> combinable;  // per-dimension overrides
  std::vector<Element> elements;

  bool operator==(const BenchDescription&) const = default;
};

class TestBench;
TestBench validate_bench(const BenchDescription& raw);

/// A validated, immutable bench. Dimensions are stored in canonical order
/// with sub-dimensions following their parent in declaration order; elements
/// are grouped by leaf in leaf order, declaration order within a leaf.
class TestBench {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  const std::string& id() const { return id_; }
  const std::string& display_name() const { return display_name_; }

  std::span<const DimensionNode> dimensions() const { return dimensions_; }
  std::span<const DimensionNode> leaves() const { return leaves_; }
  std::span<const Element> elements() const { return elements_; }
  std::span<const std::string> warnings() const { return warnings_; }

  std::span<const Element> elements_of(std::size_t leaf_index) const {
    return std::span<const Element>(elements_).subspan(
        leaf_offsets_[leaf_index], leaf_offsets_[leaf_index + 1] - leaf_offsets_[leaf_index]);
  }

  std::size_t leaf_index(std::string_view dimension_id) const {
    for (std::size_t i = 0; i < leaves_.size(); ++i) {
      if (leaves_[i].id == dimension_id) return i;
    }
    return npos;
  }

  const DimensionNode* find_dimension(std::string_view id) const {
    for (const auto& d : dimensions_) {
      if (d.id == id) return &d;
    }
    return nullptr;
  }

  const Element* find_element(std::string_view id) const {
    for (const auto& e : elements_) {
      if (e.id == id) return &e;
    }
    return nullptr;
  }

  const std::vector<Substantiation>& substantiations() const { return substantiations_; }
  const std::map<std::string, bool>& combinable_overrides() const { return combinable_; }

  bool operator==(const TestBench&) const = default;

 private:
  friend TestBench validate_bench(const BenchDescription& raw);
  TestBench() = default;

  std::string id_;
  std::string display_name_;
  std::vector<DimensionNode> dimensions_;
  std::vector<DimensionNode> leaves_;
  std::vector<Element> elements_;
  std::vector<std::size_t> leaf_offsets_;  // leaves_.size() + 1 entries
  std::vector<Substantiation> substantiations_;
  std::map<std::string, bool> combinable_;
  std::vector<std::string> warnings_;
};

namespace detail {

inline bool is_canonical_id(std::string_view id) { return find_canonical(id) != nullptr; }

/// Builds the ordered dimension tree of a description, reporting problems
/// with its substantiations and combinable overrides.
inline std::vector<DimensionNode> build_dimension_tree(const BenchDescription& raw,
                                                       std::vector<Diagnostic>& diagnostics,
                                                       std::vector<std::string>& warnings) {
  std::map<std::string, const Substantiation*> by_parent;
  std::set<std::string> sub_ids;
  for (std::size_t i = 0; i < raw.substantiations.size(); ++i) {
    const auto& s = raw.substantiations[i];
    const std::string loc = "substantiations[" + std::to_string(i) + "]";
    if (!is_canonical_id(s.parent)) {
      diagnostics.push_back({Errc::kUnknownDimension, loc + ".parent",
                             "'" + s.parent + "' is not a canonical dimension"});
      continue;
    }
    if (by_parent.contains(s.parent)) {
      diagnostics.push_back({Errc::kAlreadySubstantiated, loc + ".parent",
                             "'" + s.parent + "' is substantiated more than once"});
      continue;
    }
    if (s.sub_names.empty()) {
      diagnostics.push_back({Errc::kEmptySubNames, loc + ".sub_names",
                             "'" + s.parent + "' needs at least one sub-dimension"});
      continue;
    }
    bool ok = true;
    for (std::size_t j = 0; j < s.sub_names.size(); ++j) {
      const auto& name = s.sub_names[j];
      const std::string sub_loc = loc + ".sub_names[" + std::to_string(j) + "]";
      if (name.empty()) {
        diagnostics.push_back({Errc::kMissingField, sub_loc, "empty sub-dimension name"});
        ok = false;
      } else if (is_canonical_id(name) || !sub_ids.insert(name).second) {
        diagnostics.push_back({Errc::kDuplicateId, sub_loc, "'" + name + "' is already in use"});
        ok = false;
      }
    }
    if (!ok) continue;
    by_parent.emplace(s.parent, &s);
    if (s.parent == dim::kTestObject) {
      warnings.push_back("dimension 'test-object' is substantiated");
    }
  }

  for (const auto& [id, flag] : raw.combinable) {
    if (!is_canonical_id(id) && !sub_ids.contains(id)) {
      diagnostics.push_back({Errc::kUnknownDimension, "combinable." + id,
                             "'" + id + "' is not a dimension of this bench"});
    }
  }

  auto combinable_of = [&](std::string_view id, bool fallback) {
    auto it = raw.combinable.find(std::string(id));
    return it != raw.combinable.end() ? it->second : fallback;
  };

  std::vector<DimensionNode> tree;
  for (const auto& c : kCanonicalDimensions) {
    DimensionNode node{std::string(c.id), std::string(c.display_name), DimensionKind::kCanonical,
                       std::nullopt, combinable_of(c.id, c.combinable)};
    const bool parent_combinable = node.combinable;
    tree.push_back(std::move(node));
    auto it = by_parent.find(std::string(c.id));
    if (it == by_parent.end()) continue;
    for (const auto& name : it->second->sub_names) {
      tree.push_back(DimensionNode{name, name, DimensionKind::kSubDimension, std::string(c.id),
                                   combinable_of(name, parent_combinable)});
    }
  }
  return tree;
}

inline bool is_leaf(const std::vector<DimensionNode>& tree, const DimensionNode& node) {
  if (node.kind == DimensionKind::kSubDimension) return true;
  return std::none_of(tree.begin(), tree.end(),
                      [&](const DimensionNode& d) { return d.parent && *d.parent == node.id; });
}

inline std::vector<DimensionNode> leaves_of(const std::vector<DimensionNode>& tree) {
  std::vector<DimensionNode> out;
  for (const auto& d : tree) {
    if (is_leaf(tree, d)) out.push_back(d);
  }
  return out;
}

inline void check_characteristics(const Characteristics& c, const std::string& loc,
                                  std::vector<Diagnostic>& diagnostics) {
  if (!std::isfinite(c.cost_rate) || c.cost_rate < 0.0) {
    diagnostics.push_back({Errc::kInvalidCharacteristics, loc + ".cost_rate", "must be >= 0"});
  }
  if (!std::isfinite(c.time_factor) || c.time_factor <= 0.0) {
    diagnostics.push_back({Errc::kInvalidCharacteristics, loc + ".time_factor", "must be > 0"});
  }
  if (!std::isfinite(c.setup_cost) || c.setup_cost < 0.0) {
    diagnostics.push_back({Errc::kInvalidCharacteristics, loc + ".setup_cost", "must be >= 0"});
  }
}

}  // namespace detail

/// Validates a bench description and returns it in canonical order. Every
/// problem is collected before throwing Error(kValidationError).
inline TestBench validate_bench(const BenchDescription& raw) {
  std::vector<Diagnostic> diagnostics;
  TestBench bench;
  bench.id_ = raw.id;
  bench.display_name_ = raw.display_name;
  if (raw.id.empty()) diagnostics.push_back({Errc::kMissingField, "id", "bench id is empty"});

  bench.dimensions_ = detail::build_dimension_tree(raw, diagnostics, bench.warnings_);
  bench.leaves_ = detail::leaves_of(bench.dimensions_);

  std::vector<std::vector<const Element*>> per_leaf(bench.leaves_.size());
  std::set<std::string> element_ids;
  for (std::size_t i = 0; i < raw.elements.size(); ++i) {
    const auto& e = raw.elements[i];
    const std::string loc = "elements[" + std::to_string(i) + "]";
    if (e.id.empty()) {
      diagnostics.push_back({Errc::kMissingField, loc + ".id", "element id is empty"});
    } else if (!element_ids.insert(e.id).second) {
      diagnostics.push_back({Errc::kDuplicateId, loc + ".id", "'" + e.id + "' is not unique"});
    }
    detail::check_characteristics(e.characteristics, loc + ".characteristics", diagnostics);

    const std::size_t leaf = bench.leaf_index(e.dimension);
    if (leaf != TestBench::npos) {
      per_leaf[leaf].push_back(&e);
    } else if (bench.find_dimension(e.dimension) != nullptr) {
      diagnostics.push_back({Errc::kElementOnNonLeaf, loc + ".dimension",
                             "'" + e.dimension + "' is substantiated; attach '" + e.id +
                                 "' to one of its sub-dimensions"});
    } else {
      diagnostics.push_back(
          {Errc::kUnknownDimension, loc + ".dimension", "'" + e.dimension + "' is unknown"});
    }
  }

  bench.leaf_offsets_.push_back(0);
  for (std::size_t leaf = 0; leaf < bench.leaves_.size(); ++leaf) {
    if (per_leaf[leaf].empty()) {
      diagnostics.push_back({Errc::kEmptyLeaf, "dimensions." + bench.leaves_[leaf].id,
                             "leaf '" + bench.leaves_[leaf].id + "' holds no element"});
    }
    for (const Element* e : per_leaf[leaf]) bench.elements_.push_back(*e);
    bench.leaf_offsets_.push_back(bench.elements_.size());
  }

  if (!diagnostics.empty()) {
    throw Error(Errc::kValidationError, "bench '" + raw.id + "' is invalid",
                std::move(diagnostics));
  }

  // Keep the authored substantiations in canonical parent order so that a
  // re-validated description produces an identical value.
  for (const auto& c : kCanonicalDimensions) {
    for (const auto& s : raw.substantiations) {
      if (s.parent == c.id) bench.substantiations_.push_back(s);
    }
  }
  bench.combinable_ = raw.combinable;
  return bench;
}

/// Inverse of validate_bench: the canonical description of a bench.
inline BenchDescription describe(const TestBench& bench) {
  BenchDescription out;
  out.id = bench.id();
  out.display_name = bench.display_name();
  out.substantiations = bench.substantiations();
  out.combinable = bench.combinable_overrides();
  out.elements.assign(bench.elements().begin(), bench.elements().end());
  return out;
}

/// Refines a canonical leaf of a draft bench into sub-dimensions. The parent
/// must not hold elements yet; the new leaves inherit its combinable flag.
inline BenchDescription substantiate_dimension(const BenchDescription& draft,
                                               std::string_view parent,
                                               const std::vector<std::string>& sub_names) {
  if (!detail::is_canonical_id(parent)) {
    throw Error(Errc::kUnknownDimension, "'" + std::string(parent) + "' is not canonical");
  }
  for (const auto& s : draft.substantiations) {
    if (s.parent == parent) {
      throw Error(Errc::kAlreadySubstantiated,
                  "'" + std::string(parent) + "' is already substantiated");
    }
  }
  for (const auto& e : draft.elements) {
    if (e.dimension == parent) {
      throw Error(Errc::kParentHoldsElements,
                  "'" + std::string(parent) + "' holds element '" + e.id + "'");
    }
  }
  if (sub_names.empty()) {
    throw Error(Errc::kEmptySubNames, "no sub-dimensions given for '" + std::string(parent) + "'");
  }

  BenchDescription out = draft;
  out.substantiations.push_back({std::string(parent), sub_names});
  std::vector<Diagnostic> diagnostics;
  std::vector<std::string> warnings;
  detail::build_dimension_tree(out, diagnostics, warnings);
  if (!diagnostics.empty()) {
    const Errc code = diagnostics.front().code;
    throw Error(code, "cannot substantiate '" + std::string(parent) + "'",
                std::move(diagnostics));
  }
  return out;
}

/// Leaves in spoke order: canonical order, sub-dimensions replacing their
/// parent in declaration order.
inline std::vector<DimensionNode> leaf_dimensions(const TestBench& bench) {
  return {bench.leaves().begin(), bench.leaves().end()};
}

inline std::vector<DimensionNode> leaf_dimensions(const BenchDescription& draft) {
  std::vector<Diagnostic> diagnostics;
  std::vector<std::string> warnings;
  auto tree = detail::build_dimension_tree(draft, diagnostics, warnings);
  if (!diagnostics.empty()) {
    throw Error(Errc::kValidationError, "invalid dimension tree", std::move(diagnostics));
  }
  return detail::leaves_of(tree);
}

}  // namespace benchlattice

#endif  // BENCHLATTICE_TAXONOMY_HPP_
