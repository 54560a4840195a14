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

// Test bench configurations: every composition of a bench's elements.
//
// A configuration selects exactly one element on each exclusive leaf and a
// non-empty subset on each combinable leaf. Configurations are numbered in a
// fixed mixed-radix order: the first leaf is the most significant digit, and
// the choices of a leaf are ordered lexicographically by element declaration
// index (for combinable leaves: {a}, {a,b}, {a,b,c}, {a,c}, {b}, {b,c}, {c}).
// Indices are therefore stable across runs and can be decoded directly.

#ifndef BENCHLATTICE_CONFIGURATION_HPP_
#define BENCHLATTICE_CONFIGURATION_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "benchlattice/error.hpp"
#include "benchlattice/taxonomy.hpp"

namespace benchlattice {

struct LeafSelection {
  std::string leaf;
  std::vector<std::string> element_ids;  // declaration order

  bool operator==(const LeafSelection&) const = default;
};

struct TestBenchConfiguration {
  std::string bench_id;
  std::vector<LeafSelection> selection;  // one entry per leaf, leaf order

  const LeafSelection* find(std::string_view leaf) const {
    for (const auto& s : selection) {
      if (s.leaf == leaf) return &s;
    }
    return nullptr;
  }

  bool operator==(const TestBenchConfiguration&) const = default;
};

enum class TestMethod {
  kSoftwareInTheLoop,
  kHardwareInTheLoop,
  kDriverInTheLoop,
  kVehicleInTheLoop,
  kTestVehicle,
  kUnclassified,
};

constexpr std::string_view to_string(TestMethod method) {
  switch (method) {
    case TestMethod::kSoftwareInTheLoop: return "software-in-the-loop";
    case TestMethod::kHardwareInTheLoop: return "hardware-in-the-loop";
    case TestMethod::kDriverInTheLoop: return "driver-in-the-loop";
    case TestMethod::kVehicleInTheLoop: return "vehicle-in-the-loop";
    case TestMethod::kTestVehicle: return "test-vehicle";
    case TestMethod::kUnclassified: return "unclassified";
  }
  return "unclassified";
}

inline constexpr std::uint64_t kDefaultConfigurationCap = 1'000'000;

/// Returned by count_configurations when the true count does not fit.
inline constexpr std::uint64_t kCountSaturated = std::numeric_limits<std::uint64_t>::max();

namespace detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kCountSaturated / b) return kCountSaturated;
  return a * b;
}

/// Number of choices on a leaf with n elements.
inline std::uint64_t choice_count(bool combinable, std::size_t n) {
  if (!combinable) return n;
  if (n >= 64) return kCountSaturated;
  return (std::uint64_t{1} << n) - 1;
}

/// The rank-th non-empty subset of {0..n-1} in lexicographic order of the
/// ascending index sequences.
inline std::vector<std::size_t> unrank_subset(std::uint64_t rank, std::size_t n) {
  std::vector<std::size_t> out;
  std::size_t lo = 0;
  while (lo < n) {
    bool advanced = false;
    for (std::size_t i = lo; i < n; ++i) {
      // subsets whose smallest member is i: {i} followed by {i} ∪ S, S ⊆ {i+1..n-1}
      const std::uint64_t block = std::uint64_t{1} << (n - 1 - i);
      if (rank < block) {
        out.push_back(i);
        if (rank == 0) return out;
        rank -= 1;
        lo = i + 1;
        advanced = true;
        break;
      }
      rank -= block;
    }
    if (!advanced) break;
  }
  return out;
}

}  // namespace detail

/// Closed-form count; never materializes the product. Saturates at
/// kCountSaturated.
inline std::uint64_t count_configurations(const TestBench& bench) {
  std::uint64_t total = 1;
  for (std::size_t leaf = 0; leaf < bench.leaves().size(); ++leaf) {
    total = detail::saturating_mul(
        total, detail::choice_count(bench.leaves()[leaf].combinable, bench.elements_of(leaf).size()));
  }
  return total;
}

/// Decodes configuration number `index` of the enumeration order.
inline TestBenchConfiguration configuration_at(const TestBench& bench, std::uint64_t index) {
  const auto leaves = bench.leaves();
  std::vector<std::uint64_t> radix(leaves.size());
  for (std::size_t leaf = 0; leaf < leaves.size(); ++leaf) {
    radix[leaf] = detail::choice_count(leaves[leaf].combinable, bench.elements_of(leaf).size());
    if (radix[leaf] == kCountSaturated) {
      throw Error(Errc::kCombinatorialLimitExceeded,
                  "leaf '" + leaves[leaf].id + "' has too many element subsets to index");
    }
  }
  const std::uint64_t total = count_configurations(bench);
  if (total != kCountSaturated && index >= total) {
    throw Error(Errc::kForeignConfiguration, "bench '" + bench.id() + "' has " +
                                                 std::to_string(total) +
                                                 " configurations; index " +
                                                 std::to_string(index) + " is out of range");
  }

  std::vector<std::uint64_t> digits(leaves.size());
  for (std::size_t leaf = leaves.size(); leaf-- > 0;) {
    digits[leaf] = index % radix[leaf];
    index /= radix[leaf];
  }

  TestBenchConfiguration config{bench.id(), {}};
  config.selection.reserve(leaves.size());
  for (std::size_t leaf = 0; leaf < leaves.size(); ++leaf) {
    const auto elements = bench.elements_of(leaf);
    LeafSelection sel{leaves[leaf].id, {}};
    if (leaves[leaf].combinable) {
      for (std::size_t i : detail::unrank_subset(digits[leaf], elements.size())) {
        sel.element_ids.push_back(elements[i].id);
      }
    } else {
      sel.element_ids.push_back(elements[digits[leaf]].id);
    }
    config.selection.push_back(std::move(sel));
  }
  return config;
}

/// Streams configurations in enumeration order without materializing them.
class ConfigurationStream {
 public:
  explicit ConfigurationStream(const TestBench& bench)
      : bench_(&bench), total_(count_configurations(bench)) {}

  std::optional<TestBenchConfiguration> next() {
    if (next_ >= total_) return std::nullopt;
    return configuration_at(*bench_, next_++);
  }

  std::uint64_t position() const { return next_; }
  std::uint64_t size() const { return total_; }

 private:
  const TestBench* bench_;
  std::uint64_t total_;
  std::uint64_t next_ = 0;
};

/// All configurations in enumeration order. Throws
/// CombinatorialLimitExceeded when the count is above `cap`.
inline std::vector<TestBenchConfiguration> enumerate_configurations(
    const TestBench& bench, std::uint64_t cap = kDefaultConfigurationCap) {
  const std::uint64_t total = count_configurations(bench);
  if (total > cap) {
    throw Error(Errc::kCombinatorialLimitExceeded,
                "bench '" + bench.id() + "' has " +
                    (total == kCountSaturated ? std::string("more than 2^64")
                                              : std::to_string(total)) +
                    " configurations, above the cap of " + std::to_string(cap) +
                    "; count or stream them instead");
  }
  std::vector<TestBenchConfiguration> out;
  out.reserve(static_cast<std::size_t>(total));
  ConfigurationStream stream(bench);
  while (auto config = stream.next()) out.push_back(std::move(*config));
  return out;
}

/// Throws ForeignConfiguration unless `config` is a configuration of `bench`.
inline void require_configuration_of(const TestBenchConfiguration& config,
                                     const TestBench& bench) {
  auto foreign = [&](const std::string& why) {
    throw Error(Errc::kForeignConfiguration,
                "configuration does not belong to bench '" + bench.id() + "': " + why);
  };
  if (config.bench_id != bench.id()) foreign("bench id is '" + config.bench_id + "'");
  const auto leaves = bench.leaves();
  if (config.selection.size() != leaves.size()) foreign("leaf count differs");
  for (std::size_t leaf = 0; leaf < leaves.size(); ++leaf) {
    const auto& sel = config.selection[leaf];
    if (sel.leaf != leaves[leaf].id) foreign("unexpected leaf '" + sel.leaf + "'");
    if (sel.element_ids.empty()) foreign("leaf '" + sel.leaf + "' selects nothing");
    if (!leaves[leaf].combinable && sel.element_ids.size() != 1) {
      foreign("leaf '" + sel.leaf + "' is exclusive but selects several elements");
    }
    std::set<std::string_view> seen;
    for (const auto& id : sel.element_ids) {
      const Element* e = bench.find_element(id);
      if (e == nullptr || e->dimension != sel.leaf) {
        foreign("element '" + id + "' is not on leaf '" + sel.leaf + "'");
      }
      if (!seen.insert(id).second) foreign("element '" + id + "' selected twice");
    }
  }
}

/// Names the conventional test method of a configuration from its stage
/// pattern. First matching rule wins; anything else is kUnclassified.
inline TestMethod classify_test_method(const TestBenchConfiguration& config,
                                       const TestBench& bench) {
  require_configuration_of(config, bench);

  struct Selected {
    std::string_view canonical;
    Stage stage;
  };
  std::vector<Selected> selected;
  for (std::size_t leaf = 0; leaf < bench.leaves().size(); ++leaf) {
    const auto& canonical = bench.leaves()[leaf].canonical_id();
    for (const auto& id : config.selection[leaf].element_ids) {
      selected.push_back({canonical, bench.find_element(id)->stage});
    }
  }

  auto all_of = [&](auto&& pred) {
    return std::all_of(selected.begin(), selected.end(), pred);
  };
  auto only_real_in = [&](std::string_view canonical) {
    return all_of([&](const Selected& s) {
      return s.canonical == canonical ? s.stage == Stage::kReal : s.stage == Stage::kSimulated;
    });
  };
  auto all_real_in = [&](std::string_view canonical) {
    return all_of(
        [&](const Selected& s) { return s.canonical != canonical || s.stage == Stage::kReal; });
  };

  if (all_of([](const Selected& s) { return s.stage == Stage::kReal; })) {
    return TestMethod::kTestVehicle;
  }
  if (all_of([](const Selected& s) { return s.stage == Stage::kSimulated; })) {
    return TestMethod::kSoftwareInTheLoop;
  }
  if (only_real_in(dim::kTestObject)) return TestMethod::kHardwareInTheLoop;
  if (only_real_in(dim::kDriverUserBehavior)) return TestMethod::kDriverInTheLoop;

  const bool vehicle_real = all_real_in(dim::kTestObject) && all_real_in(dim::kVehicleDynamics) &&
                            all_real_in(dim::kResidualVehicle);
  const bool virtual_objects =
      std::any_of(selected.begin(), selected.end(), [](const Selected& s) {
        return s.canonical == dim::kMovableObjects && s.stage != Stage::kReal;
      });
  if (vehicle_real && virtual_objects) return TestMethod::kVehicleInTheLoop;
  return TestMethod::kUnclassified;
}

}  // namespace benchlattice

#endif  // BENCHLATTICE_CONFIGURATION_HPP_
