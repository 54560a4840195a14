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


#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "benchlattice/configuration.hpp"
#include "test_support.hpp"

namespace benchlattice {
namespace {

using testing::load_single;
using testing::make_element;
using testing::uniform_description;

TEST(EnumerateTest, SilFixtureHasTwoConfigurations) {
  const TestBench bench = load_single("sil.bench.json");
  EXPECT_EQ(count_configurations(bench), 2u);
  const auto configs = enumerate_configurations(bench);
  ASSERT_EQ(configs.size(), 2u);
  EXPECT_EQ(configs[0].find("vehicle-dynamics")->element_ids,
            std::vector<std::string>{"sim-single-track"});
  EXPECT_EQ(configs[1].find("vehicle-dynamics")->element_ids,
            std::vector<std::string>{"sim-double-track"});
  for (const auto& c : configs) {
    EXPECT_EQ(c.bench_id, "sil");
    EXPECT_EQ(c.selection.size(), 11u);
  }
}

TEST(EnumerateTest, TestVehicleHasOneConfiguration) {
  const TestBench bench = load_single("test_vehicle.bench.json");
  EXPECT_EQ(count_configurations(bench), 1u);
  EXPECT_EQ(enumerate_configurations(bench).size(), 1u);
}

TEST(EnumerateTest, CombinableMovableObjectsYieldSevenConfigurations) {
  const TestBench bench = load_single("vil.bench.json");
  const auto configs = enumerate_configurations(bench);
  ASSERT_EQ(configs.size(), 7u);
  std::set<std::vector<std::string>> subsets;
  for (const auto& c : configs) subsets.insert(c.find("movable-objects")->element_ids);
  EXPECT_EQ(subsets.size(), 7u);
}

TEST(EnumerateTest, SubsetsFollowLexicographicIndexOrder) {
  const std::vector<std::vector<std::size_t>> expected{{0}, {0, 1}, {0, 1, 2}, {0, 2},
                                                        {1}, {1, 2},    {2}};
  for (std::uint64_t r = 0; r < expected.size(); ++r) {
    EXPECT_EQ(detail::unrank_subset(r, 3), expected[r]) << r;
  }
}

TEST(EnumerateTest, FirstLeafIsMostSignificant) {
  auto raw = uniform_description("b", Stage::kSimulated);
  raw.elements.push_back(make_element("to-2", "test-object", Stage::kReal));
  raw.elements.push_back(make_element("rv-2", "residual-vehicle", Stage::kReal));
  const TestBench bench = validate_bench(raw);
  const auto configs = enumerate_configurations(bench);
  ASSERT_EQ(configs.size(), 4u);
  EXPECT_EQ(configs[1].find("test-object")->element_ids[0], "b-test-object");
  EXPECT_EQ(configs[1].find("residual-vehicle")->element_ids[0], "rv-2");
  EXPECT_EQ(configs[2].find("test-object")->element_ids[0], "to-2");
}

TEST(EnumerateTest, CapIsEnforcedButCountingStillWorks) {
  auto raw = uniform_description("big", Stage::kSimulated);
  for (const auto& c : kCanonicalDimensions) {
    for (int k = 0; k < 4; ++k) {
      raw.elements.push_back(
          make_element(std::string(c.id) + std::to_string(k), std::string(c.id), Stage::kReal));
    }
  }
  const TestBench bench = validate_bench(raw);
  // 5^9 exclusive leaves times 2^5-1 subsets on movable objects.
  std::uint64_t expected = 31;
  for (int i = 0; i < 9; ++i) expected *= 5;
  EXPECT_EQ(count_configurations(bench), expected);
  try {
    enumerate_configurations(bench, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kCombinatorialLimitExceeded);
  }
  ConfigurationStream stream(bench);
  EXPECT_EQ(stream.size(), expected);
  EXPECT_TRUE(stream.next().has_value());
  EXPECT_EQ(configuration_at(bench, expected - 1).selection.size(), 10u);
}

TEST(EnumerateTest, CountSaturatesInsteadOfOverflowing) {
  BenchDescription raw = uniform_description("huge", Stage::kSimulated);
  raw.combinable["scenery"] = true;
  for (int k = 0; k < 70; ++k) {
    raw.elements.push_back(make_element("s" + std::to_string(k), "scenery", Stage::kSimulated));
  }
  EXPECT_EQ(count_configurations(validate_bench(raw)), kCountSaturated);
}

TEST(EnumerateTest, OutOfRangeIndexIsForeign) {
  const TestBench bench = load_single("sil.bench.json");
  try {
    configuration_at(bench, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kForeignConfiguration);
  }
}

// Completeness and soundness against a bitmask/product oracle, plus the
// documented order, over random benches.
TEST(EnumeratePropertyTest, MatchesBruteForceOracle) {
  std::mt19937_64 rng(11);
  int checked = 0;
  while (checked < 150) {
    const auto raw = testing::random_description(rng, "r" + std::to_string(checked));
    const TestBench bench = validate_bench(raw);
    if (count_configurations(bench) > 2000) continue;
    ++checked;
    const auto configs = enumerate_configurations(bench);
    const auto oracle = testing::brute_force_selections(bench);
    ASSERT_EQ(configs.size(), oracle.size());
    ASSERT_EQ(count_configurations(bench), oracle.size());

    std::vector<testing::IndexSelection> produced;
    for (const auto& c : configs) {
      require_configuration_of(c, bench);
      produced.push_back(testing::to_indices(c, bench));
    }
    // Lexicographic over (leaf 0 indices, leaf 1 indices, ...) is exactly
    // std::vector's ordering of IndexSelection.
    EXPECT_TRUE(std::is_sorted(produced.begin(), produced.end()));
    EXPECT_EQ(std::set(produced.begin(), produced.end()).size(), produced.size());
    EXPECT_EQ(std::set(produced.begin(), produced.end()),
              std::set(oracle.begin(), oracle.end()));
  }
}

TEST(ClassifyTest, FixturesClassifyAsExpected) {
  const TestBench sil = load_single("sil.bench.json");
  for (const auto& c : enumerate_configurations(sil)) {
    EXPECT_EQ(classify_test_method(c, sil), TestMethod::kSoftwareInTheLoop);
  }
  const TestBench tv = load_single("test_vehicle.bench.json");
  EXPECT_EQ(classify_test_method(configuration_at(tv, 0), tv), TestMethod::kTestVehicle);
  EXPECT_EQ(to_string(TestMethod::kTestVehicle), "test-vehicle");
  EXPECT_EQ(to_string(TestMethod::kSoftwareInTheLoop), "software-in-the-loop");
}

TestMethod classify_with(Stage base, std::vector<std::pair<std::string, Stage>> changes) {
  auto raw = uniform_description("b", base);
  for (auto& e : raw.elements) {
    for (const auto& [dimension, stage] : changes) {
      if (e.dimension == dimension) e.stage = stage;
    }
  }
  const TestBench bench = validate_bench(raw);
  return classify_test_method(configuration_at(bench, 0), bench);
}

TEST(ClassifyTest, StagePatternRules) {
  EXPECT_EQ(classify_with(Stage::kSimulated, {{"test-object", Stage::kReal}}),
            TestMethod::kHardwareInTheLoop);
  EXPECT_EQ(classify_with(Stage::kSimulated, {{"driver-user-behavior", Stage::kReal}}),
            TestMethod::kDriverInTheLoop);
  EXPECT_EQ(classify_with(Stage::kReal, {{"movable-objects", Stage::kEmulated}}),
            TestMethod::kVehicleInTheLoop);
  EXPECT_EQ(classify_with(Stage::kReal, {{"movable-objects", Stage::kSimulated},
                                         {"scenery", Stage::kSimulated}}),
            TestMethod::kVehicleInTheLoop);
  EXPECT_EQ(classify_with(Stage::kSimulated, {{"environment-sensor-system", Stage::kReal}}),
            TestMethod::kUnclassified);
  EXPECT_EQ(classify_with(Stage::kSimulated, {{"test-object", Stage::kEmulated}}),
            TestMethod::kUnclassified);
  // Real movable objects with a real vehicle are only a test vehicle if all else is real.
  EXPECT_EQ(classify_with(Stage::kReal, {{"scenery", Stage::kSimulated}}),
            TestMethod::kUnclassified);
}

TEST(ClassifyTest, RealSensorSubDimensionIsUnclassified) {
  const TestBench sil = load_single("sil.bench.json");
  auto raw = describe(sil);
  for (auto& e : raw.elements) {
    if (e.dimension == "camera") e.stage = Stage::kReal;
  }
  const TestBench bench = validate_bench(raw);
  EXPECT_EQ(classify_test_method(configuration_at(bench, 0), bench), TestMethod::kUnclassified);
}

TEST(ClassifyTest, ForeignConfigurationIsRejected) {
  const TestBench sil = load_single("sil.bench.json");
  const TestBench tv = load_single("test_vehicle.bench.json");
  auto config = configuration_at(sil, 0);
  EXPECT_THROW(classify_test_method(config, tv), Error);
  config.bench_id = "test-vehicle";
  try {
    classify_test_method(config, tv);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kForeignConfiguration);
  }
  auto doubled = configuration_at(sil, 0);
  doubled.selection[2].element_ids.push_back("sim-double-track");
  EXPECT_THROW(require_configuration_of(doubled, sil), Error);
}

}  // namespace
}  // namespace benchlattice
