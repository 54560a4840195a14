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

#ifndef BENCHLATTICE_ERROR_HPP_
#define BENCHLATTICE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace benchlattice {

enum class Errc {
  // taxonomy
  kUnknownDimension,
  kElementOnNonLeaf,
  kEmptyLeaf,
  kDuplicateId,
  kAlreadySubstantiated,
  kParentHoldsElements,
  kEmptySubNames,
  kInvalidCharacteristics,
  kMissingField,
  // configuration
  kCombinatorialLimitExceeded,
  kForeignConfiguration,
  // chart
  kInvalidStyle,
  // testcase
  kMissingLayer,
  kNoEvaluationCriteria,
  kNonPositiveDuration,
  kContradictoryOverride,
  // assignment
  kInstanceTooLarge,
  kInvalidBudget,
  // registry
  kSyntaxError,
  kSchemaError,
  kValidationError,
  kIoError,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::kUnknownDimension: return "UnknownDimension";
    case Errc::kElementOnNonLeaf: return "ElementOnNonLeaf";
    case Errc::kEmptyLeaf: return "EmptyLeaf";
    case Errc::kDuplicateId: return "DuplicateId";
    case Errc::kAlreadySubstantiated: return "AlreadySubstantiated";
    case Errc::kParentHoldsElements: return "ParentHoldsElements";
    case Errc::kEmptySubNames: return "EmptySubNames";
    case Errc::kInvalidCharacteristics: return "InvalidCharacteristics";
    case Errc::kMissingField: return "MissingField";
    case Errc::kCombinatorialLimitExceeded: return "CombinatorialLimitExceeded";
    case Errc::kForeignConfiguration: return "ForeignConfiguration";
    case Errc::kInvalidStyle: return "InvalidStyle";
    case Errc::kMissingLayer: return "MissingLayer";
    case Errc::kNoEvaluationCriteria: return "NoEvaluationCriteria";
    case Errc::kNonPositiveDuration: return "NonPositiveDuration";
    case Errc::kContradictoryOverride: return "ContradictoryOverride";
    case Errc::kInstanceTooLarge: return "InstanceTooLarge";
    case Errc::kInvalidBudget: return "InvalidBudget";
    case Errc::kSyntaxError: return "SyntaxError";
    case Errc::kSchemaError: return "SchemaError";
    case Errc::kValidationError: return "ValidationError";
    case Errc::kIoError: return "IoError";
  }
  return "Unknown";
}

/// One problem found while validating an input, with a path-like location
/// such as "benches[0].elements[3].stage".
struct Diagnostic {
  Errc code;
  std::string location;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

inline std::string to_string(const Diagnostic& d) {
  std::string out(errc_name(d.code));
  if (!d.location.empty()) out += " at " + d.location;
  if (!d.message.empty()) out += ": " + d.message;
  return out;
}

/// The single exception type thrown by the library. Validation routines
/// aggregate every problem they find into diagnostics() before throwing.
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(compose(code, message, {})), code_(code) {}

  Error(Errc code, std::string message, std::vector<Diagnostic> diagnostics)
      : std::runtime_error(compose(code, message, diagnostics)),
        code_(code),
        diagnostics_(std::move(diagnostics)) {}

  Errc code() const noexcept { return code_; }
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

  bool has(Errc code) const {
    for (const auto& d : diagnostics_) {
      if (d.code == code) return true;
    }
    return code_ == code;
  }

 private:
  static std::string compose(Errc code, const std::string& message,
                             const std::vector<Diagnostic>& diagnostics) {
    std::string out(errc_name(code));
    if (!message.empty()) out += ": " + message;
    for (const auto& d : diagnostics) out += "\n  " + to_string(d);
    return out;
  }

  Errc code_;
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace benchlattice

#endif  // BENCHLATTICE_ERROR_HPP_
