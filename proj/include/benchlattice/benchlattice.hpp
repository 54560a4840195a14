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

#ifndef BENCHLATTICE_BENCHLATTICE_HPP_
#define BENCHLATTICE_BENCHLATTICE_HPP_

#include "benchlattice/assignment.hpp"
#include "benchlattice/chart.hpp"
#include "benchlattice/configuration.hpp"
#include "benchlattice/error.hpp"
#include "benchlattice/registry.hpp"
#include "benchlattice/taxonomy.hpp"
#include "benchlattice/testcase.hpp"

#endif  // BENCHLATTICE_BENCHLATTICE_HPP_
