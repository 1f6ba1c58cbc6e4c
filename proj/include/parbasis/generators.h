// Copyright 2026 The Authors.
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

// Seeded instance families for tests and benchmarks.

#ifndef PARBASIS_GENERATORS_H_
#define PARBASIS_GENERATORS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "parbasis/matroid.h"

namespace parbasis {

// m parts of size m^2 (n = m^3) with budgets m, 2m, ..., m*m; elements are
// assigned to parts uniformly at random.
std::shared_ptr<const PartitionMatroid> GenerateKuwHard(std::size_t m,
                                                        std::uint64_t seed);

// How random-partition draws budgets for a part of size s.
enum class BudgetLaw {
  kUniform,      // uniform in [1, s]
  kWithZero,     // uniform in [0, s]
  kSmall,        // uniform in [1, min(s, 4)]
};

// `parts` non-empty parts covering {0..n-1}; parts <= n.
std::shared_ptr<const PartitionMatroid> GenerateRandomPartition(
    std::size_t n, std::size_t parts, BudgetLaw law, std::uint64_t seed);

// `edges` edges with endpoints drawn uniformly among distinct vertex pairs
// (parallel edges allowed, loops only when `allow_loops`).
std::shared_ptr<const GraphicMatroid> GenerateRandomGraph(
    std::size_t vertices, std::size_t edges, bool allow_loops,
    std::uint64_t seed);

// r x n matrix over GF(p) with uniform entries.
std::shared_ptr<const LinearMatroid> GenerateRandomLinear(std::size_t n,
                                                          std::size_t r,
                                                          std::uint32_t p,
                                                          std::uint64_t seed);

std::shared_ptr<const UniformMatroid> GenerateUniform(std::size_t n,
                                                      std::size_t r);

// A family name plus `key=value` parameters, written `name:k=v,k=v`.
struct FamilySpec {
  std::string name;
  std::map<std::string, std::string> params;

  // Throws std::invalid_argument on malformed text.
  static FamilySpec Parse(const std::string& text);
  std::string ToString() const;
};

// Known names: kuw-hard, random-partition, random-graph, random-linear,
// uniform, direct-sum. `n` is the ground-set size (for kuw-hard it must be a
// cube m^3); parameters refine the family. Throws std::invalid_argument on
// unknown families or invalid parameters.
std::shared_ptr<const MatroidInstance> GenerateInstance(const FamilySpec& spec,
                                                        std::size_t n,
                                                        std::uint64_t seed);

// Every family name accepted by GenerateInstance.
const std::vector<std::string>& KnownFamilies();

}  // namespace parbasis

#endif  // PARBASIS_GENERATORS_H_
