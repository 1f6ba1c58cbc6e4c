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

// Basis finding for partition matroids in O~(n^{1/3}) rounds, using only the
// independence oracle (the hidden parts and budgets are never consulted).
//
// Adding elements in a random order until the first dependence pins down one
// part: the first dependent prefix exceeds exactly one budget. Many random
// orders in parallel recover every part that is likely to cause a dependence;
// those parts are removed together, and later dependences appear later.

#ifndef PARBASIS_PARTITION_SOLVER_H_
#define PARBASIS_PARTITION_SOLVER_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "parbasis/element_set.h"
#include "parbasis/matroid_view.h"
#include "parbasis/query_session.h"
#include "parbasis/random.h"
#include "parbasis/trace.h"

namespace parbasis {

struct RecoveredPart {
  ElementSet members;
  std::size_t budget = 0;
};

struct PartitionConfig {
  // Random orders per iteration; 0 means max(64, 4 n ln n).
  std::size_t samples = 0;
  // Length of the contraction prefix as a fraction of the alive size.
  double contract_fraction = 1.0 / 8;
  // Parts of budget <= this are removed by exhaustive small-subset queries.
  std::size_t small_part_threshold = 2;
  // Constant C of the round cap C * n^{1/3} * log2 n.
  double round_cap_c = 6.0;
  StepObserver observer;

  std::size_t SamplesFor(std::size_t n) const;
  double RoundCap(std::size_t n) const;
};

// Recovers the part containing the first dependence along `order` (a
// permutation of the alive set) in two rounds. nullopt when the whole alive
// set is independent. Requires every part to have budget >= 1.
std::optional<RecoveredPart> RecoverSinglePart(
    const MatroidView& view, std::shared_ptr<LazyPermutation> order,
    QuerySession& session);

struct SmallPartsResult {
  MatroidView view;
  ElementSet basis;  // budget-many members of every removed part
  std::vector<RecoveredPart> parts;
};

// One round of queries on every subset of size <= threshold + 1; removes
// every part of budget <= threshold. Requires threshold >= 1.
SmallPartsResult RemoveSmallParts(const MatroidView& view,
                                  QuerySession& session, std::size_t threshold,
                                  const StepObserver& observer = {});

struct MultiplePartsResult {
  MatroidView view;
  ElementSet basis;
  // True when an independent prefix was contracted and the call returned
  // early; false when the alive set was exhausted.
  bool contracted = false;
  // S_1..S_k: unions of the parts recovered per iteration.
  std::vector<ElementSet> recovered_sets;
};

MultiplePartsResult RecoverMultipleParts(const MatroidView& view,
                                         QuerySession& session,
                                         const PartitionConfig& cfg);

struct PartitionSolveStats {
  std::size_t calls = 0;       // RecoverMultipleParts invocations
  std::size_t iterations = 0;  // total while-iterations k over all calls
};

ElementSet PartitionFindBasis(const MatroidView& view, QuerySession& session,
                              const PartitionConfig& cfg,
                              PartitionSolveStats* stats = nullptr);

}  // namespace parbasis

#endif  // PARBASIS_PARTITION_SOLVER_H_
