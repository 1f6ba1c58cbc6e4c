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

// Progress events reported by the solvers, so callers (and tests) can audit
// every contraction and deletion against the view it was applied to.

#ifndef PARBASIS_TRACE_H_
#define PARBASIS_TRACE_H_

#include <functional>
#include <string>
#include <utility>

#include "parbasis/element_set.h"
#include "parbasis/matroid_view.h"

namespace parbasis {

struct StepEvent {
  std::string source;  // e.g. "kuw_round", "remove_small_circuits"
  MatroidView before;
  ElementSet contracted;
  ElementSet deleted;
};

using StepObserver = std::function<void(const StepEvent&)>;

inline void Notify(const StepObserver& observer, std::string source,
                   const MatroidView& before, const ElementSet& contracted,
                   const ElementSet& deleted) {
  if (observer) observer(StepEvent{std::move(source), before, contracted, deleted});
}

}  // namespace parbasis

#endif  // PARBASIS_TRACE_H_
