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

// The O(sqrt n)-round basis algorithm of Karp, Upfal and Wigderson.
//
// Each round splits the alive elements (in index order) into about sqrt(n)
// consecutive groups and queries every prefix of every group. A group that is
// independent as a whole is contracted; otherwise the first element of each
// group whose prefix turns dependent is spanned by its predecessors and is
// deleted.

#ifndef PARBASIS_KUW_H_
#define PARBASIS_KUW_H_

#include <cstddef>
#include <memory>
#include <vector>

#include "parbasis/element_set.h"
#include "parbasis/matroid_view.h"
#include "parbasis/query_session.h"
#include "parbasis/trace.h"

namespace parbasis {

struct RoundOutcome {
  enum class Kind { kContracted, kDeleted };
  Kind kind = Kind::kDeleted;
  ElementSet elements;
};

// ceil(sqrt(alive)) target group size, balanced so that every group has
// floor(alive/k) or ceil(alive/k) members for k = ceil(alive/target).
std::vector<std::vector<ElementId>> KuwGroups(const ElementSet& alive);

// One KUW solve that can share rounds with others: Submit() enqueues this
// iteration's prefix families, the caller flushes, Absorb() applies the
// outcome. Several runs submitted before one flush cost one round together.
class KuwRun {
 public:
  explicit KuwRun(MatroidView view, StepObserver observer = {});

  bool done() const { return view_.alive_size() == 0; }
  void Submit(QuerySession& session);
  RoundOutcome Absorb();

  const MatroidView& view() const { return view_; }
  // Everything contracted by this run so far.
  const ElementSet& contracted() const { return contracted_; }
  const ElementSet& deleted() const { return deleted_; }

 private:
  MatroidView view_;
  StepObserver observer_;
  ElementSet contracted_;
  ElementSet deleted_;
  std::vector<std::vector<ElementId>> groups_;
  std::vector<std::shared_ptr<const PrefixQueries>> pending_;
};

// One round. Requires a non-empty alive set.
RoundOutcome KuwRound(const MatroidView& view, QuerySession& session);

// A basis of `view`, i.e. the set of contracted elements.
ElementSet KuwFindBasis(const MatroidView& view, QuerySession& session,
                        const StepObserver& observer = {});

}  // namespace parbasis

#endif  // PARBASIS_KUW_H_
