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

#include "parbasis/kuw.h"

#include <stdexcept>
#include <utility>

namespace parbasis {

std::vector<std::vector<ElementId>> KuwGroups(const ElementSet& alive) {
  std::vector<ElementId> ids = alive.ToVector();
  const std::size_t a = ids.size();
  std::vector<std::vector<ElementId>> groups;
  if (a == 0) return groups;
  std::size_t target = 1;
  while (target * target < a) ++target;
  const std::size_t k = (a + target - 1) / target;
  const std::size_t base = a / k, extra = a % k;
  std::size_t pos = 0;
  for (std::size_t g = 0; g < k; ++g) {
    std::size_t len = base + (g < extra ? 1 : 0);
    groups.emplace_back(ids.begin() + static_cast<std::ptrdiff_t>(pos),
                        ids.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
  }
  return groups;
}

KuwRun::KuwRun(MatroidView view, StepObserver observer)
    : view_(std::move(view)),
      observer_(std::move(observer)),
      contracted_(view_.EmptySet()),
      deleted_(view_.EmptySet()) {}

void KuwRun::Submit(QuerySession& session) {
  if (done()) throw std::logic_error("KuwRun::Submit on a finished run");
  groups_ = KuwGroups(view_.alive());
  pending_.clear();
  for (const auto& g : groups_) {
    pending_.push_back(
        session.SubmitPrefixes(view_, LazyPermutation::Fixed(g), g.size()));
  }
}

RoundOutcome KuwRun::Absorb() {
  RoundOutcome out{RoundOutcome::Kind::kDeleted, view_.EmptySet()};
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    if (!pending_[g]->FirstDependent()) {
      out.kind = RoundOutcome::Kind::kContracted;
      out.elements = ElementSet::Of(view_.ground_size(), groups_[g]);
      break;
    }
  }
  if (out.kind == RoundOutcome::Kind::kDeleted) {
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      out.elements.insert(groups_[g][*pending_[g]->FirstDependent() - 1]);
    }
  }
  pending_.clear();
  const MatroidView before = view_;
  if (out.kind == RoundOutcome::Kind::kContracted) {
    view_ = view_.Contract(out.elements);
    contracted_ |= out.elements;
    Notify(observer_, "kuw_round", before, out.elements, before.EmptySet());
  } else {
    view_ = view_.Delete(out.elements);
    deleted_ |= out.elements;
    Notify(observer_, "kuw_round", before, before.EmptySet(), out.elements);
  }
  return out;
}

RoundOutcome KuwRound(const MatroidView& view, QuerySession& session) {
  if (view.alive_size() == 0) {
    throw std::invalid_argument("kuw round needs a non-empty view");
  }
  KuwRun run(view);
  run.Submit(session);
  session.Flush();
  return run.Absorb();
}

ElementSet KuwFindBasis(const MatroidView& view, QuerySession& session,
                        const StepObserver& observer) {
  KuwRun run(view, observer);
  while (!run.done()) {
    run.Submit(session);
    session.Flush();
    run.Absorb();
  }
  return run.contracted();
}

}  // namespace parbasis
