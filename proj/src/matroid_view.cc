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

#include "parbasis/matroid_view.h"

#include <stdexcept>

#include "parbasis/errors.h"

namespace parbasis {

MatroidView::MatroidView(std::shared_ptr<const MatroidInstance> base)
    : base_(std::move(base)),
      contracted_(base_->ground_size()),
      deleted_(base_->ground_size()),
      alive_(ElementSet::Full(base_->ground_size())) {}

void MatroidView::RequireAlive(const ElementSet& s) const {
  if (s.universe() != ground_size()) {
    throw std::invalid_argument("element set universe does not match the view");
  }
  ElementId bad = s.FirstOutside(alive_);
  if (bad != s.universe()) {
    throw DomainError(bad, "element " + std::to_string(bad) +
                               " is not alive in this view");
  }
}

MatroidView MatroidView::Contract(const ElementSet& c) const {
  RequireAlive(c);
  auto state = NewContractedState();
  for (ElementId e : c) {
    if (!state->Add(e)) {
      throw ContractError("cannot contract " + c.ToString() +
                          ": dependent together with the contracted set");
    }
  }
  MatroidView out = *this;
  out.contracted_ |= c;
  out.alive_ -= c;
  return out;
}

MatroidView MatroidView::Delete(const ElementSet& d) const {
  RequireAlive(d);
  MatroidView out = *this;
  out.deleted_ |= d;
  out.alive_ -= d;
  return out;
}

MatroidView MatroidView::Restrict(const ElementSet& s) const {
  return Delete(alive_ - s);
}

bool MatroidView::IsIndependentImmediate(const ElementSet& s) const {
  RequireAlive(s);
  auto state = NewContractedState();
  for (ElementId e : s) {
    if (!state->Add(e)) return false;
  }
  return true;
}

std::unique_ptr<IndependenceState> MatroidView::NewContractedState() const {
  auto state = base_->NewState();
  for (ElementId e : contracted_) state->Add(e);
  return state;
}

std::size_t RankGreedy(const MatroidView& view) {
  auto state = view.NewContractedState();
  std::size_t rank = 0;
  for (ElementId e : view.alive()) {
    if (state->CanAdd(e)) {
      state->Add(e);
      ++rank;
    }
  }
  return rank;
}

bool IsBasis(const MatroidView& view, const ElementSet& b) {
  view.RequireAlive(b);
  auto state = view.NewContractedState();
  for (ElementId e : b) {
    if (!state->Add(e)) return false;
  }
  for (ElementId e : view.alive()) {
    if (b.contains(e)) continue;
    if (state->CanAdd(e)) return false;
  }
  return true;
}

}  // namespace parbasis
