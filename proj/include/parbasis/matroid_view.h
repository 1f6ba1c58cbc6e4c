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

#ifndef PARBASIS_MATROID_VIEW_H_
#define PARBASIS_MATROID_VIEW_H_

#include <cstddef>
#include <memory>

#include "parbasis/element_set.h"
#include "parbasis/matroid.h"

namespace parbasis {

// A minor M/C \ D of a base instance. T is independent in the view iff
// T u C is independent in the base; element ids are those of the base.
class MatroidView {
 public:
  MatroidView() = default;
  explicit MatroidView(std::shared_ptr<const MatroidInstance> base);

  const MatroidInstance& base() const { return *base_; }
  const std::shared_ptr<const MatroidInstance>& base_ptr() const { return base_; }
  std::size_t ground_size() const { return base_->ground_size(); }

  const ElementSet& contracted() const { return contracted_; }
  const ElementSet& deleted() const { return deleted_; }
  const ElementSet& alive() const { return alive_; }
  std::size_t alive_size() const { return alive_.size(); }

  // Throws DomainError naming the first element of `s` that is not alive.
  void RequireAlive(const ElementSet& s) const;

  // Throws DomainError (c not alive) or ContractError (c u contracted
  // dependent).
  MatroidView Contract(const ElementSet& c) const;
  // Throws DomainError if d is not alive.
  MatroidView Delete(const ElementSet& d) const;
  // M|s: deletes every alive element outside s.
  MatroidView Restrict(const ElementSet& s) const;

  // Direct oracle call without round accounting (tests and validation).
  bool IsIndependentImmediate(const ElementSet& s) const;

  // A fresh state already holding the contracted elements.
  std::unique_ptr<IndependenceState> NewContractedState() const;

  ElementSet EmptySet() const { return ElementSet(ground_size()); }

 private:
  std::shared_ptr<const MatroidInstance> base_;
  ElementSet contracted_;
  ElementSet deleted_;
  ElementSet alive_;
};

// Rank of the view, computed greedily in index order without the ledger.
std::size_t RankGreedy(const MatroidView& view);

// Independent and maximal among the view's alive elements.
bool IsBasis(const MatroidView& view, const ElementSet& b);

}  // namespace parbasis

#endif  // PARBASIS_MATROID_VIEW_H_
