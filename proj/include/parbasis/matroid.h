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

// Concrete matroids answering independence queries. Instances are immutable
// after construction and may be shared between views and threads.

#ifndef PARBASIS_MATROID_H_
#define PARBASIS_MATROID_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "parbasis/element_set.h"

namespace parbasis {

enum class MatroidKind { kUniform, kPartition, kGraphic, kLinear, kDirectSum };

std::string KindName(MatroidKind kind);

// Incrementally grown set with an independence verdict. Once an added element
// makes the set dependent the state stays dependent.
class IndependenceState {
 public:
  virtual ~IndependenceState() = default;

  virtual std::unique_ptr<IndependenceState> Clone() const = 0;
  // True iff the state is independent and stays so with `e` added.
  virtual bool CanAdd(ElementId e) const = 0;
  // Adds `e`; returns whether the state is still independent.
  bool Add(ElementId e) {
    if (!independent_) return false;
    if (!CanAdd(e)) {
      independent_ = false;
      return false;
    }
    Commit(e);
    return true;
  }
  // True iff the state plus all of `extra` is independent. Does not mutate.
  virtual bool CanExtend(std::span<const ElementId> extra) const;

  bool independent() const { return independent_; }

 protected:
  // Adds an element already known to keep the state independent.
  virtual void Commit(ElementId e) = 0;
  void MarkDependent() { independent_ = false; }

 private:
  bool independent_ = true;
};

class MatroidInstance {
 public:
  explicit MatroidInstance(std::size_t ground_size) : ground_size_(ground_size) {}
  virtual ~MatroidInstance() = default;
  MatroidInstance(const MatroidInstance&) = delete;
  MatroidInstance& operator=(const MatroidInstance&) = delete;

  std::size_t ground_size() const { return ground_size_; }
  virtual MatroidKind kind() const = 0;

  virtual std::unique_ptr<IndependenceState> NewState() const = 0;

  bool IsIndependent(std::span<const ElementId> s) const;
  bool IsIndependent(const ElementSet& s) const;

  // out[i] = Ind(base - removals[i] + x), one answer per removal. Each answer
  // is an ordinary independence query; overrides only evaluate them faster
  // when `base` is independent and `base + x` is dependent.
  virtual std::vector<bool> SwapAnswers(std::span<const ElementId> base,
                                        ElementId x,
                                        std::span<const ElementId> removals) const;

 protected:
  std::vector<bool> SwapAnswersGeneric(std::span<const ElementId> base,
                                       ElementId x,
                                       std::span<const ElementId> removals) const;

 private:
  std::size_t ground_size_;
};

// Every set of size <= rank is independent.
class UniformMatroid final : public MatroidInstance {
 public:
  UniformMatroid(std::size_t n, std::size_t rank);
  MatroidKind kind() const override { return MatroidKind::kUniform; }
  std::size_t rank() const { return rank_; }
  std::unique_ptr<IndependenceState> NewState() const override;
  std::vector<bool> SwapAnswers(std::span<const ElementId> base, ElementId x,
                                std::span<const ElementId> removals) const override;

 private:
  std::size_t rank_;
};

// Parts A_i with budgets b_i; S is independent iff |S & A_i| <= b_i for all i.
class PartitionMatroid final : public MatroidInstance {
 public:
  // Throws std::invalid_argument unless the parts are disjoint, cover
  // {0..n-1}, and 0 <= b_i <= |A_i|.
  PartitionMatroid(std::size_t n, std::vector<std::vector<ElementId>> parts,
                   std::vector<std::size_t> budgets);
  MatroidKind kind() const override { return MatroidKind::kPartition; }

  const std::vector<std::vector<ElementId>>& parts() const { return parts_; }
  const std::vector<std::size_t>& budgets() const { return budgets_; }
  std::size_t part_of(ElementId e) const { return part_of_[e]; }
  // sum_i min(b_i, |s & A_i|).
  std::size_t RankOf(const ElementSet& s) const;

  std::unique_ptr<IndependenceState> NewState() const override;
  std::vector<bool> SwapAnswers(std::span<const ElementId> base, ElementId x,
                                std::span<const ElementId> removals) const override;

 private:
  std::vector<std::vector<ElementId>> parts_;
  std::vector<std::size_t> budgets_;
  std::vector<std::uint32_t> part_of_;
};

// Element i is edge (u_i, v_i); independent sets are forests. u == v is a loop.
class GraphicMatroid final : public MatroidInstance {
 public:
  GraphicMatroid(std::size_t vertices,
                 std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);
  MatroidKind kind() const override { return MatroidKind::kGraphic; }
  std::size_t vertices() const { return vertices_; }
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges() const {
    return edges_;
  }
  std::unique_ptr<IndependenceState> NewState() const override;
  std::vector<bool> SwapAnswers(std::span<const ElementId> base, ElementId x,
                                std::span<const ElementId> removals) const override;

 private:
  std::size_t vertices_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
};

// Column i of a rows x n matrix over GF(p); independence is linear
// independence of the chosen columns.
class LinearMatroid final : public MatroidInstance {
 public:
  // Throws unless p is prime and p <= 2^16 and all columns have `rows` entries.
  LinearMatroid(std::uint32_t prime, std::size_t rows,
                std::vector<std::vector<std::uint32_t>> columns);
  MatroidKind kind() const override { return MatroidKind::kLinear; }
  std::uint32_t prime() const { return prime_; }
  std::size_t rows() const { return rows_; }
  const std::vector<std::vector<std::uint32_t>>& columns() const {
    return columns_;
  }
  std::unique_ptr<IndependenceState> NewState() const override;
  std::vector<bool> SwapAnswers(std::span<const ElementId> base, ElementId x,
                                std::span<const ElementId> removals) const override;

 private:
  std::uint32_t prime_;
  std::size_t rows_;
  std::vector<std::vector<std::uint32_t>> columns_;
};

// Disjoint union; the ground set is the concatenation of the children's.
class DirectSumMatroid final : public MatroidInstance {
 public:
  explicit DirectSumMatroid(
      std::vector<std::shared_ptr<const MatroidInstance>> children);
  MatroidKind kind() const override { return MatroidKind::kDirectSum; }
  const std::vector<std::shared_ptr<const MatroidInstance>>& children() const {
    return children_;
  }
  // First global id of each child.
  const std::vector<std::size_t>& offsets() const { return offsets_; }
  std::size_t child_of(ElementId e) const;

  std::unique_ptr<IndependenceState> NewState() const override;
  std::vector<bool> SwapAnswers(std::span<const ElementId> base, ElementId x,
                                std::span<const ElementId> removals) const override;

 private:
  std::vector<std::shared_ptr<const MatroidInstance>> children_;
  std::vector<std::size_t> offsets_;
};

bool IsPrime(std::uint32_t p);

}  // namespace parbasis

#endif  // PARBASIS_MATROID_H_
