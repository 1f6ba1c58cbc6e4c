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

// Batched independence queries with adaptive-round accounting.
//
// Every query joins the current batch; its answer becomes readable only after
// the next Flush(), and each flush of a non-empty batch is one adaptive round.
// Structured query families (all prefixes of an order, all subsets up to a
// size, ...) are counted query-by-query in the ledger but may be evaluated
// more cleverly than one oracle call per member, and some answers are only
// materialized when read. None of that is observable: the answers are exactly
// those of the individual queries.

#ifndef PARBASIS_QUERY_SESSION_H_
#define PARBASIS_QUERY_SESSION_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "parbasis/element_set.h"
#include "parbasis/matroid_view.h"
#include "parbasis/random.h"

namespace parbasis {

struct QueryTicket {
  std::uint64_t id = 0;
  friend bool operator==(const QueryTicket&, const QueryTicket&) = default;
};

struct RoundRecord {
  std::uint64_t round = 0;
  std::uint64_t batch_size = 0;
  std::uint64_t cumulative_queries = 0;
};

class RoundLedger {
 public:
  std::uint64_t rounds() const { return rounds_; }
  std::uint64_t total_queries() const { return total_queries_; }
  std::uint64_t pending_queries() const { return pending_; }
  const std::vector<RoundRecord>& history() const { return history_; }

  // CSV with header `round,batch_size,cumulative_queries`.
  void WriteCsv(std::ostream& out) const;

 private:
  friend class QuerySession;
  std::uint64_t rounds_ = 0;
  std::uint64_t total_queries_ = 0;
  std::uint64_t pending_ = 0;
  std::vector<RoundRecord> history_;
};

// Base of all submitted query families.
class QueryBlock {
 public:
  virtual ~QueryBlock() = default;
  std::uint64_t query_count() const { return count_; }
  bool ready() const { return ready_; }

 protected:
  QueryBlock(MatroidView view, std::uint64_t count)
      : view_(std::move(view)), count_(count) {}
  // Throws SequencingError until the block's batch has been flushed.
  void RequireReady() const;
  const MatroidView& view() const { return view_; }

 private:
  friend class QuerySession;
  virtual void Evaluate() = 0;

  MatroidView view_;
  std::uint64_t count_;
  bool ready_ = false;
};

// Ind({pi(1..j)}) for j = 1..length.
class PrefixQueries final : public QueryBlock {
 public:
  PrefixQueries(MatroidView view, std::shared_ptr<LazyPermutation> order,
                std::size_t length);

  // Smallest j with {pi(1..j)} dependent (1-based), if any.
  std::optional<std::size_t> FirstDependent() const;
  bool Independent(std::size_t j) const;
  const std::shared_ptr<LazyPermutation>& order() const { return order_; }
  std::size_t length() const { return length_; }

 private:
  void Evaluate() override;

  std::shared_ptr<LazyPermutation> order_;
  std::size_t length_;
  std::optional<std::size_t> first_dependent_;
};

// One FindCircuit round over an order pi of length L: all prefixes
// {pi(1..j)} and all one-removed prefixes {pi(1..j)} - pi(i), i < j. That is
// L + L(L-1)/2 queries.
class CircuitProbe final : public QueryBlock {
 public:
  CircuitProbe(MatroidView view, std::shared_ptr<LazyPermutation> order);

  std::optional<std::size_t> FirstDependent() const;
  // Ind({pi(1..j)} - pi(i)) for 1 <= i < j.
  bool OneRemovedIndependent(std::size_t j, std::size_t i) const;
  // {pi(t)} u {pi(i) : i < t, Ind({pi(1..t)} - pi(i))} for t = FirstDependent.
  // Empty if the whole order is independent.
  const std::vector<ElementId>& Circuit() const;
  const std::shared_ptr<LazyPermutation>& order() const { return order_; }

 private:
  void Evaluate() override;

  std::shared_ptr<LazyPermutation> order_;
  std::optional<std::size_t> first_dependent_;
  std::vector<bool> trigger_row_;
  std::vector<ElementId> circuit_;
};

// Ind(base + x) for every candidate x.
class AugmentQueries final : public QueryBlock {
 public:
  AugmentQueries(MatroidView view, std::vector<ElementId> base,
                 std::vector<ElementId> candidates);

  const std::vector<ElementId>& candidates() const { return candidates_; }
  bool Independent(std::size_t candidate_index) const;

 private:
  void Evaluate() override;

  std::vector<ElementId> base_;
  std::vector<ElementId> candidates_;
  std::vector<bool> answers_;
};

// For j = 1..length: Ind({pi(1..j)}) and Ind({pi(1..j)} + x) for every
// candidate x. That is length * (1 + |candidates|) queries.
class SpanProbe final : public QueryBlock {
 public:
  SpanProbe(MatroidView view, std::shared_ptr<LazyPermutation> order,
            std::size_t length, std::vector<ElementId> candidates);

  const std::vector<ElementId>& candidates() const { return candidates_; }
  // Some prefix {pi(1..j)}, j <= length, is independent while adding
  // candidates[k] to it makes it dependent.
  bool Caught(std::size_t candidate_index) const;
  const std::shared_ptr<LazyPermutation>& order() const { return order_; }
  std::size_t length() const { return length_; }

 private:
  void Evaluate() override;

  std::shared_ptr<LazyPermutation> order_;
  std::size_t length_;
  std::vector<ElementId> candidates_;
  std::vector<bool> caught_;
};

// Ind(S) for every S of size 1..max_size drawn from `ground`. Answers are
// materialized on read.
class SubsetQueries final : public QueryBlock {
 public:
  SubsetQueries(MatroidView view, std::vector<ElementId> ground,
                std::size_t max_size);

  const std::vector<ElementId>& ground() const { return ground_; }
  std::size_t max_size() const { return max_size_; }
  // `subset` must be drawn from ground() with 1 <= size <= max_size(); the
  // empty set is answered as independent without being a query.
  bool Independent(std::span<const ElementId> subset) const;
  // out[i] = Independent(base + candidates[i]) for a common `base` with
  // |base| < max_size(); cheaper than reading each answer separately.
  std::vector<bool> ExtensionAnswers(std::span<const ElementId> base,
                                     std::span<const ElementId> candidates) const;

  // sum_{i=1..k} C(g, i), saturating.
  static std::uint64_t CountFor(std::size_t g, std::size_t k);

 private:
  void Evaluate() override;

  std::vector<ElementId> ground_;
  ElementSet ground_set_;
  std::size_t max_size_;
  std::unique_ptr<IndependenceState> contracted_state_;
};

class QuerySession {
 public:
  // `original_ground_size` fixes the default per-round budget n^4.
  QuerySession(std::size_t original_ground_size, std::uint64_t seed);

  void set_round_budget(std::uint64_t budget) { round_budget_ = budget; }
  std::uint64_t round_budget() const { return round_budget_; }
  // Queries the current batch can still take.
  std::uint64_t budget_left() const {
    return ledger_.pending_ >= round_budget_ ? 0 : round_budget_ - ledger_.pending_;
  }

  // Single query Ind(s) against `view`. Throws DomainError if s is not alive
  // and BudgetError if the batch would exceed the budget.
  QueryTicket Submit(const MatroidView& view, const ElementSet& s);
  // Throws SequencingError before the flush that answers `ticket`.
  bool Answer(QueryTicket ticket) const;

  std::shared_ptr<const PrefixQueries> SubmitPrefixes(
      const MatroidView& view, std::shared_ptr<LazyPermutation> order,
      std::size_t length);
  std::shared_ptr<const CircuitProbe> SubmitCircuitProbe(
      const MatroidView& view, std::shared_ptr<LazyPermutation> order);
  std::shared_ptr<const AugmentQueries> SubmitAugment(
      const MatroidView& view, std::vector<ElementId> base,
      std::vector<ElementId> candidates);
  std::shared_ptr<const SpanProbe> SubmitSpanProbe(
      const MatroidView& view, std::shared_ptr<LazyPermutation> order,
      std::size_t length, std::vector<ElementId> candidates);
  std::shared_ptr<const SubsetQueries> SubmitSubsets(
      const MatroidView& view, std::vector<ElementId> ground,
      std::size_t max_size);

  // Evaluates the pending batch. A non-empty batch costs one round.
  std::vector<std::pair<QueryTicket, bool>> Flush();

  const RoundLedger& ledger() const { return ledger_; }
  Rng& rng() { return rng_; }
  // A uniformly random order of `pool`, seeded from the session generator.
  std::shared_ptr<LazyPermutation> RandomOrder(
      std::shared_ptr<const std::vector<ElementId>> pool);

 private:
  struct PendingSingle {
    MatroidView view;
    ElementSet set;
    QueryTicket ticket;
  };

  void Reserve(std::uint64_t count);
  template <class Block>
  std::shared_ptr<const Block> Enqueue(std::shared_ptr<Block> block);

  std::uint64_t round_budget_;
  RoundLedger ledger_;
  Rng rng_;
  std::uint64_t next_ticket_ = 1;
  std::vector<PendingSingle> pending_singles_;
  std::vector<std::shared_ptr<QueryBlock>> pending_blocks_;
  // answers_[id] = 0 unanswered, 1 dependent, 2 independent.
  std::vector<std::uint8_t> answers_;
};

// How many families of `per_item` queries each the current batch can still
// take, capped at `wanted` and at least 1 (so an impossible request still
// surfaces as a BudgetError).
std::size_t FitToBudget(const QuerySession& session, std::uint64_t per_item,
                        std::size_t wanted);

// Queries charged for one circuit probe over an order of length L.
std::uint64_t CircuitProbeCost(std::size_t length);

}  // namespace parbasis

#endif  // PARBASIS_QUERY_SESSION_H_
