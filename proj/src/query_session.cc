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

#include "parbasis/query_session.h"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "parbasis/errors.h"

namespace parbasis {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t SaturatingAdd(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

std::uint64_t SaturatingMul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

// Throws DomainError unless `ids` are distinct alive elements of `view`.
void RequireAliveIds(const MatroidView& view, std::span<const ElementId> ids) {
  ElementSet seen(view.ground_size());
  for (ElementId e : ids) {
    if (e >= view.ground_size() || !view.alive().contains(e)) {
      throw DomainError(e, "element " + std::to_string(e) +
                               " is not alive in this view");
    }
    if (seen.contains(e)) {
      throw std::invalid_argument("element " + std::to_string(e) +
                                  " repeated in one query");
    }
    seen.insert(e);
  }
}

}  // namespace

void RoundLedger::WriteCsv(std::ostream& out) const {
  out << "round,batch_size,cumulative_queries\n";
  for (const RoundRecord& r : history_) {
    out << r.round << ',' << r.batch_size << ',' << r.cumulative_queries
        << '\n';
  }
}

void QueryBlock::RequireReady() const {
  if (!ready_) {
    throw SequencingError("query answers read before the batch was flushed");
  }
}

PrefixQueries::PrefixQueries(MatroidView view,
                             std::shared_ptr<LazyPermutation> order,
                             std::size_t length)
    : QueryBlock(std::move(view), length),
      order_(std::move(order)),
      length_(length) {
  if (length_ > order_->size()) {
    throw std::invalid_argument("prefix length exceeds the order");
  }
}

void PrefixQueries::Evaluate() {
  auto state = view().NewContractedState();
  for (std::size_t j = 1; j <= length_; ++j) {
    if (!state->Add(order_->At(j - 1))) {
      first_dependent_ = j;
      return;
    }
  }
}

std::optional<std::size_t> PrefixQueries::FirstDependent() const {
  RequireReady();
  return first_dependent_;
}

bool PrefixQueries::Independent(std::size_t j) const {
  RequireReady();
  if (j == 0 || j > length_) throw std::out_of_range("prefix index");
  return !first_dependent_ || j < *first_dependent_;
}

CircuitProbe::CircuitProbe(MatroidView view,
                           std::shared_ptr<LazyPermutation> order)
    : QueryBlock(std::move(view),
                 SaturatingAdd(order->size(),
                               SaturatingMul(order->size(),
                                             order->size() == 0
                                                 ? 0
                                                 : order->size() - 1) /
                                   2)),
      order_(std::move(order)) {}

void CircuitProbe::Evaluate() {
  const MatroidView& v = view();
  auto state = v.NewContractedState();
  std::size_t t = 0;
  for (std::size_t j = 1; j <= order_->size(); ++j) {
    if (!state->CanAdd(order_->At(j - 1))) {
      t = j;
      break;
    }
    state->Add(order_->At(j - 1));
  }
  if (t == 0) return;
  first_dependent_ = t;
  std::vector<ElementId> prefix = order_->Prefix(t - 1);
  std::vector<ElementId> base = v.contracted().ToVector();
  base.insert(base.end(), prefix.begin(), prefix.end());
  const ElementId trigger = order_->At(t - 1);
  std::vector<bool> row = v.base().SwapAnswers(base, trigger, prefix);
  trigger_row_ = row;
  for (std::size_t i = 0; i + 1 < t; ++i) {
    if (row[i]) circuit_.push_back(prefix[i]);
  }
  circuit_.push_back(trigger);
  std::sort(circuit_.begin(), circuit_.end());
}

std::optional<std::size_t> CircuitProbe::FirstDependent() const {
  RequireReady();
  return first_dependent_;
}

bool CircuitProbe::OneRemovedIndependent(std::size_t j, std::size_t i) const {
  RequireReady();
  if (i == 0 || i >= j || j > order_->size()) {
    throw std::out_of_range("one-removed prefix index");
  }
  if (!first_dependent_ || j < *first_dependent_) return true;
  const std::size_t t = *first_dependent_;
  if (j == t) return trigger_row_[i - 1];
  // j > t: still holds the first circuit unless pi(i) lies on it.
  if (i > t || (i < t && !trigger_row_[i - 1])) return false;
  auto state = view().NewContractedState();
  for (std::size_t k = 1; k <= j; ++k) {
    if (k == i) continue;
    if (!state->Add(order_->At(k - 1))) return false;
  }
  return true;
}

const std::vector<ElementId>& CircuitProbe::Circuit() const {
  RequireReady();
  return circuit_;
}

AugmentQueries::AugmentQueries(MatroidView view, std::vector<ElementId> base,
                               std::vector<ElementId> candidates)
    : QueryBlock(std::move(view), candidates.size()),
      base_(std::move(base)),
      candidates_(std::move(candidates)) {}

void AugmentQueries::Evaluate() {
  auto state = view().NewContractedState();
  bool ok = true;
  for (ElementId e : base_) {
    if (!state->Add(e)) {
      ok = false;
      break;
    }
  }
  answers_.assign(candidates_.size(), false);
  if (!ok) return;
  for (std::size_t k = 0; k < candidates_.size(); ++k) {
    // base + x with x already in base is just base.
    answers_[k] = std::find(base_.begin(), base_.end(), candidates_[k]) !=
                          base_.end() ||
                  state->CanAdd(candidates_[k]);
  }
}

bool AugmentQueries::Independent(std::size_t candidate_index) const {
  RequireReady();
  return answers_.at(candidate_index);
}

SpanProbe::SpanProbe(MatroidView view, std::shared_ptr<LazyPermutation> order,
                     std::size_t length, std::vector<ElementId> candidates)
    : QueryBlock(std::move(view),
                 SaturatingMul(length, SaturatingAdd(candidates.size(), 1))),
      order_(std::move(order)),
      length_(length),
      candidates_(std::move(candidates)) {
  if (length_ > order_->size()) {
    throw std::invalid_argument("prefix length exceeds the order");
  }
}

void SpanProbe::Evaluate() {
  // Spans of independent prefixes are nested, so x is caught by some prefix
  // iff it is caught by the longest independent one.
  caught_.assign(candidates_.size(), false);
  auto state = view().NewContractedState();
  ElementSet prefix = view().EmptySet();
  for (std::size_t j = 1; j <= length_; ++j) {
    const ElementId e = order_->At(j - 1);
    if (!state->CanAdd(e)) break;
    state->Add(e);
    prefix.insert(e);
  }
  if (prefix.empty()) return;
  for (std::size_t k = 0; k < candidates_.size(); ++k) {
    caught_[k] = !prefix.contains(candidates_[k]) && !state->CanAdd(candidates_[k]);
  }
}

bool SpanProbe::Caught(std::size_t candidate_index) const {
  RequireReady();
  return caught_.at(candidate_index);
}

SubsetQueries::SubsetQueries(MatroidView view, std::vector<ElementId> ground,
                             std::size_t max_size)
    : QueryBlock(std::move(view), CountFor(ground.size(), max_size)),
      ground_(std::move(ground)),
      ground_set_(ElementSet::Of(this->view().ground_size(), ground_)),
      max_size_(max_size) {}

std::uint64_t SubsetQueries::CountFor(std::size_t g, std::size_t k) {
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(g, i) at the top of iteration i
  for (std::size_t i = 1; i <= std::min(g, k); ++i) {
    // C(g, i) = C(g, i-1) * (g-i+1) / i, exact in 128 bits.
    unsigned __int128 next =
        static_cast<unsigned __int128>(binom) * (g - i + 1) / i;
    if (next > kSaturated) return kSaturated;
    binom = static_cast<std::uint64_t>(next);
    total = SaturatingAdd(total, binom);
  }
  return total;
}

void SubsetQueries::Evaluate() {
  contracted_state_ = view().NewContractedState();
}

bool SubsetQueries::Independent(std::span<const ElementId> subset) const {
  RequireReady();
  if (subset.size() > max_size_) {
    throw std::out_of_range("subset larger than the submitted family");
  }
  for (ElementId e : subset) {
    if (!ground_set_.contains(e)) {
      throw std::out_of_range("subset member outside the submitted ground");
    }
  }
  return contracted_state_->CanExtend(subset);
}

std::vector<bool> SubsetQueries::ExtensionAnswers(
    std::span<const ElementId> base,
    std::span<const ElementId> candidates) const {
  RequireReady();
  if (base.size() + 1 > max_size_) {
    throw std::out_of_range("extension larger than the submitted family");
  }
  auto in_ground = [&](ElementId e) {
    if (!ground_set_.contains(e)) {
      throw std::out_of_range("subset member outside the submitted ground");
    }
  };
  for (ElementId e : base) in_ground(e);
  std::vector<bool> out(candidates.size(), false);
  auto state = contracted_state_->Clone();
  for (ElementId e : base) {
    if (!state->Add(e)) {
      for (ElementId c : candidates) in_ground(c);
      return out;
    }
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    in_ground(candidates[i]);
    out[i] = std::find(base.begin(), base.end(), candidates[i]) != base.end() ||
             state->CanAdd(candidates[i]);
  }
  return out;
}

QuerySession::QuerySession(std::size_t original_ground_size,
                           std::uint64_t seed)
    : round_budget_(SaturatingMul(
          SaturatingMul(original_ground_size, original_ground_size),
          SaturatingMul(original_ground_size, original_ground_size))),
      rng_(seed) {}

void QuerySession::Reserve(std::uint64_t count) {
  const std::uint64_t attempted = SaturatingAdd(ledger_.pending_, count);
  if (attempted > round_budget_) {
    throw BudgetError(ledger_.rounds_, attempted, round_budget_);
  }
  ledger_.pending_ = attempted;
}

template <class Block>
std::shared_ptr<const Block> QuerySession::Enqueue(
    std::shared_ptr<Block> block) {
  Reserve(block->query_count());
  pending_blocks_.push_back(block);
  return block;
}

QueryTicket QuerySession::Submit(const MatroidView& view, const ElementSet& s) {
  view.RequireAlive(s);
  Reserve(1);
  QueryTicket ticket{next_ticket_++};
  pending_singles_.push_back({view, s, ticket});
  return ticket;
}

bool QuerySession::Answer(QueryTicket ticket) const {
  if (ticket.id >= answers_.size() || answers_[ticket.id] == 0) {
    throw SequencingError("ticket " + std::to_string(ticket.id) +
                          " has not been answered by a flush");
  }
  return answers_[ticket.id] == 2;
}

std::shared_ptr<const PrefixQueries> QuerySession::SubmitPrefixes(
    const MatroidView& view, std::shared_ptr<LazyPermutation> order,
    std::size_t length) {
  if (length > order->size()) {
    throw std::invalid_argument("prefix length exceeds the order");
  }
  RequireAliveIds(view, order->Prefix(length));
  return Enqueue(std::make_shared<PrefixQueries>(view, std::move(order), length));
}

std::shared_ptr<const CircuitProbe> QuerySession::SubmitCircuitProbe(
    const MatroidView& view, std::shared_ptr<LazyPermutation> order) {
  // The order is a permutation of its pool, so checking the pool suffices and
  // leaves the order undrawn.
  RequireAliveIds(view, order->pool());
  return Enqueue(std::make_shared<CircuitProbe>(view, std::move(order)));
}

std::shared_ptr<const AugmentQueries> QuerySession::SubmitAugment(
    const MatroidView& view, std::vector<ElementId> base,
    std::vector<ElementId> candidates) {
  RequireAliveIds(view, base);
  RequireAliveIds(view, candidates);
  return Enqueue(std::make_shared<AugmentQueries>(view, std::move(base),
                                                  std::move(candidates)));
}

std::shared_ptr<const SpanProbe> QuerySession::SubmitSpanProbe(
    const MatroidView& view, std::shared_ptr<LazyPermutation> order,
    std::size_t length, std::vector<ElementId> candidates) {
  if (length > order->size()) {
    throw std::invalid_argument("prefix length exceeds the order");
  }
  RequireAliveIds(view, order->Prefix(length));
  RequireAliveIds(view, candidates);
  return Enqueue(std::make_shared<SpanProbe>(view, std::move(order), length,
                                             std::move(candidates)));
}

std::shared_ptr<const SubsetQueries> QuerySession::SubmitSubsets(
    const MatroidView& view, std::vector<ElementId> ground,
    std::size_t max_size) {
  RequireAliveIds(view, ground);
  return Enqueue(
      std::make_shared<SubsetQueries>(view, std::move(ground), max_size));
}

std::vector<std::pair<QueryTicket, bool>> QuerySession::Flush() {
  std::vector<std::pair<QueryTicket, bool>> out;
  const std::uint64_t batch = ledger_.pending_;
  for (auto& block : pending_blocks_) {
    block->Evaluate();
    block->ready_ = true;
  }
  pending_blocks_.clear();
  if (next_ticket_ > answers_.size()) answers_.resize(next_ticket_, 0);
  for (const PendingSingle& q : pending_singles_) {
    bool answer = q.view.IsIndependentImmediate(q.set);
    answers_[q.ticket.id] = answer ? 2 : 1;
    out.emplace_back(q.ticket, answer);
  }
  pending_singles_.clear();
  ledger_.pending_ = 0;
  if (batch == 0) return out;
  ++ledger_.rounds_;
  ledger_.total_queries_ = SaturatingAdd(ledger_.total_queries_, batch);
  ledger_.history_.push_back(
      {ledger_.rounds_, batch, ledger_.total_queries_});
  return out;
}

std::shared_ptr<LazyPermutation> QuerySession::RandomOrder(
    std::shared_ptr<const std::vector<ElementId>> pool) {
  return LazyPermutation::Random(std::move(pool), rng_.Next());
}

std::size_t FitToBudget(const QuerySession& session, std::uint64_t per_item,
                        std::size_t wanted) {
  if (per_item == 0) return std::max<std::size_t>(wanted, 1);
  const std::uint64_t fit = session.budget_left() / per_item;
  return static_cast<std::size_t>(
      std::max<std::uint64_t>(1, std::min<std::uint64_t>(wanted, fit)));
}

std::uint64_t CircuitProbeCost(std::size_t length) {
  const std::uint64_t l = length;
  return l + l * (l - (l > 0 ? 1 : 0)) / 2;
}

}  // namespace parbasis
