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

#include "parbasis/partition_solver.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "parbasis/errors.h"

namespace parbasis {
namespace {

// Round-1 and round-2 halves of RecoverSinglePart, so that many probes can
// share both rounds.
class SinglePartProbe {
 public:
  SinglePartProbe(const MatroidView& view, std::shared_ptr<LazyPermutation> order)
      : view_(view), order_(std::move(order)) {}

  void SubmitFirst(QuerySession& session) {
    probe_ = session.SubmitCircuitProbe(view_, order_);
  }

  // After the first flush: length of the longest independent prefix.
  std::size_t IndependentPrefixLength() const {
    auto t = probe_->FirstDependent();
    return t ? *t - 1 : order_->size();
  }

  // After the first flush. False when the order never becomes dependent.
  bool SubmitSecond(QuerySession& session) {
    auto t = probe_->FirstDependent();
    if (!t) return false;
    t_ = *t;
    trigger_ = order_->At(t_ - 1);
    for (std::size_t i = 1; i < t_; ++i) {
      if (probe_->OneRemovedIndependent(t_, i)) core_.push_back(order_->At(i - 1));
    }
    std::vector<ElementId> rest;
    for (std::size_t i = t_ + 1; i <= order_->size(); ++i) {
      rest.push_back(order_->At(i - 1));
    }
    augment_ = session.SubmitAugment(view_, core_, std::move(rest));
    return true;
  }

  // After the second flush: the part is I + pi(t) + every later element that
  // is dependent together with I.
  RecoveredPart Result() const {
    RecoveredPart part{view_.EmptySet(), core_.size()};
    for (ElementId e : core_) part.members.insert(e);
    part.members.insert(trigger_);
    const auto& cand = augment_->candidates();
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (!augment_->Independent(i)) part.members.insert(cand[i]);
    }
    return part;
  }

 private:
  MatroidView view_;
  std::shared_ptr<LazyPermutation> order_;
  std::shared_ptr<const CircuitProbe> probe_;
  std::shared_ptr<const AugmentQueries> augment_;
  std::size_t t_ = 0;
  ElementId trigger_ = 0;
  std::vector<ElementId> core_;
};

std::shared_ptr<const std::vector<ElementId>> AlivePool(const MatroidView& v) {
  return std::make_shared<const std::vector<ElementId>>(v.alive().ToVector());
}

// Keeps `keep` (contracted) and drops the rest of `parts` (deleted).
MatroidView KeepAndDrop(const MatroidView& view, const ElementSet& keep,
                        const ElementSet& parts, const char* source,
                        const StepObserver& observer) {
  MatroidView next = view.Contract(keep).Delete(parts - keep);
  Notify(observer, source, view, keep, parts - keep);
  return next;
}

}  // namespace

std::size_t PartitionConfig::SamplesFor(std::size_t n) const {
  if (samples != 0) return samples;
  const double scaled = 4.0 * double(n) * std::log(std::max<double>(n, 1));
  return std::max<std::size_t>(64, static_cast<std::size_t>(std::ceil(scaled)));
}

double PartitionConfig::RoundCap(std::size_t n) const {
  const double logn = std::max(1.0, std::log2(std::max<double>(n, 2)));
  return round_cap_c * std::cbrt(double(n)) * logn;
}

std::optional<RecoveredPart> RecoverSinglePart(
    const MatroidView& view, std::shared_ptr<LazyPermutation> order,
    QuerySession& session) {
  SinglePartProbe probe(view, std::move(order));
  probe.SubmitFirst(session);
  session.Flush();
  if (!probe.SubmitSecond(session)) return std::nullopt;
  session.Flush();
  return probe.Result();
}

SmallPartsResult RemoveSmallParts(const MatroidView& view,
                                  QuerySession& session, std::size_t threshold,
                                  const StepObserver& observer) {
  if (threshold == 0) {
    throw PreconditionError("remove_small_parts needs threshold >= 1");
  }
  const std::vector<ElementId> ground = view.alive().ToVector();
  auto family = session.SubmitSubsets(view, ground, threshold + 1);
  session.Flush();

  SmallPartsResult out{view, view.EmptySet(), {}};
  ElementSet removed = view.EmptySet();
  ElementSet keep = view.EmptySet();
  // Stage s looks for circuits of size s: a set S of size s-1 plus one later
  // element x with S + x dependent. Smaller circuits are gone by then.
  std::vector<ElementId> s_set;
  for (std::size_t s = 1; s <= threshold + 1; ++s) {
    auto visit = [&](auto&& self, std::size_t from) -> void {
      if (s_set.size() == s - 1) {
        for (ElementId e : s_set) {
          if (removed.contains(e)) return;
        }
        std::vector<ElementId> later;
        for (std::size_t j = from; j < ground.size(); ++j) {
          if (!removed.contains(ground[j])) later.push_back(ground[j]);
        }
        std::vector<bool> ind = family->ExtensionAnswers(s_set, later);
        for (std::size_t j = 0; j < later.size(); ++j) {
          if (ind[j]) continue;
          // s_set + later[j] is a circuit; s_set is budget-many of its part.
          std::vector<ElementId> others;
          for (ElementId e : ground) {
            if (!removed.contains(e) &&
                std::find(s_set.begin(), s_set.end(), e) == s_set.end()) {
              others.push_back(e);
            }
          }
          std::vector<bool> with = family->ExtensionAnswers(s_set, others);
          RecoveredPart part{ElementSet::Of(view.ground_size(), s_set),
                             s_set.size()};
          for (std::size_t k = 0; k < others.size(); ++k) {
            if (!with[k]) part.members.insert(others[k]);
          }
          for (ElementId e : s_set) keep.insert(e);
          removed |= part.members;
          out.parts.push_back(std::move(part));
          return;
        }
        return;
      }
      for (std::size_t j = from; j < ground.size(); ++j) {
        if (removed.contains(ground[j])) continue;
        s_set.push_back(ground[j]);
        self(self, j + 1);
        s_set.pop_back();
        for (ElementId e : s_set) {
          if (removed.contains(e)) return;
        }
      }
    };
    visit(visit, 0);
  }
  out.basis = keep;
  out.view = KeepAndDrop(view, keep, removed, "remove_small_parts", observer);
  return out;
}

MultiplePartsResult RecoverMultipleParts(const MatroidView& view,
                                         QuerySession& session,
                                         const PartitionConfig& cfg) {
  SmallPartsResult small =
      RemoveSmallParts(view, session, cfg.small_part_threshold, cfg.observer);
  MultiplePartsResult out{small.view, small.basis, false, {}};
  if (out.view.alive_size() == 0) return out;

  while (out.view.alive_size() > 0) {
    const MatroidView& v = out.view;
    const std::size_t alive = v.alive_size();
    const std::size_t prefix_len = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(double(alive) * cfg.contract_fraction)));
    const std::size_t samples =
        FitToBudget(session, CircuitProbeCost(alive), cfg.SamplesFor(alive));
    auto pool = AlivePool(v);

    // Each probe queries every prefix of its order, so the same round also
    // answers Ind(E) (the full-length prefix) and the contraction test.
    std::vector<std::shared_ptr<LazyPermutation>> orders;
    std::vector<SinglePartProbe> probes;
    orders.reserve(samples);
    probes.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
      orders.push_back(session.RandomOrder(pool));
      probes.emplace_back(v, orders.back());
      probes.back().SubmitFirst(session);
    }
    session.Flush();

    // Longest independent prefix over all orders; ties go to the first order.
    std::size_t best_len = 0;
    std::size_t best = 0;
    for (std::size_t i = 0; i < samples; ++i) {
      std::size_t len = probes[i].IndependentPrefixLength();
      if (len > best_len) {
        best_len = len;
        best = i;
      }
    }
    if (best_len >= prefix_len) {
      ElementSet prefix =
          ElementSet::Of(v.ground_size(), orders[best]->Prefix(best_len));
      const MatroidView before = v;
      out.basis |= prefix;
      out.view = before.Contract(prefix);
      out.contracted = true;
      Notify(cfg.observer, "recover_multiple_parts", before, prefix,
             before.EmptySet());
      return out;
    }

    for (auto& probe : probes) probe.SubmitSecond(session);
    session.Flush();

    std::map<std::vector<ElementId>, std::size_t> parts;
    for (const auto& probe : probes) {
      RecoveredPart part = probe.Result();
      parts.emplace(part.members.ToVector(), part.budget);
    }
    ElementSet union_set = v.EmptySet();
    ElementSet keep = v.EmptySet();
    for (const auto& [members, budget] : parts) {
      for (ElementId e : members) union_set.insert(e);
      // The budget-many lowest-indexed members stand in for the part.
      for (std::size_t i = 0; i < budget && i < members.size(); ++i) {
        keep.insert(members[i]);
      }
    }
    out.recovered_sets.push_back(union_set);
    out.basis |= keep;
    out.view = KeepAndDrop(v, keep, union_set, "recover_multiple_parts",
                           cfg.observer);
  }
  return out;
}

ElementSet PartitionFindBasis(const MatroidView& view, QuerySession& session,
                              const PartitionConfig& cfg,
                              PartitionSolveStats* stats) {
  MatroidView current = view;
  ElementSet basis = view.EmptySet();
  PartitionSolveStats local;
  while (current.alive_size() > 0) {
    MultiplePartsResult r = RecoverMultipleParts(current, session, cfg);
    ++local.calls;
    // A call that ends in a contraction still ran one loop iteration.
    local.iterations += r.recovered_sets.size() + (r.contracted ? 1 : 0);
    basis |= r.basis;
    current = std::move(r.view);
  }
  if (stats) *stats = local;
  return basis;
}

}  // namespace parbasis
