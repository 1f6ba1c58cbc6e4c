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

#include "parbasis/general_solver.h"

#include <algorithm>
#include <memory>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "parbasis/errors.h"
#include "parbasis/kuw.h"

namespace parbasis {
namespace {

using BigInt = boost::multiprecision::cpp_int;

std::size_t CeilToSize(const Rational& r) {
  BigInt q = boost::multiprecision::numerator(r) /
             boost::multiprecision::denominator(r);
  if (q * boost::multiprecision::denominator(r) <
      boost::multiprecision::numerator(r)) {
    ++q;
  }
  return q.convert_to<std::size_t>();
}

// Smallest integer r with r * r >= x.
std::size_t CeilSqrt(std::size_t x) {
  std::size_t r = 0;
  while (r * r < x) ++r;
  return r;
}

std::size_t FloorLog2(std::size_t x) {
  std::size_t l = 0;
  while (x >>= 1) ++l;
  return l;
}

std::shared_ptr<const std::vector<ElementId>> Pool(const ElementSet& s) {
  return std::make_shared<const std::vector<ElementId>>(s.ToVector());
}

}  // namespace

ElementSet ContractLargeAlpha(const MatroidView& view_before_peel,
                              const ElementSet& s, std::size_t alpha,
                              QuerySession& session, const GeneralConfig& cfg) {
  const std::size_t n = view_before_peel.alive_size();
  if (s.empty() || n == 0) return view_before_peel.EmptySet();
  const std::size_t length = std::min(
      n, CeilToSize(Rational(alpha) * Rational(n) / Rational(10 * s.size())));
  if (length == 0) return view_before_peel.EmptySet();
  const std::size_t wanted =
      cfg.contract_samples != 0 ? cfg.contract_samples : cfg.decomp.SamplesFor(n);
  const std::size_t count = FitToBudget(session, 1, wanted);

  auto pool = Pool(view_before_peel.alive());
  std::vector<std::pair<ElementSet, QueryTicket>> tries;
  tries.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto order = session.RandomOrder(pool);
    std::vector<ElementId> prefix = order->Prefix(length);
    ElementSet set = ElementSet::Of(view_before_peel.ground_size(), prefix);
    QueryTicket ticket = session.Submit(view_before_peel, set);
    tries.emplace_back(std::move(set), ticket);
  }
  session.Flush();
  for (const auto& [set, ticket] : tries) {
    if (session.Answer(ticket)) return set;
  }
  return view_before_peel.EmptySet();
}

RecoveryShape RedundantRecoveryShape(const PeeledSet& p,
                                     const GeneralConfig& cfg) {
  const std::size_t size = p.set.size();
  const std::size_t log_n = CeilLog2(p.view.alive_size());
  if (Rational(p.alpha) * cfg.small_alpha_c * Rational(log_n) > Rational(size)) {
    throw PreconditionError("alpha too large for redundant element recovery");
  }
  RecoveryShape shape;
  shape.t = std::clamp<std::size_t>(
      CeilToSize(cfg.t_mult * Rational(log_n) * Rational(p.alpha)), 1, size);
  shape.count = size / (4 * shape.t);
  if (shape.count == 0) {
    throw PreconditionError("set too small for redundant element recovery");
  }
  return shape;
}

ElementSet RecoverRedundantElements(const std::vector<PeeledSet>& sets,
                                    QuerySession& session,
                                    const GeneralConfig& cfg) {
  if (sets.empty()) throw PreconditionError("no sets to recover from");
  const std::size_t ground = sets.front().view.ground_size();
  std::vector<std::shared_ptr<const SpanProbe>> probes;
  for (const PeeledSet& p : sets) {
    const RecoveryShape shape = RedundantRecoveryShape(p, cfg);
    p.view.RequireAlive(p.set);
    auto pool = Pool(p.set);
    for (std::size_t i = 0; i < shape.count; ++i) {
      auto order = session.RandomOrder(pool);
      ElementSet a = ElementSet::Of(ground, order->Prefix(shape.t));
      probes.push_back(session.SubmitSpanProbe(p.view, order, shape.t,
                                               (p.view.alive() - a).ToVector()));
    }
  }
  session.Flush();
  // Every prefix stays alive, so whatever they span may go.
  ElementSet caught(ground);
  ElementSet prefixes(ground);
  for (const auto& probe : probes) {
    prefixes |= ElementSet::Of(ground, probe->order()->Prefix(probe->length()));
    for (std::size_t k = 0; k < probe->candidates().size(); ++k) {
      if (probe->Caught(k)) caught.insert(probe->candidates()[k]);
    }
  }
  return caught - prefixes;
}

ElementSet RecoverRedundantElements(const MatroidView& view,
                                    const ElementSet& s, std::size_t alpha,
                                    QuerySession& session,
                                    const GeneralConfig& cfg) {
  return RecoverRedundantElements({PeeledSet{view, s, alpha}}, session, cfg);
}

ElementSet ExplicitSolveBucket(const MatroidView& view,
                               const std::vector<ElementSet>& bucket,
                               QuerySession& session,
                               const StepObserver& observer) {
  std::vector<KuwRun> runs;
  runs.reserve(bucket.size());
  for (const ElementSet& t : bucket) {
    view.RequireAlive(t);
    runs.emplace_back(view.Restrict(t), observer);
  }
  while (true) {
    bool any = false;
    for (KuwRun& run : runs) {
      if (run.done()) continue;
      run.Submit(session);
      any = true;
    }
    if (!any) break;
    session.Flush();
    for (KuwRun& run : runs) {
      if (!run.done()) run.Absorb();
    }
  }
  ElementSet out = view.EmptySet();
  for (std::size_t i = 0; i < bucket.size(); ++i) {
    out |= bucket[i] - runs[i].contracted();
  }
  return out;
}

ProgressParams ComputeProgressParams(const DecompositionResult& d,
                                     std::size_t n) {
  if (d.sets.empty()) throw PreconditionError("decomposition has no sets");
  std::vector<std::size_t> per_level(FloorLog2(std::max<std::size_t>(n, 1)) + 2);
  for (const ElementSet& s : d.sets) {
    const std::size_t level = FloorLog2(s.size());
    if (level >= per_level.size()) per_level.resize(level + 1);
    ++per_level[level];
  }
  ProgressParams p;
  // max_element keeps the first maximum, i.e. the smaller level.
  p.level = static_cast<std::size_t>(
      std::max_element(per_level.begin(), per_level.end()) - per_level.begin());
  p.tau = std::size_t{1} << p.level;
  for (std::size_t i = 0; i < d.sets.size(); ++i) {
    if (FloorLog2(d.sets[i].size()) == p.level) p.bucket.push_back(i);
    // alpha_i / |S_i| > alpha_* / |S_*|, cross-multiplied.
    if (d.alphas[i].value * d.sets[p.i_star].size() >
        d.alphas[p.i_star].value * d.sets[i].size()) {
      p.i_star = i;
    }
  }
  p.gamma = p.bucket.size();
  p.beta = Rational(p.tau) * Rational(d.alphas[p.i_star].value) /
           Rational(d.sets[p.i_star].size());
  return p;
}

const char* SubroutineName(Subroutine s) {
  switch (s) {
    case Subroutine::kContractBetaTau:
      return "contract_beta_tau";
    case Subroutine::kExplicitSolve:
      return "explicit_solve";
    case Subroutine::kRedundantBucket:
      return "redundant_bucket";
    case Subroutine::kRedundantAll:
      return "redundant_all";
  }
  return "unknown";
}

std::vector<SubroutineChoice> PredictSubroutines(std::size_t n,
                                                 const ProgressParams& p) {
  const Rational nr(n);
  const Rational tau(p.tau);
  const Rational gamma(p.gamma);
  const Rational spread = tau * tau / (p.beta * p.beta);
  // Rounds are whole, so the KUW depth sqrt(tau) is rounded up.
  return {
      {Subroutine::kContractBetaTau, nr * p.beta / tau, gamma},
      {Subroutine::kExplicitSolve, gamma * tau,
       gamma + Rational(CeilSqrt(p.tau))},
      {Subroutine::kRedundantBucket, gamma * std::min(tau, spread), gamma},
      {Subroutine::kRedundantAll, std::min(nr, spread), gamma},
  };
}

SubroutineChoice ChooseSubroutine(std::size_t n, const ProgressParams& p) {
  std::vector<SubroutineChoice> rows = PredictSubroutines(n, p);
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].predicted_progress * rows[best].predicted_rounds >
        rows[best].predicted_progress * rows[i].predicted_rounds) {
      best = i;
    }
  }
  return rows[best];
}

std::ostream& operator<<(std::ostream& out, const IterationRecord& r) {
  return out << "iter=" << r.iteration << " n=" << r.alive
             << " action=" << r.action << " progress=" << r.progress
             << " rounds=" << r.rounds;
}

namespace {

struct Step {
  std::string action;
  std::optional<SubroutineChoice> choice;
  ElementSet contract;
  ElementSet remove;
};

std::vector<PeeledSet> Peeled(const DecompositionResult& d,
                              const std::vector<std::size_t>& which) {
  std::vector<PeeledSet> out;
  for (std::size_t i : which) {
    out.push_back({d.views_before[i], d.sets[i], d.alphas[i].value});
  }
  return out;
}

// Sets whose shape admits redundant element recovery.
std::vector<PeeledSet> Recoverable(std::vector<PeeledSet> sets,
                                   const GeneralConfig& cfg) {
  std::erase_if(sets, [&](const PeeledSet& p) {
    try {
      RedundantRecoveryShape(p, cfg);
      return false;
    } catch (const PreconditionError&) {
      return true;
    }
  });
  return sets;
}

Step RunChoice(const DecompositionResult& d, const MatroidView& current,
               QuerySession& session, const GeneralConfig& cfg) {
  Step step{"", std::nullopt, current.EmptySet(), current.EmptySet()};
  if (d.stop_reason == StopReason::kLargeAlpha) {
    step.action = "contract_large_alpha";
    step.contract = ContractLargeAlpha(*d.stopped_view_before, *d.stopped_set,
                                       d.stopped_alpha->value, session, cfg);
    return step;
  }
  if (d.sets.empty()) {
    if (d.stop_reason == StopReason::kExhausted) {
      // No order met a dependence, so what is left is independent.
      step.action = "contract_independent";
      step.contract = d.residual_view.alive();
    } else {
      step.action = "no_sets";
    }
    return step;
  }
  const ProgressParams p = ComputeProgressParams(d, current.alive_size());
  const SubroutineChoice choice = ChooseSubroutine(current.alive_size(), p);
  step.action = SubroutineName(choice.which);
  step.choice = choice;
  switch (choice.which) {
    case Subroutine::kContractBetaTau:
      step.contract =
          ContractLargeAlpha(d.views_before[p.i_star], d.sets[p.i_star],
                             d.alphas[p.i_star].value, session, cfg);
      break;
    case Subroutine::kExplicitSolve: {
      std::vector<ElementSet> bucket;
      for (std::size_t i : p.bucket) bucket.push_back(d.sets[i]);
      step.remove = ExplicitSolveBucket(current, bucket, session, cfg.observer);
      break;
    }
    case Subroutine::kRedundantBucket:
    case Subroutine::kRedundantAll: {
      std::vector<std::size_t> which = p.bucket;
      if (choice.which == Subroutine::kRedundantAll) {
        which.resize(d.sets.size());
        for (std::size_t i = 0; i < which.size(); ++i) which[i] = i;
      }
      std::vector<PeeledSet> sets = Recoverable(Peeled(d, which), cfg);
      if (!sets.empty()) {
        step.remove = RecoverRedundantElements(sets, session, cfg);
      }
      break;
    }
  }
  return step;
}

}  // namespace

ElementSet GeneralFindBasis(const MatroidView& view, QuerySession& session,
                            const GeneralConfig& cfg) {
  DecompConfig dc = cfg.decomp;
  dc.observer = cfg.observer;
  MatroidView current = view;
  ElementSet basis = view.EmptySet();
  for (std::size_t iteration = 1; current.alive_size() > 0; ++iteration) {
    IterationRecord record;
    record.iteration = iteration;
    record.alive = current.alive_size();
    const std::uint64_t rounds_before = session.ledger().rounds();
    std::size_t alive_after_cleanup = 0;

    DecompositionResult d = EarlyStopDecomposition(current, session, dc);
    current = d.start_view;
    alive_after_cleanup = current.alive_size();
    Step step{"remove_small_circuits", std::nullopt, current.EmptySet(),
              current.EmptySet()};
    if (current.alive_size() > 0) {
      step = RunChoice(d, current, session, cfg);
      if (!step.contract.empty()) {
        Notify(cfg.observer, step.action, current, step.contract,
               current.EmptySet());
        current = current.Contract(step.contract);
        basis |= step.contract;
      } else if (!step.remove.empty()) {
        Notify(cfg.observer, step.action, current, current.EmptySet(),
               step.remove);
        current = current.Delete(step.remove);
      } else {
        // The chosen subroutine came back empty-handed; one KUW round always
        // makes progress.
        KuwRun run(current, cfg.observer);
        run.Submit(session);
        session.Flush();
        run.Absorb();
        basis |= run.contracted();
        current = run.view();
        step.action = "kuw_round_after_" + step.action;
      }
    }
    record.action = step.action;
    record.choice = step.choice;
    record.action_progress = alive_after_cleanup - current.alive_size();
    record.progress = record.alive - current.alive_size();
    record.rounds = session.ledger().rounds() - rounds_before;
    if (cfg.run_log != nullptr) *cfg.run_log << record << '\n';
    if (cfg.on_iteration) cfg.on_iteration(record);
  }
  return basis;
}

}  // namespace parbasis
