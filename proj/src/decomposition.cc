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

#include "parbasis/decomposition.h"

#include <algorithm>
#include <cmath>

#include "parbasis/errors.h"

namespace parbasis {
namespace {

using BigInt = boost::multiprecision::cpp_int;

std::shared_ptr<const std::vector<ElementId>> PoolOf(const ElementSet& s) {
  return std::make_shared<const std::vector<ElementId>>(s.ToVector());
}

// Smallest integer >= x.
BigInt Ceil(const Rational& x) {
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  BigInt q = num / den;
  if (q * den < num) ++q;
  return q;
}

// Submit-now, read-after-flush halves. The decomposition uses them to share
// one round between the next ensemble and the previous set's alpha estimate.
class PendingEnsemble {
 public:
  PendingEnsemble(const MatroidView& view, QuerySession& session,
                  std::size_t count)
      : universe_(view.ground_size()) {
    if (count == 0) throw PreconditionError("ensemble size must be >= 1");
    auto pool = PoolOf(view.alive());
    probes_.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      probes_.push_back(session.SubmitCircuitProbe(view, session.RandomOrder(pool)));
    }
  }

  CircuitEnsemble Collect() const {
    CircuitEnsemble out;
    out.samples.reserve(probes_.size());
    for (const auto& probe : probes_) {
      CircuitSample sample;
      sample.permutation_seed = probe->order()->seed();
      sample.circuit = ElementSet::Of(universe_, probe->Circuit());
      sample.trigger_index = probe->FirstDependent().value_or(0);
      out.samples.push_back(std::move(sample));
    }
    return out;
  }

 private:
  std::size_t universe_;
  std::vector<std::shared_ptr<const CircuitProbe>> probes_;
};

class PendingAlpha {
 public:
  PendingAlpha(const MatroidView& view, const ElementSet& s,
               QuerySession& session, std::size_t count)
      : size_(s.size()) {
    if (count == 0) throw PreconditionError("alpha needs at least one order");
    view.RequireAlive(s);
    const MatroidView restricted = view.Restrict(s);
    auto pool = PoolOf(s);
    prefixes_.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      prefixes_.push_back(
          session.SubmitPrefixes(restricted, session.RandomOrder(pool), size_));
    }
  }

  AlphaEstimate Collect() const {
    std::vector<std::size_t> triggers;
    triggers.reserve(prefixes_.size());
    for (const auto& p : prefixes_) {
      triggers.push_back(p->FirstDependent().value_or(size_ + 1));
    }
    // Lower median: the smallest l with at least half the orders dependent
    // by position l.
    const std::size_t mid = (triggers.size() - 1) / 2;
    std::nth_element(triggers.begin(), triggers.begin() + mid, triggers.end());
    return AlphaEstimate{triggers[mid], triggers.size()};
  }

 private:
  std::size_t size_;
  std::vector<std::shared_ptr<const PrefixQueries>> prefixes_;
};

// Default sample counts, shrunk to what the current batch can still take.
std::size_t EnsembleSize(const MatroidView& view, const QuerySession& session,
                         const DecompConfig& cfg) {
  const std::size_t n = view.alive_size();
  return FitToBudget(session, CircuitProbeCost(n), cfg.SamplesFor(n));
}

std::size_t AlphaSize(const MatroidView& view, const ElementSet& s,
                      const QuerySession& session, const DecompConfig& cfg) {
  return FitToBudget(session, s.size(), cfg.AlphaSamplesFor(view.alive_size()));
}

}  // namespace

std::size_t CeilLog2(std::size_t n) {
  if (n <= 2) return 1;
  return static_cast<std::size_t>(std::bit_width(n - 1));
}

std::size_t CircuitEnsemble::circuits_found() const {
  return static_cast<std::size_t>(std::count_if(
      samples.begin(), samples.end(),
      [](const CircuitSample& s) { return s.found(); }));
}

std::size_t DecompConfig::SamplesFor(std::size_t n) const {
  if (samples != 0) return samples;
  const double scaled = 8.0 * double(n) * std::log(std::max<double>(n, 1));
  return std::max<std::size_t>(256, static_cast<std::size_t>(std::ceil(scaled)));
}

std::size_t DecompConfig::AlphaSamplesFor(std::size_t n) const {
  return alpha_samples != 0 ? alpha_samples : SamplesFor(n);
}

Rational DecompConfig::CLog(std::size_t n) const {
  return c_log_mult * Rational(CeilLog2(n));
}

Rational DecompConfig::Threshold(std::size_t size, std::size_t n) const {
  Rational h = 0;
  for (std::size_t i = 1; i <= size; ++i) h += Rational(1, i);
  return Rational(1) - epsilon + h / CLog(n);
}

bool DecompConfig::IsLargeAlpha(std::size_t alpha, std::size_t size,
                                std::size_t n) const {
  if (large_alpha_c <= 0) return false;
  return Rational(alpha) * Rational(CeilLog2(n)) >= large_alpha_c * Rational(size);
}

CircuitSample FindCircuit(const MatroidView& view,
                          std::shared_ptr<LazyPermutation> order,
                          QuerySession& session) {
  auto probe = session.SubmitCircuitProbe(view, std::move(order));
  session.Flush();
  CircuitSample sample;
  sample.permutation_seed = probe->order()->seed();
  sample.circuit = ElementSet::Of(view.ground_size(), probe->Circuit());
  sample.trigger_index = probe->FirstDependent().value_or(0);
  return sample;
}

CircuitEnsemble SampleEnsemble(const MatroidView& view, QuerySession& session,
                               std::size_t count) {
  PendingEnsemble pending(view, session, count);
  session.Flush();
  return pending.Collect();
}

Rational QHat(const CircuitEnsemble& ensemble, const ElementSet& s) {
  std::size_t inside = 0;
  for (const auto& sample : ensemble.samples) {
    if (sample.found() && sample.circuit.IsSubsetOf(s)) ++inside;
  }
  if (ensemble.circuits_found() == 0) return Rational(0);
  return Rational(inside, ensemble.sample_count());
}

GreedyOptimalSet WhittleEnsemble(const MatroidView& view,
                                 const CircuitEnsemble& ensemble,
                                 const DecompConfig& cfg) {
  const std::size_t n = view.alive_size();
  const std::size_t total = ensemble.sample_count();
  const Rational c_log = cfg.CLog(n);

  // need[s]: least number of contained circuits with q-hat >= threshold(s).
  std::vector<BigInt> need(n + 1);
  Rational h = 0;
  for (std::size_t s = 0; s <= n; ++s) {
    if (s > 0) h += Rational(1, s);
    need[s] = Ceil(Rational(total) * (Rational(1) - cfg.epsilon + h / c_log));
  }

  // Circuits still inside S*, and per element how many of them contain it.
  std::vector<std::vector<std::size_t>> by_element(view.ground_size());
  std::vector<bool> inside(total, false);
  std::vector<std::size_t> count(view.ground_size(), 0);
  std::size_t contained = 0;
  for (std::size_t i = 0; i < total; ++i) {
    const CircuitSample& sample = ensemble.samples[i];
    if (!sample.found()) continue;
    inside[i] = true;
    ++contained;
    for (ElementId e : sample.circuit) {
      by_element[e].push_back(i);
      ++count[e];
    }
  }

  ElementSet members = view.alive();
  std::size_t size = n;
  while (size > 0) {
    ElementId victim = 0;
    bool found = false;
    for (ElementId x : members) {
      if (BigInt(contained - count[x]) >= need[size - 1]) {
        victim = x;
        found = true;
        break;
      }
    }
    if (!found) break;
    members.erase(victim);
    --size;
    for (std::size_t i : by_element[victim]) {
      if (!inside[i]) continue;
      inside[i] = false;
      --contained;
      for (ElementId e : ensemble.samples[i].circuit) --count[e];
    }
  }
  const Rational q = total == 0 ? Rational(0) : Rational(contained, total);
  return GreedyOptimalSet{std::move(members), q, cfg.epsilon, c_log};
}

std::optional<GreedyOptimalSet> FindGreedilyOptimal(const MatroidView& view,
                                                    QuerySession& session,
                                                    const DecompConfig& cfg) {
  if (view.alive_size() == 0) return std::nullopt;
  CircuitEnsemble ensemble =
      SampleEnsemble(view, session, EnsembleSize(view, session, cfg));
  if (ensemble.circuits_found() == 0) return std::nullopt;
  return WhittleEnsemble(view, ensemble, cfg);
}

AlphaEstimate EstimateAlpha(const MatroidView& view, const ElementSet& s,
                            QuerySession& session, std::size_t count) {
  PendingAlpha pending(view, s, session, count);
  session.Flush();
  return pending.Collect();
}

MatroidView RemoveSmallCircuits(const MatroidView& view, QuerySession& session,
                                std::size_t threshold,
                                const StepObserver& observer) {
  if (threshold == 0 || view.alive_size() == 0) return view;
  const std::vector<ElementId> ground = view.alive().ToVector();
  auto family = session.SubmitSubsets(view, ground, threshold);
  session.Flush();

  // For every independent B with |B| < threshold and every x below min(B),
  // B + x dependent means x is the smallest element of a circuit inside
  // B + x. Children B + y (y above max(B)) that stay independent recurse.
  ElementSet doomed = view.EmptySet();
  std::vector<ElementId> base;
  auto visit = [&](auto&& self, std::size_t next) -> void {
    std::vector<ElementId> candidates;
    std::size_t lower_count = 0;
    if (base.empty()) {
      candidates = ground;
      lower_count = ground.size();
    } else {
      for (ElementId x : ground) {
        if (x >= base.front()) break;
        candidates.push_back(x);
      }
      lower_count = candidates.size();
      for (std::size_t j = next; j < ground.size(); ++j) {
        candidates.push_back(ground[j]);
      }
    }
    std::vector<bool> ind = family->ExtensionAnswers(base, candidates);
    for (std::size_t i = 0; i < lower_count; ++i) {
      if (!ind[i]) doomed.insert(candidates[i]);
    }
    if (base.size() + 1 >= threshold) return;
    // Children: independent B + y with y after max(B).
    const std::size_t first_child = base.empty() ? 0 : lower_count;
    for (std::size_t i = first_child; i < candidates.size(); ++i) {
      if (!ind[i]) continue;
      const ElementId y = candidates[i];
      const std::size_t pos =
          std::lower_bound(ground.begin(), ground.end(), y) - ground.begin();
      base.push_back(y);
      self(self, pos + 1);
      base.pop_back();
    }
  };
  visit(visit, 0);
  if (doomed.empty()) return view;
  MatroidView next = view.Delete(doomed);
  Notify(observer, "remove_small_circuits", view, view.EmptySet(), doomed);
  return next;
}

std::optional<PeelResult> Peel(const MatroidView& view, QuerySession& session,
                               const DecompConfig& cfg) {
  auto set = FindGreedilyOptimal(view, session, cfg);
  if (!set) return std::nullopt;
  MatroidView residual = view.Delete(set->members);
  return PeelResult{std::move(*set), std::move(residual)};
}

const char* StopReasonName(StopReason reason) {
  switch (reason) {
    case StopReason::kExhausted:
      return "exhausted";
    case StopReason::kHalfConsumed:
      return "half_consumed";
    case StopReason::kLargeAlpha:
      return "large_alpha";
    case StopReason::kOversizedSet:
      return "oversized_set";
  }
  return "unknown";
}

void DecompositionResult::Dump(std::ostream& out) const {
  for (std::size_t i = 0; i < sets.size(); ++i) {
    out << "set " << i + 1 << " alpha=" << alphas[i].value
        << " size=" << sets[i].size() << " members=";
    bool first = true;
    for (ElementId e : sets[i]) {
      out << (first ? "" : " ") << e;
      first = false;
    }
    out << '\n';
  }
}

namespace {

DecompositionResult Decompose(const MatroidView& view, QuerySession& session,
                              const DecompConfig& cfg, bool early_stop) {
  const std::size_t n0 = view.alive_size();
  DecompositionResult out;
  MatroidView current =
      RemoveSmallCircuits(view, session, cfg.small_circuit_threshold, cfg.observer);
  out.start_view = current;

  // The last peeled set waits for its alpha estimate, which shares a round
  // with the next ensemble.
  std::optional<ElementSet> last;
  std::optional<MatroidView> last_before;
  while (true) {
    const std::size_t alive = current.alive_size();
    const bool more = alive > 0 && (!early_stop || 2 * alive >= n0);
    std::optional<PendingEnsemble> ensemble;
    std::optional<PendingAlpha> alpha;
    if (last) {
      alpha.emplace(*last_before, *last, session,
                    AlphaSize(*last_before, *last, session, cfg));
    }
    if (more) ensemble.emplace(current, session, EnsembleSize(current, session, cfg));
    session.Flush();

    if (last) {
      AlphaEstimate a = alpha->Collect();
      if (cfg.IsLargeAlpha(a.value, last->size(), last_before->alive_size())) {
        out.stop_reason = StopReason::kLargeAlpha;
        out.stopped_set = std::move(last);
        out.stopped_alpha = a;
        out.stopped_view_before = std::move(last_before);
        out.residual_view = current;
        return out;
      }
      out.sets.push_back(std::move(*last));
      out.alphas.push_back(a);
      out.views_before.push_back(std::move(*last_before));
      last.reset();
      last_before.reset();
    }
    if (!more) {
      out.stop_reason = alive > 0 ? StopReason::kHalfConsumed : StopReason::kExhausted;
      out.residual_view = current;
      return out;
    }
    CircuitEnsemble samples = ensemble->Collect();
    if (samples.circuits_found() == 0) {
      // Only independent elements remain.
      out.stop_reason = StopReason::kExhausted;
      out.residual_view = current;
      return out;
    }
    GreedyOptimalSet s = WhittleEnsemble(current, samples, cfg);
    if (!early_stop && 2 * s.members.size() > n0) {
      out.stop_reason = StopReason::kOversizedSet;
      out.stopped_view_before = current;
      out.residual_view = current.Delete(s.members);
      out.stopped_set = std::move(s.members);
      return out;
    }
    last_before = current;
    current = current.Delete(s.members);
    last = std::move(s.members);
  }
}

}  // namespace

DecompositionResult IterativePeel(const MatroidView& view,
                                  QuerySession& session,
                                  const DecompConfig& cfg) {
  return Decompose(view, session, cfg, /*early_stop=*/false);
}

DecompositionResult EarlyStopDecomposition(const MatroidView& view,
                                           QuerySession& session,
                                           const DecompConfig& cfg) {
  return Decompose(view, session, cfg, /*early_stop=*/true);
}

}  // namespace parbasis
