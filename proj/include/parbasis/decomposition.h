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

// Circuit sampling and the peeling decomposition for general matroids.
//
// The first circuit met when adding elements in a random order is the basic
// statistic. q(S) is the probability that it lies inside S, and alpha(S) is
// the median number of elements of S needed before S itself turns dependent.
// A greedily-optimal set captures almost all first circuits yet loses mass
// whenever any single element is removed; peeling such sets one after the
// other decomposes the matroid into a few well-behaved pieces.

#ifndef PARBASIS_DECOMPOSITION_H_
#define PARBASIS_DECOMPOSITION_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "parbasis/element_set.h"
#include "parbasis/matroid_view.h"
#include "parbasis/query_session.h"
#include "parbasis/random.h"
#include "parbasis/trace.h"

namespace parbasis {

using Rational = boost::multiprecision::cpp_rational;

// ceil(log2 n), at least 1. The integer form keeps every threshold exact.
std::size_t CeilLog2(std::size_t n);

struct CircuitSample {
  ElementSet circuit;            // empty when the order never turned dependent
  std::size_t trigger_index = 0;  // 1-based position t; 0 when no circuit
  std::uint64_t permutation_seed = 0;

  bool found() const { return trigger_index != 0; }
};

struct CircuitEnsemble {
  std::vector<CircuitSample> samples;
  std::size_t sample_count() const { return samples.size(); }
  std::size_t circuits_found() const;
};

struct DecompConfig {
  // Orders per ensemble; 0 means max(256, ceil(8 n ln n)).
  std::size_t samples = 0;
  // Orders per alpha estimate; 0 means the ensemble size.
  std::size_t alpha_samples = 0;
  Rational epsilon{1, 64};
  // c_log = c_log_mult * ceil(log2 n).
  Rational c_log_mult{64};
  // Circuits up to this size are removed before peeling.
  std::size_t small_circuit_threshold = 2;
  // Stop once alpha(S_k) >= large_alpha_c * |S_k| / log n. A value <= 0
  // disables the test.
  Rational large_alpha_c{1, 100};
  StepObserver observer;

  std::size_t SamplesFor(std::size_t n) const;
  std::size_t AlphaSamplesFor(std::size_t n) const;
  Rational CLog(std::size_t n) const;
  // 1 - epsilon + H(size) / c_log for the current alive size n.
  Rational Threshold(std::size_t size, std::size_t n) const;
  bool IsLargeAlpha(std::size_t alpha, std::size_t size, std::size_t n) const;
};

// The first circuit along `order` (a permutation of the alive set), in one
// round. Returns a sample with found() false when the view is independent.
CircuitSample FindCircuit(const MatroidView& view,
                          std::shared_ptr<LazyPermutation> order,
                          QuerySession& session);

// `count` FindCircuit runs on fresh random orders, all in one round.
// Throws PreconditionError when count is 0.
CircuitEnsemble SampleEnsemble(const MatroidView& view, QuerySession& session,
                               std::size_t count);

// Fraction of the ensemble's circuits contained in s. Orders that found no
// circuit count in the denominator unless no order found one, in which case
// the estimate is 0.
Rational QHat(const CircuitEnsemble& ensemble, const ElementSet& s);

struct GreedyOptimalSet {
  ElementSet members;
  Rational q_hat;
  Rational epsilon;
  Rational c_log;
};

// Whittles the alive set down against a fresh ensemble (one round), always
// removing the lowest-indexed element whose removal keeps q-hat above the
// threshold. nullopt when the view is independent.
std::optional<GreedyOptimalSet> FindGreedilyOptimal(const MatroidView& view,
                                                    QuerySession& session,
                                                    const DecompConfig& cfg);

// Offline half of FindGreedilyOptimal for an ensemble sampled on `view`.
// Thresholds use the view's alive size as n.
GreedyOptimalSet WhittleEnsemble(const MatroidView& view,
                                 const CircuitEnsemble& ensemble,
                                 const DecompConfig& cfg);

struct AlphaEstimate {
  std::size_t value = 0;
  std::size_t sample_count = 0;
};

// Median first-dependence position over `count` random orders of s, in the
// view restricted to s; orders with no dependence count as |s| + 1. One round.
AlphaEstimate EstimateAlpha(const MatroidView& view, const ElementSet& s,
                            QuerySession& session, std::size_t count);

// Deletes the lowest-indexed element of every circuit of size <= threshold,
// in one round over all subsets up to that size. Rank is unchanged.
MatroidView RemoveSmallCircuits(const MatroidView& view, QuerySession& session,
                                std::size_t threshold,
                                const StepObserver& observer = {});

struct PeelResult {
  GreedyOptimalSet set;
  MatroidView residual;
};

// FindGreedilyOptimal followed by deleting the set. nullopt when the view is
// independent.
std::optional<PeelResult> Peel(const MatroidView& view, QuerySession& session,
                               const DecompConfig& cfg);

enum class StopReason { kExhausted, kHalfConsumed, kLargeAlpha, kOversizedSet };

const char* StopReasonName(StopReason reason);

struct DecompositionResult {
  std::vector<ElementSet> sets;
  std::vector<AlphaEstimate> alphas;
  // views_before[i] is the view S_i was peeled from.
  std::vector<MatroidView> views_before;
  StopReason stop_reason = StopReason::kExhausted;
  // The input view after small circuits were removed; every set was peeled
  // from a deletion of it.
  MatroidView start_view;
  // Alive excludes every peeled set, including a discarded last one.
  MatroidView residual_view;
  // The set whose peel triggered kLargeAlpha or kOversizedSet, with its
  // estimate and the view it was peeled from.
  std::optional<ElementSet> stopped_set;
  std::optional<AlphaEstimate> stopped_alpha;
  std::optional<MatroidView> stopped_view_before;

  // One line per set: `set <i> alpha=<v> size=<s> members=<ids...>`.
  void Dump(std::ostream& out) const;
};

// Removes small circuits, then peels greedily-optimal sets until no circuit
// is left, or a peeled set has large alpha, or one is larger than half the
// starting size.
DecompositionResult IterativePeel(const MatroidView& view,
                                  QuerySession& session,
                                  const DecompConfig& cfg);

// As IterativePeel, but also stops once fewer than half of the starting
// elements are alive.
DecompositionResult EarlyStopDecomposition(const MatroidView& view,
                                           QuerySession& session,
                                           const DecompConfig& cfg);

}  // namespace parbasis

#endif  // PARBASIS_DECOMPOSITION_H_
