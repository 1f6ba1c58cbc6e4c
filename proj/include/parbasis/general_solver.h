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

// The general basis algorithm. Each outer iteration decomposes the matroid
// into greedily-optimal sets and then picks the cheapest way to make progress
// from their sizes and alpha estimates: contract a long random prefix, solve
// a bucket of similar sets explicitly, or delete elements spanned by short
// random prefixes of the sets.

#ifndef PARBASIS_GENERAL_SOLVER_H_
#define PARBASIS_GENERAL_SOLVER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "parbasis/decomposition.h"
#include "parbasis/element_set.h"
#include "parbasis/matroid_view.h"
#include "parbasis/query_session.h"
#include "parbasis/trace.h"

namespace parbasis {

struct ProgressParams {
  std::size_t tau = 0;      // 2^level
  Rational beta;            // tau * max_i alpha_i / |S_i|
  std::size_t gamma = 0;    // |bucket|
  std::size_t level = 0;    // bucket holds sizes in [2^level, 2^(level+1))
  std::vector<std::size_t> bucket;  // indices into the decomposition's sets
  std::size_t i_star = 0;
};

// Throws PreconditionError when the decomposition has no sets.
ProgressParams ComputeProgressParams(const DecompositionResult& d,
                                     std::size_t n);

enum class Subroutine {
  kContractBetaTau,
  kExplicitSolve,
  kRedundantBucket,
  kRedundantAll,
};

const char* SubroutineName(Subroutine s);

struct SubroutineChoice {
  Subroutine which = Subroutine::kContractBetaTau;
  Rational predicted_progress;
  Rational predicted_rounds;
};

struct IterationRecord {
  std::size_t iteration = 0;  // 1-based
  std::size_t alive = 0;      // at the start of the iteration
  std::string action;
  std::size_t progress = 0;   // elements contracted or deleted
  std::uint64_t rounds = 0;
  // Set when the progress parameters picked a subroutine.
  std::optional<SubroutineChoice> choice;
  // Elements contracted or deleted by the action itself, without the small
  // circuits removed first.
  std::size_t action_progress = 0;
};

// `iter=<i> n=<alive> action=<a> progress=<p> rounds=<r>`.
std::ostream& operator<<(std::ostream& out, const IterationRecord& r);

struct GeneralConfig {
  DecompConfig decomp;
  // Random prefixes tried per contraction; 0 means decomp.SamplesFor(n).
  std::size_t contract_samples = 0;
  // Prefix length t = ceil(t_mult * ceil(log2 n) * alpha) for redundant
  // element recovery.
  Rational t_mult{1};
  // Redundant element recovery needs alpha <= |S| / (small_alpha_c * log n).
  Rational small_alpha_c{4};
  StepObserver observer;
  // One line per outer iteration when set.
  std::ostream* run_log = nullptr;
  std::function<void(const IterationRecord&)> on_iteration;
};

// Independent random prefix of length ceil(alpha * n / (10 |s|)), n the alive
// size of `view_before_peel`, out of one batch of sampled prefixes. Empty when
// every sample was dependent or the length is 0.
ElementSet ContractLargeAlpha(const MatroidView& view_before_peel,
                              const ElementSet& s, std::size_t alpha,
                              QuerySession& session, const GeneralConfig& cfg);

// A set s peeled from `view` with its alpha estimate.
struct PeeledSet {
  MatroidView view;
  ElementSet set;
  std::size_t alpha = 0;
};

// Prefix length and count for redundant element recovery on one set. Throws
// PreconditionError when alpha is too large for the set or the count is 0.
struct RecoveryShape {
  std::size_t t = 0;
  std::size_t count = 0;
};
RecoveryShape RedundantRecoveryShape(const PeeledSet& p,
                                     const GeneralConfig& cfg);

// Samples `count` random t-prefixes A_i of each set and collects every
// element x outside them that some independent prefix of A_i spans, all in
// one round. Returns the caught elements minus every sampled prefix, which is
// spanned by the (kept) prefixes and hence redundant.
ElementSet RecoverRedundantElements(const std::vector<PeeledSet>& sets,
                                    QuerySession& session,
                                    const GeneralConfig& cfg);
ElementSet RecoverRedundantElements(const MatroidView& view,
                                    const ElementSet& s, std::size_t alpha,
                                    QuerySession& session,
                                    const GeneralConfig& cfg);

// Runs KUW on view|T_i for every bucket set at once, merging the rounds, and
// returns every element outside the bases found. Rank is unchanged by
// deleting the result.
ElementSet ExplicitSolveBucket(const MatroidView& view,
                               const std::vector<ElementSet>& bucket,
                               QuerySession& session,
                               const StepObserver& observer = {});

// Predicted (progress, rounds) for each subroutine, in table order.
std::vector<SubroutineChoice> PredictSubroutines(std::size_t n,
                                                 const ProgressParams& p);

// The prediction with the best progress per round; ties go to the earlier
// row.
SubroutineChoice ChooseSubroutine(std::size_t n, const ProgressParams& p);

// A basis of `view`: the union of everything contracted.
ElementSet GeneralFindBasis(const MatroidView& view, QuerySession& session,
                            const GeneralConfig& cfg = {});

}  // namespace parbasis

#endif  // PARBASIS_GENERAL_SOLVER_H_
