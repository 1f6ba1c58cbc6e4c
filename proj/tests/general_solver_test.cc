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

#include <cmath>
#include <memory>
#include <numeric>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "parbasis/decomposition.h"
#include "parbasis/errors.h"
#include "parbasis/generators.h"
#include "parbasis/kuw.h"
#include "parbasis/matroid.h"
#include "parbasis/matroid_view.h"
#include "parbasis/query_session.h"
#include "test_instances.h"
#include "test_oracles.h"

namespace parbasis {
namespace {

using ::parbasis::testing::FamilyInstance;
using ::parbasis::testing::SmallCorpus;
using ::parbasis::testing::StepAudit;
using ::parbasis::testing::ViewInd;

std::shared_ptr<const PartitionMatroid> Parts(
    std::size_t n, std::vector<std::vector<ElementId>> parts,
    std::vector<std::size_t> budgets) {
  return std::make_shared<PartitionMatroid>(n, std::move(parts),
                                            std::move(budgets));
}

std::vector<ElementId> Range(ElementId lo, ElementId hi) {
  std::vector<ElementId> v(hi - lo);
  std::iota(v.begin(), v.end(), lo);
  return v;
}

// A budget-1 part of `part` elements followed by `free` free elements.
std::shared_ptr<const PartitionMatroid> ParallelClassInFree(ElementId part,
                                                            ElementId free) {
  return Parts(part + free, {Range(0, part), Range(part, part + free)},
               {1, free});
}

GeneralConfig SelectorConfig() {
  GeneralConfig cfg;
  cfg.decomp.large_alpha_c = 0;
  return cfg;
}

DecompositionResult FakeDecomposition(const std::vector<std::size_t>& sizes,
                                      const std::vector<std::size_t>& alphas) {
  std::size_t n = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  DecompositionResult d;
  ElementId next = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    d.sets.push_back(ElementSet::Of(n, Range(next, next + sizes[i])));
    next += sizes[i];
    d.alphas.push_back({alphas[i], 100});
  }
  return d;
}

ProgressParams Params(std::size_t tau, Rational beta, std::size_t gamma) {
  ProgressParams p;
  p.tau = tau;
  p.beta = beta;
  p.gamma = gamma;
  return p;
}

TEST(ContractLargeAlphaTest, UniformPrefixIsIndependent) {
  MatroidView v(std::make_shared<UniformMatroid>(64, 32));
  QuerySession session(64, 3);
  ElementSet c = ContractLargeAlpha(v, v.alive(), 33, session, GeneralConfig{});
  // ceil(33 * 64 / 640) = 4.
  EXPECT_EQ(c.size(), 4u);
  EXPECT_TRUE(v.IsIndependentImmediate(c));
  EXPECT_EQ(session.ledger().rounds(), 1u);
}

TEST(ContractLargeAlphaTest, RankZeroGivesNothing) {
  MatroidView v(std::make_shared<UniformMatroid>(8, 0));
  QuerySession session(8, 3);
  EXPECT_TRUE(ContractLargeAlpha(v, v.alive(), 1, session, GeneralConfig{}).empty());
  EXPECT_TRUE(ContractLargeAlpha(v, v.alive(), 0, session, GeneralConfig{}).empty());
}

// The prefix length of a peeled set is independent for at least a quarter of
// random orders.
TEST(ContractLargeAlphaTest, QuarterOfPrefixesIndependent) {
  std::mt19937_64 gen(7);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    MatroidView v(GenerateKuwHard(4, seed));
    QuerySession session(64, seed);
    DecompositionResult d = IterativePeel(v, session, SelectorConfig().decomp);
    ASSERT_FALSE(d.sets.empty());
    for (std::size_t i = 0; i < d.sets.size(); ++i) {
      const MatroidView& before = d.views_before[i];
      const std::size_t n = before.alive_size();
      const std::size_t len = static_cast<std::size_t>(std::ceil(
          double(d.alphas[i].value) * double(n) / (10.0 * d.sets[i].size())));
      std::vector<ElementId> order = before.alive().ToVector();
      int independent = 0;
      const int trials = 400;
      for (int t = 0; t < trials; ++t) {
        std::shuffle(order.begin(), order.end(), gen);
        if (ViewInd(before, {order.begin(), order.begin() + len})) ++independent;
      }
      EXPECT_GE(independent, trials / 4) << "seed " << seed << " set " << i;
      ElementSet c = ContractLargeAlpha(before, d.sets[i], d.alphas[i].value,
                                        session, GeneralConfig{});
      EXPECT_EQ(c.size(), len);
      EXPECT_TRUE(before.IsIndependentImmediate(c));
    }
  }
}

TEST(RedundantRecoveryTest, ShapeFollowsAlphaAndLog) {
  MatroidView v(ParallelClassInFree(64, 64));
  PeeledSet p{v, ElementSet::Of(128, Range(0, 64)), 2};
  RecoveryShape shape = RedundantRecoveryShape(p, GeneralConfig{});
  EXPECT_EQ(shape.t, 14u);     // 1 * 7 * 2
  EXPECT_EQ(shape.count, 1u);  // 64 / 56
}

TEST(RedundantRecoveryTest, UniformFailsPrecondition) {
  MatroidView v(std::make_shared<UniformMatroid>(64, 16));
  QuerySession session(64, 1);
  EXPECT_THROW(
      RecoverRedundantElements(v, v.alive(), 17, session, GeneralConfig{}),
      PreconditionError);
  EXPECT_EQ(session.ledger().rounds(), 0u);
}

TEST(RedundantRecoveryTest, TooFewSamplesFailsPrecondition) {
  MatroidView v(ParallelClassInFree(8, 8));
  QuerySession session(16, 1);
  GeneralConfig cfg;
  cfg.small_alpha_c = 0;
  // t = 4 * 2 = 8 and 8 / 32 rounds down to no samples.
  EXPECT_THROW(RecoverRedundantElements(v, ElementSet::Of(16, Range(0, 8)), 2,
                                        session, cfg),
               PreconditionError);
}

// Every sampled prefix starts with one part element, which spans the rest of
// the part; free elements are never spanned.
TEST(RedundantRecoveryTest, ParallelClassIsCaughtExactly) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    MatroidView v(ParallelClassInFree(16, 16));
    QuerySession session(32, seed);
    GeneralConfig cfg;
    cfg.t_mult = Rational(1, 5);  // t = ceil(5 * 2 / 5) = 2, two samples
    cfg.small_alpha_c = 1;
    ElementSet part = ElementSet::Of(32, Range(0, 16));
    ElementSet d = RecoverRedundantElements(v, part, 2, session, cfg);
    EXPECT_TRUE(d.IsSubsetOf(part));
    EXPECT_GE(d.size(), 12u);
    EXPECT_LE(d.size(), 14u);
    EXPECT_EQ(RankGreedy(v.Delete(d)), RankGreedy(v));
    EXPECT_EQ(session.ledger().rounds(), 1u);
  }
}

TEST(RedundantRecoveryTest, BudgetOnePartOf64YieldsAtLeast16) {
  double total = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    MatroidView v(ParallelClassInFree(64, 64));
    QuerySession session(128, seed);
    auto s = FindGreedilyOptimal(v, session, DecompConfig{});
    ASSERT_TRUE(s.has_value());
    AlphaEstimate a = EstimateAlpha(v, s->members, session, 256);
    ElementSet d = RecoverRedundantElements(v, s->members, a.value, session,
                                            GeneralConfig{});
    EXPECT_EQ(RankGreedy(v.Delete(d)), RankGreedy(v));
    total += double(d.size());
  }
  EXPECT_GE(total / 20, 16.0);
}

// Deletions stay rank-preserving for every peeled set of every family, also
// when several sets are recovered from together.
TEST(RedundantRecoveryTest, DeletionsPreserveRank) {
  GeneralConfig cfg;
  cfg.small_alpha_c = 0;
  cfg.t_mult = Rational(1, 12);
  int runs = 0;
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    for (const auto& [family, inst] : SmallCorpus(48, seed)) {
      MatroidView v(inst);
      QuerySession session(48, seed);
      DecompositionResult d = IterativePeel(v, session, SelectorConfig().decomp);
      std::vector<PeeledSet> all;
      for (std::size_t i = 0; i < d.sets.size(); ++i) {
        PeeledSet p{d.views_before[i], d.sets[i], d.alphas[i].value};
        try {
          RedundantRecoveryShape(p, cfg);
        } catch (const PreconditionError&) {
          continue;
        }
        all.push_back(p);
        ElementSet del = RecoverRedundantElements({p}, session, cfg);
        EXPECT_EQ(RankGreedy(d.start_view.Delete(del)), RankGreedy(d.start_view))
            << family;
        ++runs;
      }
      if (all.size() < 2) continue;
      ElementSet del = RecoverRedundantElements(all, session, cfg);
      EXPECT_EQ(RankGreedy(d.start_view.Delete(del)), RankGreedy(d.start_view))
          << family;
    }
  }
  EXPECT_GE(runs, 10);
}

TEST(ExplicitSolveBucketTest, ThreePartsOfBudgetTwo) {
  auto m = Parts(48, {Range(0, 16), Range(16, 32), Range(32, 48)}, {2, 2, 2});
  MatroidView v(m);
  QuerySession session(48, 1);
  StepAudit audit;
  std::vector<ElementSet> bucket = {ElementSet::Of(48, Range(0, 16)),
                                    ElementSet::Of(48, Range(16, 32)),
                                    ElementSet::Of(48, Range(32, 48))};
  ElementSet d = ExplicitSolveBucket(v, bucket, session, audit.Observer());
  EXPECT_EQ(d.size(), 42u);
  EXPECT_EQ(RankGreedy(v.Delete(d)), RankGreedy(v));
  EXPECT_EQ(audit.failures, 0);

  // Merged rounds: the same as one part alone.
  QuerySession alone(48, 1);
  KuwFindBasis(v.Restrict(bucket[0]), alone);
  EXPECT_EQ(session.ledger().rounds(), alone.ledger().rounds());
}

TEST(ExplicitSolveBucketTest, EmptyBucket) {
  MatroidView v(std::make_shared<UniformMatroid>(8, 4));
  QuerySession session(8, 1);
  EXPECT_TRUE(ExplicitSolveBucket(v, {}, session).empty());
  EXPECT_EQ(session.ledger().rounds(), 0u);
}

TEST(ExplicitSolveBucketTest, RankZeroSetIsDeletedWhole) {
  MatroidView v(std::make_shared<UniformMatroid>(8, 0));
  QuerySession session(8, 1);
  EXPECT_EQ(ExplicitSolveBucket(v, {v.alive()}, session).size(), 8u);
}

TEST(ExplicitSolveBucketTest, DeletionsPreserveRankOnCorpus) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    for (const auto& [family, inst] : SmallCorpus(48, seed)) {
      MatroidView v(inst);
      QuerySession session(48, seed);
      DecompositionResult d = IterativePeel(v, session, SelectorConfig().decomp);
      StepAudit audit;
      ElementSet del = ExplicitSolveBucket(d.start_view, d.sets, session,
                                           audit.Observer());
      EXPECT_EQ(RankGreedy(d.start_view.Delete(del)), RankGreedy(d.start_view))
          << family;
      EXPECT_EQ(audit.failures, 0) << family;
    }
  }
}

TEST(ProgressParamsTest, MixedSizes) {
  DecompositionResult d = FakeDecomposition({8, 9, 15, 40}, {3, 4, 5, 6});
  ProgressParams p = ComputeProgressParams(d, 72);
  EXPECT_EQ(p.level, 3u);
  EXPECT_EQ(p.tau, 8u);
  EXPECT_EQ(p.gamma, 3u);
  EXPECT_EQ(p.bucket, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(p.i_star, 1u);  // 4/9 beats 3/8, 5/15 and 6/40
  EXPECT_EQ(p.beta, Rational(32, 9));
}

TEST(ProgressParamsTest, SingleSet) {
  ProgressParams p = ComputeProgressParams(FakeDecomposition({10}, {2}), 10);
  EXPECT_EQ(p.tau, 8u);
  EXPECT_EQ(p.gamma, 1u);
  EXPECT_EQ(p.beta, Rational(8, 5));
}

TEST(ProgressParamsTest, EqualSizesShareABucket) {
  ProgressParams p =
      ComputeProgressParams(FakeDecomposition({16, 16, 16, 16}, {2, 3, 4, 5}), 64);
  EXPECT_EQ(p.gamma, 4u);
  EXPECT_EQ(p.tau, 16u);
  EXPECT_EQ(p.i_star, 3u);
}

TEST(ProgressParamsTest, TiesGoToTheSmallerSize) {
  ProgressParams p = ComputeProgressParams(FakeDecomposition({4, 8}, {1, 1}), 12);
  EXPECT_EQ(p.tau, 4u);
  EXPECT_EQ(p.bucket, (std::vector<std::size_t>{0}));
}

TEST(ProgressParamsTest, EmptyDecompositionIsAnError) {
  EXPECT_THROW(ComputeProgressParams(DecompositionResult{}, 8), PreconditionError);
}

TEST(ProgressParamsTest, BucketInvariantsOnRealDecompositions) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    for (const auto& [family, inst] : SmallCorpus(48, seed)) {
      MatroidView v(inst);
      QuerySession session(48, seed);
      DecompositionResult d = IterativePeel(v, session, SelectorConfig().decomp);
      if (d.sets.empty()) continue;
      ProgressParams p = ComputeProgressParams(d, 48);
      EXPECT_GE(p.gamma * CeilLog2(48), d.sets.size()) << family;
      for (std::size_t i : p.bucket) {
        EXPECT_LE(p.tau, d.sets[i].size());
        EXPECT_LE(d.sets[i].size(), 2 * p.tau);
      }
      for (std::size_t i = 0; i < d.sets.size(); ++i) {
        EXPECT_LE(Rational(d.alphas[i].value) / Rational(d.sets[i].size()),
                  p.beta / Rational(p.tau));
      }
    }
  }
}

TEST(ChooseSubroutineTest, RowValues) {
  auto rows = PredictSubroutines(4096, Params(8, 3, 3));
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].predicted_progress, Rational(1536));
  EXPECT_EQ(rows[0].predicted_rounds, Rational(3));
  EXPECT_EQ(rows[1].predicted_progress, Rational(24));
  EXPECT_EQ(rows[1].predicted_rounds, Rational(6));  // 3 + ceil(sqrt 8)
  EXPECT_EQ(rows[2].predicted_progress, Rational(64, 3));
  EXPECT_EQ(rows[3].predicted_progress, Rational(64, 9));
}

TEST(ChooseSubroutineTest, LargeNFavorsContraction) {
  EXPECT_EQ(ChooseSubroutine(4096, Params(8, 3, 3)).which,
            Subroutine::kContractBetaTau);
}

TEST(ChooseSubroutineTest, SaturatedAlphaAvoidsBucketRecovery) {
  EXPECT_NE(ChooseSubroutine(64, Params(16, 16, 2)).which,
            Subroutine::kRedundantBucket);
}

TEST(ChooseSubroutineTest, OneHugeSetWithTinyAlpha) {
  Subroutine s = ChooseSubroutine(1024, Params(512, 1, 1)).which;
  EXPECT_TRUE(s == Subroutine::kExplicitSolve || s == Subroutine::kRedundantAll);
}

TEST(ChooseSubroutineTest, TiesGoToTheEarlierRow) {
  // Rows 3 and 4 coincide when gamma = 1 and tau^2 / beta^2 <= tau <= n; row
  // 1 is far behind at n = tau.
  ChooseSubroutine(8, Params(8, 8, 1));
  SubroutineChoice c = ChooseSubroutine(8, Params(8, 4, 1));
  EXPECT_EQ(c.which, Subroutine::kContractBetaTau);  // 8*4/8 = 4 vs 4 vs 4
}

// Brute-force argmax over a parameter grid, and invariance when every
// predicted progress is scaled by one constant.
TEST(ChooseSubroutineTest, MatchesArgmaxAndIgnoresCommonScale) {
  for (std::size_t n : {64u, 512u, 4096u}) {
    for (std::size_t level = 0; (std::size_t{1} << level) <= n; ++level) {
      for (std::size_t gamma : {1u, 2u, 5u}) {
        for (Rational beta : {Rational(1, 2), Rational(1), Rational(3),
                              Rational(17, 2), Rational(40)}) {
          ProgressParams p = Params(std::size_t{1} << level, beta, gamma);
          auto rows = PredictSubroutines(n, p);
          for (Rational scale : {Rational(1), Rational(7, 3), Rational(1, 1000)}) {
            std::size_t best = 0;
            for (std::size_t i = 1; i < rows.size(); ++i) {
              if (scale * rows[i].predicted_progress / rows[i].predicted_rounds >
                  scale * rows[best].predicted_progress /
                      rows[best].predicted_rounds) {
                best = i;
              }
            }
            EXPECT_EQ(ChooseSubroutine(n, p).which, rows[best].which);
          }
        }
      }
    }
  }
}

TEST(GeneralFindBasisTest, FreeMatroidIsOneContraction) {
  MatroidView v(std::make_shared<UniformMatroid>(32, 32));
  QuerySession session(32, 1);
  std::ostringstream log;
  GeneralConfig cfg;
  cfg.run_log = &log;
  ElementSet b = GeneralFindBasis(v, session, cfg);
  EXPECT_EQ(b, v.alive());
  EXPECT_LE(session.ledger().rounds(), 3u);
  EXPECT_EQ(log.str(),
            "iter=1 n=32 action=contract_independent progress=32 rounds=2\n");
}

TEST(GeneralFindBasisTest, RankZeroIsOneRound) {
  MatroidView v(std::make_shared<UniformMatroid>(32, 0));
  QuerySession session(32, 1);
  EXPECT_TRUE(GeneralFindBasis(v, session).empty());
  EXPECT_EQ(session.ledger().rounds(), 1u);
}

TEST(GeneralFindBasisTest, EmptyView) {
  MatroidView v(std::make_shared<UniformMatroid>(0, 0));
  QuerySession session(0, 1);
  EXPECT_TRUE(GeneralFindBasis(v, session).empty());
  EXPECT_EQ(session.ledger().rounds(), 0u);
}

// Every family, default and selector configurations: a basis of full rank,
// and every contraction and deletion audited against its view.
TEST(GeneralFindBasisTest, ValidBasesAndSoundSteps) {
  for (const std::string& family : KnownFamilies()) {
    for (std::size_t n : {12u, 27u, 64u}) {
      for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto inst = FamilyInstance(family, n, seed);
        for (bool selector : {false, true}) {
          MatroidView v(inst);
          QuerySession session(inst->ground_size(), seed);
          StepAudit audit;
          GeneralConfig cfg = selector ? SelectorConfig() : GeneralConfig{};
          cfg.observer = audit.Observer();
          ElementSet b = GeneralFindBasis(v, session, cfg);
          EXPECT_TRUE(IsBasis(v, b)) << family << " n=" << n;
          EXPECT_EQ(b.size(), RankGreedy(v));
          EXPECT_EQ(audit.failures, 0) << family << " n=" << n;
          EXPECT_GT(audit.steps, 0);
        }
      }
    }
  }
}

TEST(GeneralFindBasisTest, RunLogAccountsForEverything) {
  auto inst = FamilyInstance("kuw-hard", 64, 2);
  MatroidView v(inst);
  QuerySession session(64, 2);
  std::ostringstream log;
  GeneralConfig cfg = SelectorConfig();
  cfg.run_log = &log;
  GeneralFindBasis(v, session, cfg);
  const std::regex line(
      R"(iter=(\d+) n=(\d+) action=([a-z_]+) progress=(\d+) rounds=(\d+))");
  std::istringstream in(log.str());
  std::string text;
  std::size_t iter = 0, expected_alive = 64, rounds = 0;
  while (std::getline(in, text)) {
    std::smatch m;
    ASSERT_TRUE(std::regex_match(text, m, line)) << text;
    EXPECT_EQ(std::stoul(m[1]), ++iter);
    EXPECT_EQ(std::stoul(m[2]), expected_alive);
    const std::size_t progress = std::stoul(m[4]);
    EXPECT_GE(progress, 1u);  // alive strictly decreases
    expected_alive -= progress;
    rounds += std::stoul(m[5]);
  }
  EXPECT_EQ(expected_alive, 0u);
  EXPECT_EQ(rounds, session.ledger().rounds());
}

// Predictions drop constants; the contraction length keeps the 1/10 of its
// probability bound, so executed subroutines should deliver about a tenth of
// the bare formula. Checked at half that, on average and for 95% of steps.
TEST(GeneralFindBasisTest, ProgressKeepsUpWithPrediction) {
  const double floor = 0.1 * 0.5;
  std::vector<double> ratios;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto corpus = SmallCorpus(48, seed);
    corpus.push_back({"kuw-hard", GenerateKuwHard(4, seed)});
    for (const auto& [family, inst] : corpus) {
      MatroidView v(inst);
      QuerySession session(inst->ground_size(), seed);
      GeneralConfig cfg = SelectorConfig();
      cfg.on_iteration = [&](const IterationRecord& r) {
        if (!r.choice || r.action.rfind("kuw_round", 0) == 0) return;
        ratios.push_back(double(r.action_progress) /
                         r.choice->predicted_progress.convert_to<double>());
      };
      GeneralFindBasis(v, session, cfg);
    }
  }
  ASSERT_GE(ratios.size(), 100u);
  double sum = 0;
  std::size_t above = 0;
  for (double r : ratios) {
    sum += r;
    if (r >= floor) ++above;
  }
  EXPECT_GE(sum / double(ratios.size()), floor);
  EXPECT_GE(double(above), 0.95 * double(ratios.size()));
}

TEST(GeneralFindBasisTest, SameSeedSameRun) {
  for (const std::string& family : {"random-graph", "kuw-hard", "random-linear"}) {
    auto inst = FamilyInstance(family, 64, 5);
    MatroidView v(inst);
    QuerySession a(inst->ground_size(), 9);
    QuerySession b(inst->ground_size(), 9);
    EXPECT_EQ(GeneralFindBasis(v, a), GeneralFindBasis(v, b));
    EXPECT_EQ(a.ledger().rounds(), b.ledger().rounds());
    EXPECT_EQ(a.ledger().total_queries(), b.ledger().total_queries());
  }
}

}  // namespace
}  // namespace parbasis
