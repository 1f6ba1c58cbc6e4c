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

// Experiment plumbing for the benchmark tool: run a solver over a family of
// instances and seeds, validate every basis against the greedy rank, and
// emit one CSV row per run.

#ifndef PARBASIS_BENCH_H_
#define PARBASIS_BENCH_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "parbasis/decomposition.h"
#include "parbasis/element_set.h"
#include "parbasis/generators.h"
#include "parbasis/matroid.h"
#include "parbasis/trace.h"

namespace parbasis {

enum class Algorithm { kKuw, kPartition, kGeneral };

const char* AlgorithmName(Algorithm a);
// Throws std::invalid_argument on unknown names.
Algorithm ParseAlgorithm(const std::string& name);

// Solver settings a run may override; unset fields keep solver defaults.
struct SolverOverrides {
  // Orders per sampling round (partition and general solvers).
  std::optional<std::size_t> samples;
  // Whittling slack of the general solver.
  std::optional<Rational> epsilon;
  // Parts with budget up to this are recovered exhaustively by the partition
  // solver.
  std::optional<std::size_t> budget_threshold;
};

// "1/64", "0.015625" or "3". Throws std::invalid_argument otherwise.
Rational ParseRational(const std::string& text);

struct ExperimentSpec {
  FamilySpec family;
  std::vector<std::size_t> sizes;
  std::vector<std::uint64_t> seeds;
  Algorithm algorithm = Algorithm::kKuw;
  SolverOverrides overrides;
  // Cells run concurrently on this many threads; rows keep config order.
  std::size_t jobs = 1;
  // Record wall_ms as 0 so that reruns give byte-identical CSV.
  bool timing = true;

  // Throws std::invalid_argument unless sizes are non-empty and strictly
  // ascending and seeds are non-empty.
  void Validate() const;
};

// Line-oriented `key=value` text; '#' starts a comment. Keys: family, sizes,
// seeds, algorithm, samples, epsilon, budget_threshold, jobs, timing. Lists
// are comma-separated and seeds also accept ranges `a-b`. Throws
// std::invalid_argument on unknown keys or malformed values.
std::map<std::string, std::string> ReadConfig(std::istream& in);
ExperimentSpec SpecFromConfig(const std::map<std::string, std::string>& kv);

struct ExperimentRecord {
  std::string family;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::kKuw;
  std::uint64_t rounds = 0;
  std::uint64_t queries = 0;
  std::size_t basis_size = 0;
  std::size_t rank = 0;
  bool valid = false;
  double wall_ms = 0;
  // Set when the run threw; the record is then invalid.
  std::string error;
};

// One solve on a fresh session seeded with `seed`. Exceptions are captured
// in the record. The basis is stored in `basis_out` when given, and every
// solver step is reported to `observer`.
ExperimentRecord RunOne(const std::shared_ptr<const MatroidInstance>& instance,
                        const std::string& family, std::uint64_t seed,
                        Algorithm algorithm, const SolverOverrides& overrides,
                        bool timing = true, ElementSet* basis_out = nullptr,
                        std::ostream* run_log = nullptr,
                        const StepObserver& observer = {});

// Every (size, seed) cell in config order; generation errors are captured too.
std::vector<ExperimentRecord> RunExperiment(const ExperimentSpec& spec);

// `family,n,seed,algorithm,rounds,queries,basis_size,rank,valid,wall_ms`.
void WriteCsvHeader(std::ostream& out);
void WriteCsvRow(const ExperimentRecord& r, std::ostream& out);
void WriteCsv(const std::vector<ExperimentRecord>& records, std::ostream& out);

}  // namespace parbasis

#endif  // PARBASIS_BENCH_H_
