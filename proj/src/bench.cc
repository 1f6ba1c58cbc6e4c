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

#include "parbasis/bench.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "parbasis/general_solver.h"
#include "parbasis/kuw.h"
#include "parbasis/matroid_view.h"
#include "parbasis/partition_solver.h"
#include "parbasis/query_session.h"

namespace parbasis {
namespace {

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T>
T ParseUnsigned(const std::string& text, const std::string& what) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument(what + ": '" + text +
                                "' is not a non-negative integer");
  }
  return v;
}

std::vector<std::uint64_t> ParseSeeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const std::string& item : SplitList(text)) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) {
      out.push_back(ParseUnsigned<std::uint64_t>(item, "seeds"));
      continue;
    }
    auto lo = ParseUnsigned<std::uint64_t>(item.substr(0, dash), "seeds");
    auto hi = ParseUnsigned<std::uint64_t>(item.substr(dash + 1), "seeds");
    if (hi < lo) throw std::invalid_argument("seeds: empty range " + item);
    for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
  }
  return out;
}

bool ParseBool(const std::string& text, const std::string& what) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw std::invalid_argument(what + ": '" + text + "' is not a boolean");
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

const char* AlgorithmName(Algorithm a) {
  switch (a) {
    case Algorithm::kKuw:
      return "kuw";
    case Algorithm::kPartition:
      return "partition";
    case Algorithm::kGeneral:
      return "general";
  }
  return "unknown";
}

Algorithm ParseAlgorithm(const std::string& name) {
  if (name == "kuw") return Algorithm::kKuw;
  if (name == "partition") return Algorithm::kPartition;
  if (name == "general") return Algorithm::kGeneral;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

Rational ParseRational(const std::string& raw) {
  const std::string text = Trim(raw);
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    auto num = ParseUnsigned<std::uint64_t>(text.substr(0, slash), "rational");
    auto den = ParseUnsigned<std::uint64_t>(text.substr(slash + 1), "rational");
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    return Rational(num, den);
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) {
    return Rational(ParseUnsigned<std::uint64_t>(text, "rational"));
  }
  const std::string whole = text.substr(0, dot);
  const std::string frac = text.substr(dot + 1);
  if (frac.size() > 18 || (whole.empty() && frac.empty())) {
    throw std::invalid_argument("rational: '" + text + "' is malformed");
  }
  Rational value(whole.empty() ? 0 : ParseUnsigned<std::uint64_t>(whole, "rational"));
  if (!frac.empty()) {
    std::uint64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    value += Rational(ParseUnsigned<std::uint64_t>(frac, "rational"), scale);
  }
  return value;
}

void ExperimentSpec::Validate() const {
  if (sizes.empty()) throw std::invalid_argument("no sizes");
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] <= sizes[i - 1]) {
      throw std::invalid_argument("sizes must be strictly ascending");
    }
  }
  if (seeds.empty()) throw std::invalid_argument("no seeds");
  if (jobs == 0) throw std::invalid_argument("jobs must be positive");
  if (overrides.samples == std::size_t{0}) {
    throw std::invalid_argument("samples must be positive");
  }
  if (overrides.epsilon && (*overrides.epsilon <= 0 || *overrides.epsilon >= 1)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
}

std::map<std::string, std::string> ReadConfig(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(number) +
                                  ": expected key=value");
    }
    kv[Trim(line.substr(0, eq))] = Trim(line.substr(eq + 1));
  }
  return kv;
}

ExperimentSpec SpecFromConfig(const std::map<std::string, std::string>& kv) {
  ExperimentSpec spec;
  for (const auto& [key, value] : kv) {
    if (key == "family") {
      spec.family = FamilySpec::Parse(value);
    } else if (key == "sizes") {
      spec.sizes.clear();
      for (const std::string& s : SplitList(value)) {
        spec.sizes.push_back(ParseUnsigned<std::size_t>(s, "sizes"));
      }
    } else if (key == "seeds") {
      spec.seeds = ParseSeeds(value);
    } else if (key == "algorithm") {
      spec.algorithm = ParseAlgorithm(value);
    } else if (key == "samples") {
      spec.overrides.samples = ParseUnsigned<std::size_t>(value, "samples");
    } else if (key == "epsilon") {
      spec.overrides.epsilon = ParseRational(value);
    } else if (key == "budget_threshold") {
      spec.overrides.budget_threshold =
          ParseUnsigned<std::size_t>(value, "budget_threshold");
    } else if (key == "jobs") {
      spec.jobs = ParseUnsigned<std::size_t>(value, "jobs");
    } else if (key == "timing") {
      spec.timing = ParseBool(value, "timing");
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  if (spec.family.name.empty()) throw std::invalid_argument("no family");
  spec.Validate();
  return spec;
}

ExperimentRecord RunOne(const std::shared_ptr<const MatroidInstance>& instance,
                        const std::string& family, std::uint64_t seed,
                        Algorithm algorithm, const SolverOverrides& overrides,
                        bool timing, ElementSet* basis_out,
                        std::ostream* run_log,
                        const StepObserver& observer) {
  ExperimentRecord r;
  r.family = family;
  r.n = instance->ground_size();
  r.seed = seed;
  r.algorithm = algorithm;
  const auto start = std::chrono::steady_clock::now();
  try {
    MatroidView view(instance);
    QuerySession session(instance->ground_size(), seed);
    ElementSet basis = view.EmptySet();
    switch (algorithm) {
      case Algorithm::kKuw:
        basis = KuwFindBasis(view, session, observer);
        break;
      case Algorithm::kPartition: {
        PartitionConfig cfg;
        cfg.observer = observer;
        if (overrides.samples) cfg.samples = *overrides.samples;
        if (overrides.budget_threshold) {
          cfg.small_part_threshold = *overrides.budget_threshold;
        }
        basis = PartitionFindBasis(view, session, cfg);
        break;
      }
      case Algorithm::kGeneral: {
        GeneralConfig cfg;
        if (overrides.samples) cfg.decomp.samples = *overrides.samples;
        if (overrides.epsilon) cfg.decomp.epsilon = *overrides.epsilon;
        cfg.run_log = run_log;
        cfg.observer = observer;
        basis = GeneralFindBasis(view, session, cfg);
        break;
      }
    }
    r.rounds = session.ledger().rounds();
    r.queries = session.ledger().total_queries();
    r.basis_size = basis.size();
    r.rank = RankGreedy(view);
    r.valid = IsBasis(view, basis) && r.basis_size == r.rank;
    if (basis_out != nullptr) *basis_out = basis;
  } catch (const std::exception& e) {
    r.error = e.what();
    r.valid = false;
  }
  if (timing) {
    r.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  }
  return r;
}

std::vector<ExperimentRecord> RunExperiment(const ExperimentSpec& spec) {
  spec.Validate();
  struct Cell {
    std::size_t n;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (std::size_t n : spec.sizes) {
    for (std::uint64_t seed : spec.seeds) cells.push_back({n, seed});
  }
  const std::string family = spec.family.ToString();
  std::vector<ExperimentRecord> out(cells.size());
  auto run_cell = [&](std::size_t i) {
    const Cell& c = cells[i];
    try {
      auto instance = GenerateInstance(spec.family, c.n, c.seed);
      out[i] = RunOne(instance, family, c.seed, spec.algorithm, spec.overrides,
                      spec.timing);
    } catch (const std::exception& e) {
      ExperimentRecord r;
      r.family = family;
      r.n = c.n;
      r.seed = c.seed;
      r.algorithm = spec.algorithm;
      r.error = e.what();
      out[i] = r;
    }
  };
  const std::size_t jobs = std::min(spec.jobs, cells.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < cells.size(); i = next++) run_cell(i);
    });
  }
  for (std::thread& t : workers) t.join();
  return out;
}

void WriteCsvHeader(std::ostream& out) {
  out << "family,n,seed,algorithm,rounds,queries,basis_size,rank,valid,wall_ms\n";
}

void WriteCsvRow(const ExperimentRecord& r, std::ostream& out) {
  std::ostringstream ms;
  ms << std::fixed << std::setprecision(3) << r.wall_ms;
  out << CsvField(r.family) << ',' << r.n << ',' << r.seed << ','
      << AlgorithmName(r.algorithm) << ',' << r.rounds << ',' << r.queries
      << ',' << r.basis_size << ',' << r.rank << ','
      << (r.valid ? "true" : "false") << ',' << ms.str() << '\n';
}

void WriteCsv(const std::vector<ExperimentRecord>& records, std::ostream& out) {
  WriteCsvHeader(out);
  for (const ExperimentRecord& r : records) WriteCsvRow(r, out);
}

}  // namespace parbasis
