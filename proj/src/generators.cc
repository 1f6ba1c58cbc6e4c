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

#include "parbasis/generators.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "parbasis/random.h"

namespace parbasis {

std::shared_ptr<const PartitionMatroid> GenerateKuwHard(std::size_t m,
                                                        std::uint64_t seed) {
  if (m == 0) throw std::invalid_argument("kuw-hard needs m >= 1");
  const std::size_t n = m * m * m;
  std::vector<ElementId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<ElementId>(i);
  Rng rng(seed);
  rng.Shuffle(ids);
  std::vector<std::vector<ElementId>> parts(m);
  std::vector<std::size_t> budgets(m);
  for (std::size_t i = 0; i < m; ++i) {
    parts[i].assign(ids.begin() + static_cast<std::ptrdiff_t>(i * m * m),
                    ids.begin() + static_cast<std::ptrdiff_t>((i + 1) * m * m));
    std::sort(parts[i].begin(), parts[i].end());
    budgets[i] = (i + 1) * m;
  }
  return std::make_shared<PartitionMatroid>(n, std::move(parts),
                                            std::move(budgets));
}

std::shared_ptr<const PartitionMatroid> GenerateRandomPartition(
    std::size_t n, std::size_t parts, BudgetLaw law, std::uint64_t seed) {
  if (parts == 0 || parts > n) {
    throw std::invalid_argument("random-partition needs 1 <= parts <= n");
  }
  Rng rng(seed);
  std::vector<ElementId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<ElementId>(i);
  rng.Shuffle(ids);
  std::vector<std::vector<ElementId>> members(parts);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t p = i < parts ? i : rng.UniformIndex(parts);
    members[p].push_back(ids[i]);
  }
  std::vector<std::size_t> budgets(parts);
  for (std::size_t p = 0; p < parts; ++p) {
    std::sort(members[p].begin(), members[p].end());
    const std::size_t s = members[p].size();
    switch (law) {
      case BudgetLaw::kUniform:
        budgets[p] = 1 + rng.UniformIndex(s);
        break;
      case BudgetLaw::kWithZero:
        budgets[p] = rng.UniformIndex(s + 1);
        break;
      case BudgetLaw::kSmall:
        budgets[p] = 1 + rng.UniformIndex(std::min<std::size_t>(s, 4));
        break;
    }
  }
  return std::make_shared<PartitionMatroid>(n, std::move(members),
                                            std::move(budgets));
}

std::shared_ptr<const GraphicMatroid> GenerateRandomGraph(
    std::size_t vertices, std::size_t edges, bool allow_loops,
    std::uint64_t seed) {
  if (vertices == 0 || (vertices < 2 && !allow_loops && edges > 0)) {
    throw std::invalid_argument("random-graph needs enough vertices");
  }
  Rng rng(seed);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> list;
  list.reserve(edges);
  for (std::size_t i = 0; i < edges; ++i) {
    auto u = static_cast<std::uint32_t>(rng.UniformIndex(vertices));
    std::uint32_t v;
    if (allow_loops) {
      v = static_cast<std::uint32_t>(rng.UniformIndex(vertices));
    } else {
      v = static_cast<std::uint32_t>(rng.UniformIndex(vertices - 1));
      if (v >= u) ++v;
    }
    list.emplace_back(u, v);
  }
  return std::make_shared<GraphicMatroid>(vertices, std::move(list));
}

std::shared_ptr<const LinearMatroid> GenerateRandomLinear(std::size_t n,
                                                          std::size_t r,
                                                          std::uint32_t p,
                                                          std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<std::uint32_t>> cols(n, std::vector<std::uint32_t>(r));
  for (auto& col : cols) {
    for (auto& x : col) x = static_cast<std::uint32_t>(rng.UniformIndex(p));
  }
  return std::make_shared<LinearMatroid>(p, r, std::move(cols));
}

std::shared_ptr<const UniformMatroid> GenerateUniform(std::size_t n,
                                                      std::size_t r) {
  return std::make_shared<UniformMatroid>(n, r);
}

FamilySpec FamilySpec::Parse(const std::string& text) {
  FamilySpec spec;
  const auto colon = text.find(':');
  spec.name = text.substr(0, colon);
  if (spec.name.empty()) throw std::invalid_argument("empty family name");
  if (colon == std::string::npos) return spec;
  std::stringstream ss(text.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("family parameter '" + item +
                                  "' is not key=value");
    }
    spec.params[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return spec;
}

std::string FamilySpec::ToString() const {
  std::string out = name;
  char sep = ':';
  for (const auto& [k, v] : params) {
    out += sep + k + "=" + v;
    sep = ',';
  }
  return out;
}

namespace {

std::size_t ParamSize(const FamilySpec& spec, const std::string& key,
                      std::size_t fallback) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) return fallback;
  std::size_t v = 0;
  const std::string& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("parameter " + key + "='" + s +
                                "' is not a non-negative integer");
  }
  return v;
}

BudgetLaw ParseLaw(const FamilySpec& spec) {
  auto it = spec.params.find("budget");
  if (it == spec.params.end() || it->second == "uniform") {
    return BudgetLaw::kUniform;
  }
  if (it->second == "with-zero") return BudgetLaw::kWithZero;
  if (it->second == "small") return BudgetLaw::kSmall;
  throw std::invalid_argument("unknown budget law '" + it->second + "'");
}

std::size_t ExactCubeRoot(std::size_t n) {
  auto m = static_cast<std::size_t>(std::llround(std::cbrt(static_cast<double>(n))));
  for (std::size_t c = (m > 0 ? m - 1 : 0); c <= m + 1; ++c) {
    if (c * c * c == n) return c;
  }
  throw std::invalid_argument("kuw-hard needs n = m^3, got n=" +
                              std::to_string(n));
}

}  // namespace

std::shared_ptr<const MatroidInstance> GenerateInstance(const FamilySpec& spec,
                                                        std::size_t n,
                                                        std::uint64_t seed) {
  const std::string& f = spec.name;
  if (f == "kuw-hard") {
    return GenerateKuwHard(ExactCubeRoot(n), seed);
  }
  if (f == "uniform") {
    return GenerateUniform(n, ParamSize(spec, "r", n / 2));
  }
  if (f == "random-partition") {
    std::size_t parts = ParamSize(spec, "parts", std::max<std::size_t>(1, n / 16));
    return GenerateRandomPartition(n, std::min(parts, n), ParseLaw(spec), seed);
  }
  if (f == "random-graph") {
    std::size_t v = ParamSize(spec, "v", n / 2 + 2);
    return GenerateRandomGraph(v, n, ParamSize(spec, "loops", 0) != 0, seed);
  }
  if (f == "random-linear") {
    std::size_t r = ParamSize(spec, "r", std::min<std::size_t>(n, 8));
    auto p = static_cast<std::uint32_t>(ParamSize(spec, "p", 7));
    return GenerateRandomLinear(n, r, p, seed);
  }
  if (f == "direct-sum") {
    // A partition block, a graphic block and a uniform block.
    SplitMix64 seeds(seed);
    const std::size_t a = n / 3, b = n / 3, c = n - a - b;
    std::vector<std::shared_ptr<const MatroidInstance>> children;
    if (a > 0) {
      children.push_back(GenerateRandomPartition(
          a, std::max<std::size_t>(1, a / 8), BudgetLaw::kUniform, seeds.Next()));
    } else {
      seeds.Next();
    }
    if (b > 0) {
      children.push_back(GenerateRandomGraph(b / 2 + 2, b, false, seeds.Next()));
    } else {
      seeds.Next();
    }
    children.push_back(GenerateUniform(c, c / 2));
    return std::make_shared<DirectSumMatroid>(std::move(children));
  }
  throw std::invalid_argument("unknown family '" + f + "'");
}

const std::vector<std::string>& KnownFamilies() {
  static const std::vector<std::string> kFamilies = {
      "kuw-hard", "random-partition", "random-graph",
      "random-linear", "uniform", "direct-sum"};
  return kFamilies;
}

}  // namespace parbasis
