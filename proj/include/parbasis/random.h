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

#ifndef PARBASIS_RANDOM_H_
#define PARBASIS_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <unordered_map>
#include <utility>
#include <vector>

#include "parbasis/element_set.h"

namespace parbasis {

// Seeded generator with platform-independent bounded draws (the standard
// distributions are implementation-defined, which would break replay).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform in [0, bound); bound must be positive.
  std::uint64_t UniformIndex(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  // Uniform in [0, 1).
  double UniformReal() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <class T>
  void Shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[UniformIndex(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64: a tiny generator for per-permutation streams.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t Next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t UniformIndex(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = Next();
    } while (x >= limit);
    return x % bound;
  }

 private:
  std::uint64_t state_;
};

// A uniformly random ordering of a shared pool, drawn lazily by a sparse
// Fisher-Yates shuffle: position i is fixed the first time it (or a later
// position) is requested, and memory grows with the drawn prefix only.
// Fixed orders keep the pool order.
class LazyPermutation {
 public:
  LazyPermutation(std::shared_ptr<const std::vector<ElementId>> pool,
                  std::uint64_t seed, bool shuffle)
      : pool_(std::move(pool)), rng_(seed), seed_(seed), shuffle_(shuffle) {}

  static std::shared_ptr<LazyPermutation> Random(
      std::shared_ptr<const std::vector<ElementId>> pool, std::uint64_t seed) {
    return std::make_shared<LazyPermutation>(std::move(pool), seed, true);
  }
  static std::shared_ptr<LazyPermutation> Fixed(std::vector<ElementId> order) {
    return std::make_shared<LazyPermutation>(
        std::make_shared<const std::vector<ElementId>>(std::move(order)), 0,
        false);
  }

  std::size_t size() const { return pool_->size(); }
  std::uint64_t seed() const { return seed_; }
  const std::vector<ElementId>& pool() const { return *pool_; }

  // 0-based position.
  ElementId At(std::size_t i) {
    if (!shuffle_) return (*pool_)[i];
    if (i >= drawn_.size()) DrawThrough(i + 1);
    return drawn_[i];
  }
  std::vector<ElementId> Prefix(std::size_t length) {
    if (!shuffle_) {
      return {pool_->begin(), pool_->begin() + static_cast<std::ptrdiff_t>(length)};
    }
    DrawThrough(length);
    return {drawn_.begin(), drawn_.begin() + static_cast<std::ptrdiff_t>(length)};
  }

 private:
  ElementId Slot(std::size_t i) const {
    if (!dense_.empty()) return dense_[i];
    auto it = displaced_.find(i);
    return it == displaced_.end() ? (*pool_)[i] : it->second;
  }
  // Long prefixes switch to a plain array; the draws are the same either way.
  void DrawThrough(std::size_t length) {
    if (dense_.empty() && length > 64 && 8 * length > pool_->size()) {
      dense_ = *pool_;
      for (const auto& [slot, e] : displaced_) dense_[slot] = e;
      for (std::size_t d = 0; d < drawn_.size(); ++d) dense_[d] = drawn_[d];
      displaced_.clear();
    }
    while (drawn_.size() < length) {
      std::size_t d = drawn_.size();
      std::size_t j = d + rng_.UniformIndex(pool_->size() - d);
      if (!dense_.empty()) {
        std::swap(dense_[d], dense_[j]);
        drawn_.push_back(dense_[d]);
        continue;
      }
      ElementId picked = Slot(j);
      if (j != d) displaced_[j] = Slot(d);
      displaced_.erase(d);
      drawn_.push_back(picked);
    }
  }

  std::shared_ptr<const std::vector<ElementId>> pool_;
  SplitMix64 rng_;
  std::uint64_t seed_;
  bool shuffle_;
  std::vector<ElementId> drawn_;
  std::unordered_map<std::size_t, ElementId> displaced_;
  std::vector<ElementId> dense_;
};

}  // namespace parbasis

#endif  // PARBASIS_RANDOM_H_
