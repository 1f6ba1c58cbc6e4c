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

#include "parbasis/element_set.h"

#include <stdexcept>

namespace parbasis {

ElementSet ElementSet::Of(std::size_t universe,
                          std::initializer_list<ElementId> members) {
  ElementSet s(universe);
  for (ElementId e : members) s.insert(e);
  return s;
}

ElementSet ElementSet::Of(std::size_t universe,
                          std::span<const ElementId> members) {
  ElementSet s(universe);
  for (ElementId e : members) s.insert(e);
  return s;
}

ElementSet ElementSet::Full(std::size_t universe) {
  ElementSet s(universe);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  if (universe % 64 != 0 && !s.words_.empty()) {
    s.words_.back() = (std::uint64_t{1} << (universe % 64)) - 1;
  }
  return s;
}

std::size_t ElementSet::size() const {
  std::size_t count = 0;
  for (auto w : words_) count += std::popcount(w);
  return count;
}

bool ElementSet::empty() const {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

void ElementSet::insert(ElementId e) {
  if (e >= universe_) {
    throw std::out_of_range("element " + std::to_string(e) +
                            " outside universe of size " +
                            std::to_string(universe_));
  }
  words_[e >> 6] |= std::uint64_t{1} << (e & 63);
}

void ElementSet::erase(ElementId e) {
  if (e >= universe_) {
    throw std::out_of_range("element " + std::to_string(e) +
                            " outside universe of size " +
                            std::to_string(universe_));
  }
  words_[e >> 6] &= ~(std::uint64_t{1} << (e & 63));
}

void ElementSet::clear() {
  for (auto& w : words_) w = 0;
}

void ElementSet::CheckUniverse(const ElementSet& other) const {
  if (universe_ != other.universe_) {
    throw std::invalid_argument("element sets over different universes (" +
                                std::to_string(universe_) + " vs " +
                                std::to_string(other.universe_) + ")");
  }
}

ElementSet& ElementSet::operator|=(const ElementSet& other) {
  CheckUniverse(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

ElementSet& ElementSet::operator&=(const ElementSet& other) {
  CheckUniverse(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

ElementSet& ElementSet::operator-=(const ElementSet& other) {
  CheckUniverse(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

bool ElementSet::IsSubsetOf(const ElementSet& other) const {
  CheckUniverse(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

bool ElementSet::Intersects(const ElementSet& other) const {
  CheckUniverse(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & other.words_[i]) != 0) return true;
  }
  return false;
}

ElementId ElementSet::FirstOutside(const ElementSet& other) const {
  CheckUniverse(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t diff = words_[i] & ~other.words_[i];
    if (diff != 0) {
      return static_cast<ElementId>(i * 64 + std::countr_zero(diff));
    }
  }
  return static_cast<ElementId>(universe_);
}

std::vector<ElementId> ElementSet::ToVector() const {
  std::vector<ElementId> out;
  out.reserve(size());
  for (ElementId e : *this) out.push_back(e);
  return out;
}

std::string ElementSet::ToString() const {
  std::string out = "{";
  bool first = true;
  for (ElementId e : *this) {
    if (!first) out += ',';
    out += std::to_string(e);
    first = false;
  }
  out += '}';
  return out;
}

}  // namespace parbasis
