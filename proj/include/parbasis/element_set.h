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

#ifndef PARBASIS_ELEMENT_SET_H_
#define PARBASIS_ELEMENT_SET_H_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <span>
#include <string>
#include <vector>

namespace parbasis {

// Index of an element in the ground set of a MatroidInstance. Stable for the
// lifetime of the instance; views filter elements instead of renumbering.
using ElementId = std::uint32_t;

// Dense subset of a fixed universe {0, ..., universe-1}. Iteration visits
// members in increasing index order.
class ElementSet {
 public:
  class Iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = ElementId;
    using difference_type = std::ptrdiff_t;
    using pointer = const ElementId*;
    using reference = ElementId;

    Iterator() = default;
    Iterator(const std::uint64_t* words, std::size_t num_words, std::size_t word,
             std::uint64_t bits)
        : words_(words), num_words_(num_words), word_(word), bits_(bits) {
      Settle();
    }

    ElementId operator*() const {
      return static_cast<ElementId>(word_ * 64 + std::countr_zero(bits_));
    }
    Iterator& operator++() {
      bits_ &= bits_ - 1;
      Settle();
      return *this;
    }
    Iterator operator++(int) {
      Iterator copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const Iterator& other) const {
      return word_ == other.word_ && bits_ == other.bits_;
    }

   private:
    void Settle() {
      while (bits_ == 0 && word_ + 1 < num_words_) {
        ++word_;
        bits_ = words_[word_];
      }
      if (bits_ == 0) word_ = num_words_;
    }

    const std::uint64_t* words_ = nullptr;
    std::size_t num_words_ = 0;
    std::size_t word_ = 0;
    std::uint64_t bits_ = 0;
  };

  ElementSet() = default;
  explicit ElementSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  static ElementSet Of(std::size_t universe,
                       std::initializer_list<ElementId> members);
  static ElementSet Of(std::size_t universe, std::span<const ElementId> members);
  static ElementSet Full(std::size_t universe);

  std::size_t universe() const { return universe_; }
  std::size_t size() const;
  bool empty() const;

  bool contains(ElementId e) const {
    return e < universe_ && ((words_[e >> 6] >> (e & 63)) & 1u) != 0;
  }
  // Both throw std::out_of_range for e >= universe().
  void insert(ElementId e);
  void erase(ElementId e);
  void clear();

  ElementSet& operator|=(const ElementSet& other);
  ElementSet& operator&=(const ElementSet& other);
  ElementSet& operator-=(const ElementSet& other);
  friend ElementSet operator|(ElementSet a, const ElementSet& b) {
    return a |= b;
  }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) {
    return a &= b;
  }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) {
    return a -= b;
  }
  friend bool operator==(const ElementSet& a, const ElementSet& b) = default;

  bool IsSubsetOf(const ElementSet& other) const;
  bool Intersects(const ElementSet& other) const;
  // Smallest member of *this not contained in `other`, or universe() if none.
  ElementId FirstOutside(const ElementSet& other) const;

  std::vector<ElementId> ToVector() const;
  // "{0,3,7}" form, used in error messages and debug output.
  std::string ToString() const;

  Iterator begin() const {
    if (words_.empty()) return end();
    return Iterator(words_.data(), words_.size(), 0, words_[0]);
  }
  Iterator end() const {
    return Iterator(words_.data(), words_.size(), words_.size(), 0);
  }

 private:
  void CheckUniverse(const ElementSet& other) const;

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace parbasis

#endif  // PARBASIS_ELEMENT_SET_H_
