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

#ifndef PARBASIS_ERRORS_H_
#define PARBASIS_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

#include "parbasis/element_set.h"

namespace parbasis {

// A query or view operation referenced an element that is not alive.
class DomainError : public std::invalid_argument {
 public:
  DomainError(ElementId element, const std::string& what)
      : std::invalid_argument(what), element_(element) {}
  ElementId element() const { return element_; }

 private:
  ElementId element_;
};

// The current batch would exceed the per-round query budget.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(std::uint64_t rounds, std::uint64_t attempted_batch,
              std::uint64_t budget)
      : std::runtime_error("per-round query budget " + std::to_string(budget) +
                           " exceeded: batch of " +
                           std::to_string(attempted_batch) + " after " +
                           std::to_string(rounds) + " rounds"),
        rounds_(rounds),
        attempted_batch_(attempted_batch) {}
  std::uint64_t rounds() const { return rounds_; }
  std::uint64_t attempted_batch() const { return attempted_batch_; }

 private:
  std::uint64_t rounds_;
  std::uint64_t attempted_batch_;
};

// An answer was read before the flush that evaluates it.
class SequencingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Contraction by a set that is dependent in the current view.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation's documented precondition does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace parbasis

#endif  // PARBASIS_ERRORS_H_
