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

// Line-oriented text format for matroid instances.
//
//   matroid uniform n=<n>       matroid partition n=<n>   matroid linear n=<n>
//   rank <r>                    part <budget> <ids...>    field <p>
//                                                         col <entries...>
//   matroid graphic n=<n>       matroid direct-sum n=<n>
//   vertices <v>   (optional)   children <k>
//   edge <u> <v>                <k nested instances, each closed by `end`>
//
// Blank lines and lines starting with '#' are ignored.

#ifndef PARBASIS_INSTANCE_IO_H_
#define PARBASIS_INSTANCE_IO_H_

#include <istream>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>

#include "parbasis/element_set.h"
#include "parbasis/matroid.h"

namespace parbasis {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

void WriteInstance(const MatroidInstance& m, std::ostream& out);
std::shared_ptr<const MatroidInstance> ReadInstance(std::istream& in);

std::shared_ptr<const MatroidInstance> LoadInstanceFile(const std::string& path);
void SaveInstanceFile(const MatroidInstance& m, const std::string& path);

// Element sets as one line of whitespace-separated ids (basis files).
void WriteElementSet(const ElementSet& s, std::ostream& out);
ElementSet ReadElementSet(std::istream& in, std::size_t universe);

}  // namespace parbasis

#endif  // PARBASIS_INSTANCE_IO_H_
